/* Copyright 2026 The cubecat Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef CUBECAT_UTIL_HPP
#define CUBECAT_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubecat {

// Exit-code contract: parse errors -> 2, semantic/check failures -> 1,
// internal invariant violations -> 3.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct check_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw check_error(msg);
}
inline void invariant(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

// Small reachability matrix for posets (object counts stay modest).
class BitMatrix {
public:
    BitMatrix() : n_(0) {}
    explicit BitMatrix(int n) : n_(n), words_((n * n + 63) / 64, 0) {}

    void set(int i, int j) { words_[idx(i, j) >> 6] |= (uint64_t{1} << (idx(i, j) & 63)); }
    bool get(int i, int j) const {
        if (n_ == 0) return false;
        return (words_[idx(i, j) >> 6] >> (idx(i, j) & 63)) & 1;
    }
    int size() const { return n_; }

    bool operator==(const BitMatrix& o) const { return n_ == o.n_ && words_ == o.words_; }

private:
    int idx(int i, int j) const { return i * n_ + j; }
    int n_;
    std::vector<uint64_t> words_;
};

// xoshiro-style deterministic generator; the kernel itself is deterministic,
// randomness appears only in test corpora (seeded via CUBECAT_SEED).
class Rng {
public:
    explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ull) : s_(seed ? seed : 1) {}
    uint64_t next() {
        uint64_t x = s_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        s_ = x;
        return x * 0x2545f4914f6cdd1dull;
    }
    // uniform in [0, n)
    int below(int n) { return n <= 1 ? 0 : int(next() % uint64_t(n)); }
    bool coin() { return next() & 1; }

private:
    uint64_t s_;
};

}  // namespace cubecat

#endif
