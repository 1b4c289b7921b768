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

#ifndef CUBECAT_INTERVAL_HPP
#define CUBECAT_INTERVAL_HPP

#include <optional>
#include <vector>

#include "cubecat/poset.hpp"
#include "cubecat/util.hpp"

namespace cubecat {

// The singular interval of height h has objects 0..2h; odd objects are
// singular heights, even objects regular segments. Equality of intervals is
// equality of heights.
inline bool is_sing(int a) { return a & 1; }
inline bool is_reg(int a) { return !(a & 1); }

// Zig-zag order of the interval: a -> a+1 for even a, a+1 -> a for odd a.
inline bool interval_leq(int a, int b) {
    return a == b || (is_sing(b) && (a == b - 1 || a == b + 1));
}

Poset interval_poset(int height);  // objects named "0".."2h"

// Morphism of singular intervals: monotone map of singular heights.
// sing[i] is the (odd) image of height 2i+1.
struct SiMap {
    int dom_h = 0, cod_h = 0;
    std::vector<int> sing;

    SiMap() = default;
    SiMap(int dom_height, int cod_height, std::vector<int> sing_map);

    static SiMap identity(int h);
    // Unique monotone injection with image `subset` (odd values in 0..2h-1 of cod).
    static SiMap subset_injection(int cod_height, const std::vector<int>& subset);

    int operator()(int odd) const { return sing[(odd - 1) / 2]; }
    // Extension: fixes -1 and 2h+1.
    int ext(int a) const;
    SiMap then(const SiMap& g) const;  // g after this
    bool injective() const;
    std::vector<int> image() const;  // sorted odd values

    bool operator==(const SiMap& o) const {
        return dom_h == o.dom_h && cod_h == o.cod_h && sing == o.sing;
    }
    bool operator!=(const SiMap& o) const { return !(*this == o); }
};

// Regular-segment morphism: endpoint-preserving monotone map of even objects.
// reg[i] is the (even) image of segment 2i.
struct RegMap {
    int dom_h = 0, cod_h = 0;
    std::vector<int> reg;

    RegMap() = default;
    RegMap(int dom_height, int cod_height, std::vector<int> reg_map);
    int operator()(int even) const { return reg[even / 2]; }

    bool operator==(const RegMap& o) const {
        return dom_h == o.dom_h && cod_h == o.cod_h && reg == o.reg;
    }
};

// Ambidextrous duals: f^reg(a) = b iff ext f(b-1) < a < ext f(b+1), and back.
RegMap regular_dual(const SiMap& f);
SiMap singular_dual(const RegMap& g);

// Profunctorial realisation R(f): Sing1/Sing2 clauses.
bool realise_at(const SiMap& f, int a, int b);
ProfRel realise(const SiMap& f);

struct Edge {
    int source = 0, target = 0;
    int norm() const { return source + target; }
    bool operator==(const Edge& o) const { return source == o.source && target == o.target; }
};

enum class FillerSide { Source, Target };

struct EdgeStep {
    Edge edge;          // successor / predecessor
    Edge filler;        // identity edge on the indicated interval
    FillerSide side;
};

// Edges of R(f) sorted by norm; norms are exactly 0..2(H_dom+H_cod).
std::vector<Edge> edges(const SiMap& f);
EdgeStep step_forward(const SiMap& f, Edge e);   // requires norm < max
EdgeStep step_backward(const SiMap& f, Edge e);  // requires norm > 0

// Ordered sum: heights add; g acts shifted above f.
int ordered_sum(int height_i, int height_j);
SiMap ordered_sum_mor(const SiMap& f, const SiMap& g);

struct OpenClass {
    bool open = false;
    bool collapse = false;   // open and surjective
    bool embedding = false;  // open and injective
};

// Classifies a functor of interval posets given on objects; checks direction
// monotonicity and functoriality for the singular order.
OpenClass classify_poset_functor(int dom_h, int cod_h, const std::vector<int>& obj_map);

// The collapse functor J -> I with underlying monomorphism t : I -> J.
// Returns the object map on 0..2*cod of t (i.e. on J).
std::vector<int> collapse_functor_of_mono(const SiMap& t);
// Inverse reading: underlying monomorphism of an open surjective functor.
SiMap underlying_mono(int dom_h, int cod_h, const std::vector<int>& obj_map);

}  // namespace cubecat

#endif
