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

#ifndef CUBECAT_POSET_HPP
#define CUBECAT_POSET_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubecat/util.hpp"

namespace cubecat {

// Finite poset. Objects are 0..size()-1; `names` carries user identifiers for
// base posets read from files, and canonical coordinate strings for total
// posets. The full reflexive-transitive order is materialized (posets here
// are small); Hasse arrows are recovered as the transitive reduction.
class Poset {
public:
    Poset() = default;
    // `arrows` may be any generating set; the closure is computed and
    // antisymmetry checked.
    Poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows);

    static Poset discrete(std::vector<std::string> names);
    static Poset point();          // one object "*"
    static Poset chain(int n);     // 0 -> 1 -> ... -> n-1, objects named "0".."n-1"

    int size() const { return int(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<int> index_of(const std::string& name) const;

    bool leq(int i, int j) const { return i == j || order_.get(i, j); }  // arrow i -> j
    bool lt(int i, int j) const { return i != j && order_.get(i, j); }

    // All strict arrows (i, j) with i -> j, i != j, in lexicographic order.
    const std::vector<std::pair<int, int>>& strict_arrows() const { return strict_arrows_; }
    // Transitive reduction.
    std::vector<std::pair<int, int>> hasse() const;

    // Objects y with y -> x (the over-poset X // x), sorted.
    std::vector<int> below(int x) const;
    bool connected() const;
    std::vector<std::vector<int>> components() const;  // undirected components, each sorted

    bool operator==(const Poset& o) const { return names_ == o.names_ && order_ == o.order_; }
    bool operator!=(const Poset& o) const { return !(*this == o); }

private:
    std::vector<std::string> names_;
    BitMatrix order_;  // strict part
    std::vector<std::pair<int, int>> strict_arrows_;
};

// Monotone map of posets, determined by its object function.
struct PosetMap {
    Poset dom, cod;
    std::vector<int> obj;  // obj[i] = image of i

    PosetMap() = default;
    PosetMap(Poset d, Poset c, std::vector<int> o);

    static PosetMap identity(const Poset& p);
    int operator()(int i) const { return obj[i]; }
    PosetMap then(const PosetMap& g) const;  // g after this
    bool injective() const;
    bool surjective() const;

    bool operator==(const PosetMap& o) const {
        return dom == o.dom && cod == o.cod && obj == o.obj;
    }
};

// Profunctorial relation R : X -|-> Y, a functor X^op x Y -> Bool.
struct ProfRel {
    Poset source, target;
    BitMatrix rel;  // rel.get packed as source-index * target-size + ... via helper

    ProfRel() = default;
    ProfRel(Poset s, Poset t);
    bool at(int x, int y) const;
    void set(int x, int y);

    static ProfRel hom(const Poset& x);                       // identity of PRel
    static ProfRel full(const Poset& x, const Poset& y);      // everything related
    static ProfRel graph(const PosetMap& f);                  // Hom_Y(f-, -)

    bool operator==(const ProfRel& o) const {
        return source == o.source && target == o.target && rel == o.rel;
    }
};

bool is_profunctorial(const ProfRel& r);
ProfRel compose_prel(const ProfRel& r, const ProfRel& s);  // (r . s)(x,z) = exists y

// A family of profunctorial relations over a base poset: a fiber poset per
// object and a relation per strict arrow of the base.
struct PRelFamily {
    Poset base;
    std::vector<Poset> fiber;                       // per base object
    std::vector<ProfRel> arrow;                     // per base.strict_arrows() entry
    const ProfRel& rel_of(int ai) const { return arrow[ai]; }
};

// Total poset of a family plus its projection. Total objects are canonical
// (base object, fiber value) pairs in lexicographic order.
struct Bundle {
    Poset total;
    PosetMap projection;            // total -> base
    std::vector<int> parent;        // per total object
    std::vector<int> value;         // per total object: index into fiber poset
    std::vector<std::vector<int>> fiber_first;  // lookup: fiber_first[x][v] = total id

    int at(int base_obj, int fiber_value) const { return fiber_first[base_obj][fiber_value]; }
};

// Checks functoriality of the family (identities and composites of the
// classifying relations agree), then builds the total poset.
Bundle grothendieck_total(const PRelFamily& f);

// Pullback family f . h plus the induced total map G(h) : total(fh) -> total(f).
struct BaseChange {
    PRelFamily family;   // pulled-back family over h.dom
    Bundle bundle;       // its total
    PosetMap total_map;  // G(h)
};
BaseChange bundle_base_change(const PRelFamily& f, const Bundle& b, const PosetMap& h);

bool has_lifts(const PosetMap& f);
// y_objects: object ids of X forming the subposet (full).
bool is_downward_closed(const Poset& x, const std::vector<int>& y_objects);

// Labelled poset (X, F : X -> C) with labels into an abstract object set; the
// label type is kept generic via ints plus a name table owned by the caller.
struct LabelledPoset {
    Poset poset;
    std::vector<int> label;  // per object
};

// Pushout of injective maps with lifts in Pos//C; objects identified by name.
// h1 : (Y,G) -> (X1,F1), h2 : (Y,G) -> (X2,F2) must be name-preserving
// inclusions with lifts and agreeing labels.
LabelledPoset glue_pushout(const LabelledPoset& y, const LabelledPoset& x1,
                           const LabelledPoset& x2);

}  // namespace cubecat

#endif
