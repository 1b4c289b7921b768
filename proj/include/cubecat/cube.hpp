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

#ifndef CUBECAT_CUBE_HPP
#define CUBECAT_CUBE_HPP

#include <map>
#include <string>
#include <vector>

#include "cubecat/category.hpp"
#include "cubecat/interval.hpp"
#include "cubecat/poset.hpp"

namespace cubecat {

// Total poset of one interval-bundle level; objects are canonical
// (parent, fiber value) pairs in lexicographic order.
struct TotalPoset {
    Poset poset;
    std::vector<int> parent;
    std::vector<int> value;
    std::vector<std::vector<int>> first;  // first[x][v] = object id

    int at(int x, int v) const { return first[x][v]; }
};

// One bundle level: a singular interval per object of the level base and an
// SI-morphism per strict arrow of the level base (full table; files store
// Hasse arrows only and the closure is derived on load).
struct SiFamily {
    std::vector<int> heights;
    std::vector<SiMap> maps;  // aligned with base.strict_arrows()

    const SiMap& between(const Poset& base, int x, int y) const;
    SiMap at(const Poset& base, int x, int y) const;  // includes identity case
};

// Validates functoriality and builds the total poset.
void validate_si_family(const Poset& base, const SiFamily& fam);
TotalPoset build_total(const Poset& base, const SiFamily& fam);
// Expands maps given on Hasse arrows to the full table (validating
// path-independence via the functoriality check).
SiFamily close_si_family(const Poset& base, const std::vector<int>& heights,
                         const std::map<std::pair<int, int>, SiMap>& hasse_maps);

// A labelled singular n-cube family: a tower of interval bundles over a base
// poset plus a labelling functor on the top total poset.
class CubeFamily {
public:
    CubeFamily() = default;
    // arrow_label aligned with the top total's strict_arrows().
    static CubeFamily make(Poset base, std::vector<SiFamily> levels, CategoryRef cat,
                           std::vector<int> obj_label, std::vector<int> arrow_label);
    // Dimension-0 helper: labelled poset.
    static CubeFamily zero(Poset base, CategoryRef cat, std::vector<int> obj_label,
                           std::vector<int> arrow_label);

    int dim() const { return int(levels_.size()); }
    const Poset& base() const { return base_; }
    const Poset& total(int k) const;            // G^k, k = 0..dim
    const TotalPoset& total_info(int k) const;  // k = 1..dim
    const SiFamily& level(int k) const { return levels_[k - 1]; }  // k = 1..dim
    const std::vector<SiFamily>& levels() const { return levels_; }
    CategoryRef cat() const { return cat_; }
    int obj_label(int top_obj) const { return obj_label_[top_obj]; }
    const std::vector<int>& obj_labels() const { return obj_label_; }
    // Label of a (possibly identity) top arrow.
    int arrow_label(int u, int v) const;
    const std::vector<int>& arrow_labels() const { return arrow_label_; }

    bool operator==(const CubeFamily& o) const;
    bool operator!=(const CubeFamily& o) const { return !(*this == o); }

private:
    Poset base_;
    std::vector<SiFamily> levels_;
    std::vector<TotalPoset> totals_;
    CategoryRef cat_;
    std::vector<int> obj_label_;
    std::vector<int> arrow_label_;
};

// --- unpacking / repacking -------------------------------------------------

// U^k as an (n-k)-cube family over G^k(A); k = 0 returns A itself.
CubeFamily level_labelling(const CubeFamily& a, int k);
// Reassembles a family from the first k levels of `lower` and an upper family
// over lower.total(k).
CubeFamily repack(const CubeFamily& lower, int k, const CubeFamily& upper);
// Renames the base along an order-isomorphism old -> new.
CubeFamily with_base(const CubeFamily& a, const Poset& new_base, const std::vector<int>& iso);

// Id^m_A: prepends m levels with all fibers the initial interval.
CubeFamily identity_cube(const CubeFamily& a, int m = 1);

// --- regions ---------------------------------------------------------------

struct Region {
    std::vector<int> projections;  // p^0 .. p^n (object ids per level total)
    std::vector<int> type_bits;    // n bits, parity of fiber values
    int codim = 0;
};
Region region_info(const CubeFamily& a, int top_point);

// --- relabelling and base change --------------------------------------------

CubeFamily relabel(const CubeFamily& a, const CatFunctor& f);

// Fills in arrow labels forced by composition or by singleton homs, starting
// from the given partial assignment; fails if some arrow stays undetermined.
std::vector<int> complete_labels(const Poset& top, CategoryRef cat, const std::vector<int>& obj,
                                 const std::map<std::pair<int, int>, int>& known);

struct PullbackResult {
    CubeFamily family;               // A . H
    std::vector<PosetMap> level_map; // level_map[k] : (A.H).total(k) -> A.total(k)
};
PullbackResult pullback_family(const CubeFamily& a, const PosetMap& h);

// Restriction to a full subposet of the base given by object ids.
PullbackResult restrict_family(const CubeFamily& a, const std::vector<int>& base_objects);
// Restriction of the cube family above a point of G^k(A) to a one-point base.
CubeFamily sub_above(const CubeFamily& a, int k, int point);

// --- multi-level base change -------------------------------------------------

struct MultiLevelMap {
    // Component maps dom.total(k) -> cod.total(k); squares over the
    // projections and the label triangle must commute.
    CubeFamily dom, cod;
    std::vector<PosetMap> level;

    static MultiLevelMap identity(const CubeFamily& a);
    MultiLevelMap then(const MultiLevelMap& g) const;
};

struct MultiLevelClass {
    bool valid = false;
    bool collapse = false;   // fibrewise open+surjective, level 0 identity
    bool embedding = false;  // fibrewise open+injective, level 0 injective
    std::string why;         // first failure, for reporting
};
MultiLevelClass check_multilevel_base_change(const MultiLevelMap& h);

// Unique decomposition into single-level base changes, listed in application
// order (level n first, level 0 last); recomposition equals h.
std::vector<MultiLevelMap> decompose_multilevel(const MultiLevelMap& h);

}  // namespace cubecat

#endif
