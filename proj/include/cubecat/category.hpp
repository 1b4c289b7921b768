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

#ifndef CUBECAT_CATEGORY_HPP
#define CUBECAT_CATEGORY_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubecat/poset.hpp"
#include "cubecat/util.hpp"

namespace cubecat {

// Explicit finite category: objects, named arrows with a total composition
// table. Label categories of cube families live here; El(S)^op can have
// parallel arrows, so posets alone are not enough.
class FiniteCategory {
public:
    struct Arrow {
        std::string name;
        int src = 0, tgt = 0;
    };

    FiniteCategory() = default;
    // `compose[g][f]` = id of g.f for f: x->y, g: y->z; -1 when not composable.
    // Identities must appear in `arrows`; associativity and unit laws checked.
    FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                   std::vector<int> identities, std::vector<std::vector<int>> compose);

    static FiniteCategory discrete(std::vector<std::string> objects);
    static FiniteCategory from_poset(const Poset& p);

    int objects() const { return int(obj_names_.size()); }
    int arrow_count() const { return int(arrows_.size()); }
    const std::string& obj_name(int o) const { return obj_names_[o]; }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int identity(int o) const { return identities_[o]; }
    bool is_identity(int a) const { return identities_[arrows_[a].src] == a; }
    int compose(int g, int f) const;  // g after f
    std::optional<int> object_index(const std::string& name) const;
    std::optional<int> arrow_index(const std::string& name) const;
    std::vector<int> hom(int x, int y) const;
    bool posetal() const { return posetal_; }
    // For posetal categories: the unique arrow x -> y, if any.
    std::optional<int> unique_arrow(int x, int y) const;

    bool operator==(const FiniteCategory& o) const;

private:
    std::vector<std::string> obj_names_;
    std::vector<Arrow> arrows_;
    std::vector<int> identities_;
    std::vector<std::vector<int>> compose_;
    bool posetal_ = true;
};

using CategoryRef = std::shared_ptr<const FiniteCategory>;

// A functor between finite categories, given on objects and arrows.
struct CatFunctor {
    CategoryRef dom, cod;
    std::vector<int> obj;
    std::vector<int> arr;

    CatFunctor() = default;
    CatFunctor(CategoryRef d, CategoryRef c, std::vector<int> o, std::vector<int> a);
    static CatFunctor identity(CategoryRef c);
    CatFunctor then(const CatFunctor& g) const;
};

// Graded finite globular set S_0..S_n with source/target maps.
struct GlobularSet {
    // grade[k] -> element names; src/tgt[k][i] index into grade k-1.
    std::vector<std::vector<std::string>> grade;
    std::vector<std::vector<int>> src, tgt;

    int dimension() const { return int(grade.size()) - 1; }
    void validate() const;  // globularity identities ss = st, ts = tt
    // Iterated source/target down to grade k.
    int iter_src(int n, int i, int k) const;
    int iter_tgt(int n, int i, int k) const;
};

// Map of globular sets: per-grade functions.
struct GlobularMap {
    const GlobularSet* dom = nullptr;
    const GlobularSet* cod = nullptr;
    std::vector<std::vector<int>> at;  // at[k][i]
    void validate() const;
};

// El(S)^op: objects are elements of S; arrows (k,h) -> (n,g) exist for each
// f in G(k,n) with S(f)(g) = h; composites are determined by the inner
// factor. Object ids are graded lexicographically; arrow names are
// "sigma:g"/"tau:h" plus identities.
FiniteCategory elements_category(const GlobularSet& s);
// The functor El(alpha)^op induced by a globular map.
CatFunctor elements_functor(const GlobularMap& alpha, CategoryRef el_dom, CategoryRef el_cod);

// The representable globular set G(-, n) and its category of elements
// (the labelling poset of the terminal n-globe, 2n+1 objects).
GlobularSet representable_globular(int n);

}  // namespace cubecat

#endif
