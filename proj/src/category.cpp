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

#include "cubecat/category.hpp"

#include <algorithm>
#include <set>

namespace cubecat {

FiniteCategory::FiniteCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                               std::vector<int> identities, std::vector<std::vector<int>> compose)
    : obj_names_(std::move(objects)),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      compose_(std::move(compose)) {
    const int no = int(obj_names_.size());
    const int na = int(arrows_.size());
    require(int(identities_.size()) == no, "category: identity per object required");
    require(int(compose_.size()) == na, "category: composition table size");
    {
        std::set<std::string> seen(obj_names_.begin(), obj_names_.end());
        require(int(seen.size()) == no, "category: duplicate object names");
        std::set<std::string> aseen;
        for (const auto& a : arrows_) require(aseen.insert(a.name).second, "category: duplicate arrow names");
    }
    for (const auto& a : arrows_)
        require(a.src >= 0 && a.src < no && a.tgt >= 0 && a.tgt < no, "category: arrow endpoints");
    for (int o = 0; o < no; ++o) {
        int e = identities_[o];
        require(e >= 0 && e < na && arrows_[e].src == o && arrows_[e].tgt == o,
                "category: bad identity arrow");
    }
    for (int g = 0; g < na; ++g) {
        require(int(compose_[g].size()) == na, "category: composition table row size");
        for (int f = 0; f < na; ++f) {
            bool composable = arrows_[f].tgt == arrows_[g].src;
            int c = compose_[g][f];
            require(composable == (c >= 0), "category: composability mismatch in table");
            if (c >= 0)
                require(arrows_[c].src == arrows_[f].src && arrows_[c].tgt == arrows_[g].tgt,
                        "category: composite endpoints");
        }
    }
    // Unit and associativity laws.
    for (int f = 0; f < na; ++f) {
        require(compose_[identities_[arrows_[f].tgt]][f] == f, "category: left unit law");
        require(compose_[f][identities_[arrows_[f].src]] == f, "category: right unit law");
    }
    for (int f = 0; f < na; ++f)
        for (int g = 0; g < na; ++g) {
            if (arrows_[f].tgt != arrows_[g].src) continue;
            for (int h = 0; h < na; ++h) {
                if (arrows_[g].tgt != arrows_[h].src) continue;
                require(compose_[h][compose_[g][f]] == compose_[compose_[h][g]][f],
                        "category: associativity");
            }
        }
    for (int x = 0; x < no && posetal_; ++x)
        for (int y = 0; y < no && posetal_; ++y)
            if (int(hom(x, y).size()) > 1) posetal_ = false;
}

FiniteCategory FiniteCategory::discrete(std::vector<std::string> objects) {
    std::vector<Arrow> arrows;
    std::vector<int> ids;
    for (size_t o = 0; o < objects.size(); ++o) {
        ids.push_back(int(o));
        arrows.push_back({"id:" + objects[o], int(o), int(o)});
    }
    std::vector<std::vector<int>> comp(arrows.size(), std::vector<int>(arrows.size(), -1));
    for (size_t f = 0; f < arrows.size(); ++f) comp[f][f] = int(f);
    return FiniteCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(comp));
}

FiniteCategory FiniteCategory::from_poset(const Poset& p) {
    std::vector<std::string> objects = p.names();
    std::vector<Arrow> arrows;
    std::vector<int> ids(p.size());
    std::vector<std::vector<int>> arrow_at(p.size(), std::vector<int>(p.size(), -1));
    for (int o = 0; o < p.size(); ++o) {
        ids[o] = int(arrows.size());
        arrow_at[o][o] = ids[o];
        arrows.push_back({"id:" + p.name(o), o, o});
    }
    for (auto [a, b] : p.strict_arrows()) {
        arrow_at[a][b] = int(arrows.size());
        arrows.push_back({p.name(a) + "->" + p.name(b), a, b});
    }
    std::vector<std::vector<int>> comp(arrows.size(), std::vector<int>(arrows.size(), -1));
    for (size_t g = 0; g < arrows.size(); ++g)
        for (size_t f = 0; f < arrows.size(); ++f)
            if (arrows[f].tgt == arrows[g].src)
                comp[g][f] = arrow_at[arrows[f].src][arrows[g].tgt];
    return FiniteCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(comp));
}

int FiniteCategory::compose(int g, int f) const {
    int c = compose_[g][f];
    require(c >= 0, "category: composing non-composable arrows");
    return c;
}

std::optional<int> FiniteCategory::object_index(const std::string& name) const {
    for (int i = 0; i < objects(); ++i)
        if (obj_names_[i] == name) return i;
    return std::nullopt;
}

std::optional<int> FiniteCategory::arrow_index(const std::string& name) const {
    for (int i = 0; i < arrow_count(); ++i)
        if (arrows_[i].name == name) return i;
    return std::nullopt;
}

std::vector<int> FiniteCategory::hom(int x, int y) const {
    std::vector<int> out;
    for (int a = 0; a < arrow_count(); ++a)
        if (arrows_[a].src == x && arrows_[a].tgt == y) out.push_back(a);
    return out;
}

std::optional<int> FiniteCategory::unique_arrow(int x, int y) const {
    auto h = hom(x, y);
    if (h.size() == 1) return h[0];
    return std::nullopt;
}

bool FiniteCategory::operator==(const FiniteCategory& o) const {
    if (obj_names_ != o.obj_names_ || identities_ != o.identities_ || compose_ != o.compose_)
        return false;
    if (arrows_.size() != o.arrows_.size()) return false;
    for (size_t i = 0; i < arrows_.size(); ++i)
        if (arrows_[i].name != o.arrows_[i].name || arrows_[i].src != o.arrows_[i].src ||
            arrows_[i].tgt != o.arrows_[i].tgt)
            return false;
    return true;
}

CatFunctor::CatFunctor(CategoryRef d, CategoryRef c, std::vector<int> o, std::vector<int> a)
    : dom(std::move(d)), cod(std::move(c)), obj(std::move(o)), arr(std::move(a)) {
    require(int(obj.size()) == dom->objects() && int(arr.size()) == dom->arrow_count(),
            "functor: size mismatch");
    for (int f = 0; f < dom->arrow_count(); ++f) {
        const auto& a0 = dom->arrow(f);
        const auto& a1 = cod->arrow(arr[f]);
        require(a1.src == obj[a0.src] && a1.tgt == obj[a0.tgt], "functor: arrow endpoints");
    }
    for (int o2 = 0; o2 < dom->objects(); ++o2)
        require(arr[dom->identity(o2)] == cod->identity(obj[o2]), "functor: identities");
    for (int f = 0; f < dom->arrow_count(); ++f)
        for (int g = 0; g < dom->arrow_count(); ++g)
            if (dom->arrow(f).tgt == dom->arrow(g).src)
                require(arr[dom->compose(g, f)] == cod->compose(arr[g], arr[f]),
                        "functor: composition");
}

CatFunctor CatFunctor::identity(CategoryRef c) {
    std::vector<int> o(c->objects()), a(c->arrow_count());
    for (size_t i = 0; i < o.size(); ++i) o[i] = int(i);
    for (size_t i = 0; i < a.size(); ++i) a[i] = int(i);
    return CatFunctor(c, c, std::move(o), std::move(a));
}

CatFunctor CatFunctor::then(const CatFunctor& g) const {
    require(*cod == *g.dom, "functor composition: middle category mismatch");
    std::vector<int> o(obj.size()), a(arr.size());
    for (size_t i = 0; i < obj.size(); ++i) o[i] = g.obj[obj[i]];
    for (size_t i = 0; i < arr.size(); ++i) a[i] = g.arr[arr[i]];
    return CatFunctor(dom, g.cod, std::move(o), std::move(a));
}

void GlobularSet::validate() const {
    require(grade.size() == src.size() + 1 || grade.empty(), "globular set: grading mismatch");
    require(src.size() == tgt.size(), "globular set: source/target grading");
    for (size_t k = 0; k < src.size(); ++k) {
        require(src[k].size() == grade[k + 1].size() && tgt[k].size() == grade[k + 1].size(),
                "globular set: map sizes");
        for (size_t i = 0; i < src[k].size(); ++i) {
            require(src[k][i] >= 0 && src[k][i] < int(grade[k].size()), "globular set: src range");
            require(tgt[k][i] >= 0 && tgt[k][i] < int(grade[k].size()), "globular set: tgt range");
        }
    }
    // ss = st and ts = tt.
    for (size_t k = 1; k < src.size(); ++k)
        for (size_t i = 0; i < grade[k + 1].size(); ++i) {
            require(src[k - 1][src[k][i]] == src[k - 1][tgt[k][i]], "globular set: ss != st");
            require(tgt[k - 1][src[k][i]] == tgt[k - 1][tgt[k][i]], "globular set: ts != tt");
        }
}

int GlobularSet::iter_src(int n, int i, int k) const {
    while (n > k) {
        i = src[n - 1][i];
        --n;
    }
    return i;
}

int GlobularSet::iter_tgt(int n, int i, int k) const {
    while (n > k) {
        i = tgt[n - 1][i];
        --n;
    }
    return i;
}

void GlobularMap::validate() const {
    require(dom && cod, "globular map: missing endpoints");
    require(at.size() == dom->grade.size(), "globular map: grading mismatch");
    for (size_t k = 0; k < at.size(); ++k) {
        require(at[k].size() == dom->grade[k].size(), "globular map: grade size");
        require(k < cod->grade.size() || dom->grade[k].empty(),
                "globular map: codomain truncated too low");
        for (int v : at[k])
            require(v >= 0 && v < int(cod->grade[k].size()), "globular map: value range");
    }
    for (size_t k = 1; k < at.size(); ++k)
        for (size_t i = 0; i < dom->grade[k].size(); ++i) {
            require(cod->src[k - 1][at[k][i]] == at[k - 1][dom->src[k - 1][i]],
                    "globular map: does not commute with sources");
            require(cod->tgt[k - 1][at[k][i]] == at[k - 1][dom->tgt[k - 1][i]],
                    "globular map: does not commute with targets");
        }
}

namespace {

// Object ids of El(S)^op: graded lexicographic enumeration.
struct ElIndex {
    std::vector<int> offset;  // per grade
    int of(int grade, int i) const { return offset[grade] + i; }
};

ElIndex el_index(const GlobularSet& s) {
    ElIndex ix;
    int acc = 0;
    for (const auto& g : s.grade) {
        ix.offset.push_back(acc);
        acc += int(g.size());
    }
    return ix;
}

}  // namespace

FiniteCategory elements_category(const GlobularSet& s) {
    s.validate();
    ElIndex ix = el_index(s);
    std::vector<std::string> objects;
    std::vector<int> obj_grade, obj_i;
    for (size_t k = 0; k < s.grade.size(); ++k)
        for (size_t i = 0; i < s.grade[k].size(); ++i) {
            objects.push_back(s.grade[k][i]);
            obj_grade.push_back(int(k));
            obj_i.push_back(int(i));
        }
    const int no = int(objects.size());

    // Arrows of El(S)^op: identities, plus for each element g of grade n and
    // each k < n one arrow "s" (iterated source) and one arrow "t" (iterated
    // target) from the boundary element into g. Composition: the inner
    // (lower) factor wins; composing with an identity is trivial.
    std::vector<FiniteCategory::Arrow> arrows;
    std::vector<int> ids(no);
    // kind: 0 = identity, 1 = sigma-class, 2 = tau-class.
    std::vector<int> kind;
    std::vector<std::vector<int>> arrow_at_kind(no, std::vector<int>());
    std::map<std::pair<std::pair<int, int>, int>, int> lookup;  // ((src,tgt),kind) -> arrow
    auto addArrow = [&](const std::string& name, int src, int tgt, int k) {
        lookup[{{src, tgt}, k}] = int(arrows.size());
        arrows.push_back({name, src, tgt});
        kind.push_back(k);
    };
    for (int o = 0; o < no; ++o) {
        ids[o] = int(arrows.size());
        addArrow("id:" + objects[o], o, o, 0);
    }
    for (int o = 0; o < no; ++o) {
        int n = obj_grade[o];
        for (int k = 0; k < n; ++k) {
            int sv = ix.of(k, s.iter_src(n, obj_i[o], k));
            int tv = ix.of(k, s.iter_tgt(n, obj_i[o], k));
            addArrow("s" + std::to_string(k) + ":" + objects[o], sv, o, 1);
            addArrow("t" + std::to_string(k) + ":" + objects[o], tv, o, 2);
        }
    }
    std::vector<std::vector<int>> comp(arrows.size(), std::vector<int>(arrows.size(), -1));
    for (size_t f = 0; f < arrows.size(); ++f)
        for (size_t g = 0; g < arrows.size(); ++g) {
            if (arrows[f].tgt != arrows[g].src) continue;
            // g after f in El(S)^op; in the globe category the composite's
            // class is the inner factor's class (f's), unless f is an identity.
            if (kind[f] == 0) {
                comp[g][f] = int(g);
            } else if (kind[g] == 0) {
                comp[g][f] = int(f);
            } else {
                auto it = lookup.find({{arrows[f].src, arrows[g].tgt}, kind[f]});
                invariant(it != lookup.end(), "elements_category: missing composite arrow");
                comp[g][f] = it->second;
            }
        }
    return FiniteCategory(std::move(objects), std::move(arrows), std::move(ids), std::move(comp));
}

CatFunctor elements_functor(const GlobularMap& alpha, CategoryRef el_dom, CategoryRef el_cod) {
    alpha.validate();
    ElIndex dix = el_index(*alpha.dom);
    ElIndex cix = el_index(*alpha.cod);
    std::vector<int> obj(el_dom->objects());
    for (size_t k = 0; k < alpha.at.size(); ++k)
        for (size_t i = 0; i < alpha.at[k].size(); ++i)
            obj[dix.of(int(k), int(i))] = cix.of(int(k), alpha.at[k][i]);
    std::vector<int> arr(el_dom->arrow_count());
    for (int a = 0; a < el_dom->arrow_count(); ++a) {
        const auto& ar = el_dom->arrow(a);
        if (el_dom->is_identity(a)) {
            arr[a] = el_cod->identity(obj[ar.src]);
            continue;
        }
        // Named "s<k>:g" or "t<k>:g"; image has the same class between images.
        std::string name = ar.name;
        auto colon = name.find(':');
        std::string cls = name.substr(0, colon);
        std::string target_name = el_cod->obj_name(obj[ar.tgt]);
        auto idx = el_cod->arrow_index(cls + ":" + target_name);
        invariant(idx.has_value(), "elements_functor: missing image arrow");
        arr[a] = *idx;
    }
    return CatFunctor(el_dom, el_cod, std::move(obj), std::move(arr));
}

GlobularSet representable_globular(int n) {
    GlobularSet s;
    s.grade.resize(n + 1);
    for (int k = 0; k < n; ++k)
        s.grade[k] = {"s" + std::to_string(k), "t" + std::to_string(k)};
    s.grade[n] = {"id" + std::to_string(n)};
    s.src.resize(n);
    s.tgt.resize(n);
    for (int k = 1; k < n; ++k) {
        s.src[k - 1] = {0, 0};  // s(sigma_k) = s(tau_k) = sigma_{k-1}
        s.tgt[k - 1] = {1, 1};
    }
    if (n >= 1) {
        s.src[n - 1] = {0};
        s.tgt[n - 1] = {1};
    }
    s.validate();
    return s;
}

}  // namespace cubecat
