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

#include "cubecat/poset.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cubecat {

Poset::Poset(std::vector<std::string> names, const std::vector<std::pair<int, int>>& arrows)
    : names_(std::move(names)), order_(int(names_.size())) {
    const int n = size();
    {
        std::set<std::string> seen(names_.begin(), names_.end());
        require(int(seen.size()) == n, "poset: duplicate object names");
    }
    for (auto [a, b] : arrows) {
        require(a >= 0 && a < n && b >= 0 && b < n, "poset: arrow endpoint out of range");
        if (a != b) order_.set(a, b);
    }
    // Floyd-Warshall closure.
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            if (order_.get(i, k))
                for (int j = 0; j < n; ++j)
                    if (order_.get(k, j)) order_.set(i, j);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            require(!(order_.get(i, j) && order_.get(j, i)), "poset: antisymmetry violated");
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && order_.get(i, j)) strict_arrows_.push_back({i, j});
}

Poset Poset::discrete(std::vector<std::string> names) { return Poset(std::move(names), {}); }

Poset Poset::point() { return discrete({"*"}); }

Poset Poset::chain(int n) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i) arrows.push_back({i, i + 1});
    return Poset(std::move(names), arrows);
}

std::optional<int> Poset::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

std::vector<std::pair<int, int>> Poset::hasse() const {
    std::vector<std::pair<int, int>> out;
    for (auto [a, b] : strict_arrows_) {
        bool reducible = false;
        for (int k = 0; k < size() && !reducible; ++k)
            if (k != a && k != b && lt(a, k) && lt(k, b)) reducible = true;
        if (!reducible) out.push_back({a, b});
    }
    return out;
}

std::vector<int> Poset::below(int x) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (leq(i, x)) out.push_back(i);
    return out;
}

std::vector<std::vector<int>> Poset::components() const {
    std::vector<int> comp(size(), -1);
    int nc = 0;
    for (int i = 0; i < size(); ++i) {
        if (comp[i] != -1) continue;
        std::vector<int> stack{i};
        comp[i] = nc;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int v = 0; v < size(); ++v)
                if (comp[v] == -1 && (lt(u, v) || lt(v, u))) {
                    comp[v] = nc;
                    stack.push_back(v);
                }
        }
        ++nc;
    }
    std::vector<std::vector<int>> out(nc);
    for (int i = 0; i < size(); ++i) out[comp[i]].push_back(i);
    return out;
}

bool Poset::connected() const { return size() <= 1 || components().size() == 1; }

PosetMap::PosetMap(Poset d, Poset c, std::vector<int> o)
    : dom(std::move(d)), cod(std::move(c)), obj(std::move(o)) {
    require(int(obj.size()) == dom.size(), "poset map: object function size mismatch");
    for (int v : obj) require(v >= 0 && v < cod.size(), "poset map: image out of range");
    for (auto [a, b] : dom.strict_arrows())
        require(cod.leq(obj[a], obj[b]), "poset map: not monotone");
}

PosetMap PosetMap::identity(const Poset& p) {
    std::vector<int> o(p.size());
    for (int i = 0; i < p.size(); ++i) o[i] = i;
    return PosetMap(p, p, std::move(o));
}

PosetMap PosetMap::then(const PosetMap& g) const {
    require(cod == g.dom, "poset map composition: middle poset mismatch");
    std::vector<int> o(obj.size());
    for (size_t i = 0; i < obj.size(); ++i) o[i] = g.obj[obj[i]];
    return PosetMap(dom, g.cod, std::move(o));
}

bool PosetMap::injective() const {
    std::set<int> seen;
    for (int v : obj)
        if (!seen.insert(v).second) return false;
    return true;
}

bool PosetMap::surjective() const {
    std::set<int> seen(obj.begin(), obj.end());
    return int(seen.size()) == cod.size();
}

ProfRel::ProfRel(Poset s, Poset t) : source(std::move(s)), target(std::move(t)) {
    rel = BitMatrix(std::max(source.size(), target.size()));
}

bool ProfRel::at(int x, int y) const { return rel.get(x, y); }
void ProfRel::set(int x, int y) { rel.set(x, y); }

ProfRel ProfRel::hom(const Poset& x) {
    ProfRel r(x, x);
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < x.size(); ++j)
            if (x.leq(i, j)) r.set(i, j);
    return r;
}

ProfRel ProfRel::full(const Poset& x, const Poset& y) {
    ProfRel r(x, y);
    for (int i = 0; i < x.size(); ++i)
        for (int j = 0; j < y.size(); ++j) r.set(i, j);
    return r;
}

ProfRel ProfRel::graph(const PosetMap& f) {
    ProfRel r(f.dom, f.cod);
    for (int i = 0; i < f.dom.size(); ++i)
        for (int j = 0; j < f.cod.size(); ++j)
            if (f.cod.leq(f.obj[i], j)) r.set(i, j);
    return r;
}

bool is_profunctorial(const ProfRel& r) {
    // if x -> x' and R(x',y) then R(x,y); if R(x,y') and y' -> y then R(x,y)
    for (int x = 0; x < r.source.size(); ++x)
        for (int y = 0; y < r.target.size(); ++y) {
            if (r.at(x, y)) continue;
            for (int x2 = 0; x2 < r.source.size(); ++x2)
                if (r.source.lt(x, x2) && r.at(x2, y)) return false;
            for (int y2 = 0; y2 < r.target.size(); ++y2)
                if (r.target.lt(y2, y) && r.at(x, y2)) return false;
        }
    return true;
}

ProfRel compose_prel(const ProfRel& r, const ProfRel& s) {
    require(r.target == s.source, "compose_prel: mismatched middle poset");
    ProfRel out(r.source, s.target);
    for (int x = 0; x < r.source.size(); ++x)
        for (int z = 0; z < s.target.size(); ++z)
            for (int y = 0; y < r.target.size(); ++y)
                if (r.at(x, y) && s.at(y, z)) {
                    out.set(x, z);
                    break;
                }
    return out;
}

namespace {

// Relation assigned to an arbitrary comparable pair of the base, derived by
// composing the stored strict-arrow relations along any path; the caller has
// verified path-independence.
ProfRel family_rel(const PRelFamily& f, int x, int y) {
    if (x == y) return ProfRel::hom(f.fiber[x]);
    for (size_t ai = 0; ai < f.base.strict_arrows().size(); ++ai)
        if (f.base.strict_arrows()[ai] == std::pair<int, int>{x, y}) return f.arrow[ai];
    throw internal_error("family_rel: arrow not found");
}

}  // namespace

Bundle grothendieck_total(const PRelFamily& f) {
    const Poset& base = f.base;
    require(int(f.fiber.size()) == base.size(), "grothendieck: fiber count mismatch");
    require(f.arrow.size() == base.strict_arrows().size(), "grothendieck: arrow count mismatch");
    // Functoriality of the family: each stored relation profunctorial with the
    // right boundary posets, and composites along the base agree.
    for (size_t ai = 0; ai < f.arrow.size(); ++ai) {
        auto [x, y] = base.strict_arrows()[ai];
        require(f.arrow[ai].source == f.fiber[x] && f.arrow[ai].target == f.fiber[y],
                "grothendieck: relation endpoints disagree with fibers");
        require(is_profunctorial(f.arrow[ai]), "grothendieck: non-profunctorial member");
    }
    for (auto [x, y] : base.strict_arrows())
        for (int z = 0; z < base.size(); ++z)
            if (base.lt(y, z)) {
                ProfRel direct = family_rel(f, x, z);
                ProfRel via = compose_prel(family_rel(f, x, y), family_rel(f, y, z));
                require(direct == via, "grothendieck: non-functorial family");
            }

    Bundle b;
    std::vector<std::string> names;
    b.fiber_first.resize(base.size());
    for (int x = 0; x < base.size(); ++x) {
        b.fiber_first[x].resize(f.fiber[x].size());
        for (int a = 0; a < f.fiber[x].size(); ++a) {
            b.fiber_first[x][a] = int(names.size());
            b.parent.push_back(x);
            b.value.push_back(a);
            names.push_back("(" + base.name(x) + "," + f.fiber[x].name(a) + ")");
        }
    }
    std::vector<std::pair<int, int>> arrows;
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = 0; j < names.size(); ++j) {
            if (i == j) continue;
            int x = b.parent[i], y = b.parent[j];
            if (!base.leq(x, y)) continue;
            if (x == y) {
                if (f.fiber[x].lt(b.value[i], b.value[j])) arrows.push_back({int(i), int(j)});
            } else if (family_rel(f, x, y).at(b.value[i], b.value[j])) {
                arrows.push_back({int(i), int(j)});
            }
        }
    b.total = Poset(std::move(names), arrows);
    b.projection = PosetMap(b.total, base, b.parent);
    return b;
}

BaseChange bundle_base_change(const PRelFamily& f, const Bundle& b, const PosetMap& h) {
    require(h.cod == f.base, "base change: codomain mismatch");
    BaseChange out;
    out.family.base = h.dom;
    out.family.fiber.resize(h.dom.size());
    for (int x = 0; x < h.dom.size(); ++x) out.family.fiber[x] = f.fiber[h(x)];
    for (auto [x, y] : h.dom.strict_arrows()) {
        if (h(x) == h(y))
            out.family.arrow.push_back(ProfRel::hom(f.fiber[h(x)]));
        else
            out.family.arrow.push_back(family_rel(f, h(x), h(y)));
    }
    out.bundle = grothendieck_total(out.family);
    std::vector<int> tmap(out.bundle.total.size());
    for (int i = 0; i < out.bundle.total.size(); ++i)
        tmap[i] = b.at(h(out.bundle.parent[i]), out.bundle.value[i]);
    out.total_map = PosetMap(out.bundle.total, b.total, std::move(tmap));
    return out;
}

bool has_lifts(const PosetMap& f) {
    for (int x = 0; x < f.dom.size(); ++x)
        for (int y2 = 0; y2 < f.cod.size(); ++y2) {
            if (!f.cod.leq(y2, f(x))) continue;
            bool found = false;
            for (int x2 = 0; x2 < f.dom.size() && !found; ++x2)
                if (f.dom.leq(x2, x) && f(x2) == y2) found = true;
            if (!found) return false;
        }
    return true;
}

bool is_downward_closed(const Poset& x, const std::vector<int>& y_objects) {
    std::set<int> ys(y_objects.begin(), y_objects.end());
    for (int y : y_objects)
        for (int a = 0; a < x.size(); ++a)
            if (x.lt(a, y) && !ys.count(a)) return false;
    return true;
}

LabelledPoset glue_pushout(const LabelledPoset& y, const LabelledPoset& x1,
                           const LabelledPoset& x2) {
    // Identify by name (material set theory): shared objects are exactly the
    // name-intersection of X1, X2 and must carry Y's labelling.
    auto find = [](const Poset& p, const std::string& n) { return p.index_of(n); };
    for (int i = 0; i < y.poset.size(); ++i) {
        auto i1 = find(x1.poset, y.poset.name(i));
        auto i2 = find(x2.poset, y.poset.name(i));
        require(i1 && i2, "glue_pushout: Y object missing from a leg");
        require(x1.label[*i1] == y.label[i] && x2.label[*i2] == y.label[i],
                "glue_pushout: labelling conflict on shared objects");
    }
    // Lift condition: Y downward closed in each X_i, with matching order.
    for (const LabelledPoset* leg : {&x1, &x2}) {
        std::vector<int> ys;
        for (int i = 0; i < y.poset.size(); ++i) ys.push_back(*find(leg->poset, y.poset.name(i)));
        require(is_downward_closed(leg->poset, ys), "glue_pushout: lift condition violated");
        for (int i = 0; i < y.poset.size(); ++i)
            for (int j = 0; j < y.poset.size(); ++j)
                require(y.poset.leq(i, j) == leg->poset.leq(ys[i], ys[j]),
                        "glue_pushout: legs are not full inclusions");
    }

    std::vector<std::string> names = x1.poset.names();
    std::vector<int> labels = x1.label;
    std::map<std::string, int> at;
    for (int i = 0; i < x1.poset.size(); ++i) at[x1.poset.name(i)] = i;
    for (int i = 0; i < x2.poset.size(); ++i) {
        const std::string& n = x2.poset.name(i);
        if (at.count(n)) {
            require(find(y.poset, n).has_value(), "glue_pushout: name collision outside Y");
            require(labels[at[n]] == x2.label[i], "glue_pushout: labelling conflict");
        } else {
            at[n] = int(names.size());
            names.push_back(n);
            labels.push_back(x2.label[i]);
        }
    }
    std::vector<std::pair<int, int>> arrows;
    for (auto [a, b] : x1.poset.strict_arrows()) arrows.push_back({a, b});
    for (auto [a, b] : x2.poset.strict_arrows())
        arrows.push_back({at[x2.poset.name(a)], at[x2.poset.name(b)]});
    LabelledPoset out;
    out.poset = Poset(std::move(names), arrows);
    out.label = std::move(labels);
    // Arrows exist iff they exist in X1 or X2: the closure of the union may
    // not add arrows (guaranteed by downward-closedness; assert it).
    for (auto [a, b] : out.poset.strict_arrows()) {
        auto in_leg = [&](const LabelledPoset& leg) {
            auto ia = find(leg.poset, out.poset.name(a));
            auto ib = find(leg.poset, out.poset.name(b));
            return ia && ib && leg.poset.lt(*ia, *ib);
        };
        invariant(in_leg(x1) || in_leg(x2), "glue_pushout: spurious arrow in pushout");
    }
    return out;
}

}  // namespace cubecat
