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

#include "cubecat/cube.hpp"

#include <algorithm>

namespace cubecat {

const SiMap& SiFamily::between(const Poset& base, int x, int y) const {
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].first == x && arrows[i].second == y) return maps[i];
    throw internal_error("SiFamily: arrow not present");
}

SiMap SiFamily::at(const Poset& base, int x, int y) const {
    if (x == y) return SiMap::identity(heights[x]);
    return between(base, x, y);
}

void validate_si_family(const Poset& base, const SiFamily& fam) {
    require(int(fam.heights.size()) == base.size(), "SI-family: height per base object required");
    require(fam.maps.size() == base.strict_arrows().size(), "SI-family: map per base arrow required");
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        auto [x, y] = arrows[i];
        require(fam.maps[i].dom_h == fam.heights[x] && fam.maps[i].cod_h == fam.heights[y],
                "SI-family: map endpoints disagree with fibers");
    }
    for (auto [x, y] : arrows)
        for (int z = 0; z < base.size(); ++z)
            if (base.lt(y, z))
                require(fam.between(base, x, y).then(fam.between(base, y, z)) ==
                            fam.between(base, x, z),
                        "SI-family: not functorial");
}

TotalPoset build_total(const Poset& base, const SiFamily& fam) {
    TotalPoset t;
    std::vector<std::string> names;
    t.first.resize(base.size());
    for (int x = 0; x < base.size(); ++x) {
        t.first[x].resize(2 * fam.heights[x] + 1);
        for (int a = 0; a <= 2 * fam.heights[x]; ++a) {
            t.first[x][a] = int(names.size());
            t.parent.push_back(x);
            t.value.push_back(a);
            names.push_back("(" + base.name(x) + "," + std::to_string(a) + ")");
        }
    }
    std::vector<std::pair<int, int>> arrows;
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = 0; j < names.size(); ++j) {
            if (i == j) continue;
            int x = t.parent[i], y = t.parent[j];
            int a = t.value[i], b = t.value[j];
            if (x == y) {
                if (a != b && interval_leq(a, b)) arrows.push_back({int(i), int(j)});
            } else if (base.lt(x, y) && realise_at(fam.between(base, x, y), a, b)) {
                arrows.push_back({int(i), int(j)});
            }
        }
    t.poset = Poset(std::move(names), arrows);
    return t;
}

SiFamily close_si_family(const Poset& base, const std::vector<int>& heights,
                         const std::map<std::pair<int, int>, SiMap>& hasse_maps) {
    SiFamily fam;
    fam.heights = heights;
    auto hasse = base.hasse();
    for (auto& [key, m] : hasse_maps) {
        bool is_hasse = std::find(hasse.begin(), hasse.end(), key) != hasse.end();
        require(is_hasse, "SI-family: map given on a non-Hasse arrow");
    }
    std::map<std::pair<int, int>, SiMap> table;
    for (auto [a, b] : hasse) {
        auto it = hasse_maps.find({a, b});
        require(it != hasse_maps.end(), "SI-family: missing map on Hasse arrow " + base.name(a) +
                                            "->" + base.name(b));
        table[{a, b}] = it->second;
    }
    // Close under composition along Hasse paths; functoriality is re-checked
    // afterwards, which catches path-dependence.
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [x, y] : base.strict_arrows()) {
            if (table.count({x, y})) continue;
            for (auto [a, b] : hasse) {
                if (a != x || !table.count({b, y})) continue;
                table[{x, y}] = table[{x, b}].then(table.at({b, y}));
                changed = true;
                break;
            }
        }
    }
    for (auto [x, y] : base.strict_arrows()) {
        auto it = table.find({x, y});
        require(it != table.end(), "SI-family: could not derive map for an arrow");
        fam.maps.push_back(it->second);
    }
    validate_si_family(base, fam);
    return fam;
}

CubeFamily CubeFamily::make(Poset base, std::vector<SiFamily> levels, CategoryRef cat,
                            std::vector<int> obj_label, std::vector<int> arrow_label) {
    CubeFamily a;
    a.base_ = std::move(base);
    a.levels_ = std::move(levels);
    a.cat_ = std::move(cat);
    a.obj_label_ = std::move(obj_label);
    a.arrow_label_ = std::move(arrow_label);
    const Poset* cur = &a.base_;
    for (auto& lvl : a.levels_) {
        validate_si_family(*cur, lvl);
        a.totals_.push_back(build_total(*cur, lvl));
        cur = &a.totals_.back().poset;
    }
    const Poset& top = *cur;
    require(int(a.obj_label_.size()) == top.size(), "cube: object label per top point required");
    require(a.arrow_label_.size() == top.strict_arrows().size(),
            "cube: arrow label per top arrow required");
    const FiniteCategory& c = *a.cat_;
    for (int l : a.obj_label_) require(l >= 0 && l < c.objects(), "cube: label out of range");
    const auto& arrows = top.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        int l = a.arrow_label_[i];
        require(l >= 0 && l < c.arrow_count(), "cube: arrow label out of range");
        require(c.arrow(l).src == a.obj_label_[arrows[i].first] &&
                    c.arrow(l).tgt == a.obj_label_[arrows[i].second],
                "cube: arrow label endpoints disagree with object labels");
    }
    for (auto [u, v] : arrows)
        for (int w = 0; w < top.size(); ++w)
            if (top.lt(v, w))
                require(c.compose(a.arrow_label(v, w), a.arrow_label(u, v)) == a.arrow_label(u, w),
                        "cube: labelling not functorial");
    return a;
}

CubeFamily CubeFamily::zero(Poset base, CategoryRef cat, std::vector<int> obj_label,
                            std::vector<int> arrow_label) {
    return make(std::move(base), {}, std::move(cat), std::move(obj_label), std::move(arrow_label));
}

const Poset& CubeFamily::total(int k) const {
    if (k == 0) return base_;
    return totals_[k - 1].poset;
}

const TotalPoset& CubeFamily::total_info(int k) const { return totals_[k - 1]; }

int CubeFamily::arrow_label(int u, int v) const {
    const Poset& top = total(dim());
    if (u == v) return cat_->identity(obj_label_[u]);
    const auto& arrows = top.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arrows[i].first == u && arrows[i].second == v) return arrow_label_[i];
    throw internal_error("cube: arrow label of a non-arrow requested");
}

bool CubeFamily::operator==(const CubeFamily& o) const {
    if (base_ != o.base_ || levels_.size() != o.levels_.size()) return false;
    for (size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i].heights != o.levels_[i].heights || levels_[i].maps != o.levels_[i].maps)
            return false;
    if (!(cat_ == o.cat_ || *cat_ == *o.cat_)) return false;
    return obj_label_ == o.obj_label_ && arrow_label_ == o.arrow_label_;
}

CubeFamily level_labelling(const CubeFamily& a, int k) {
    require(k >= 0 && k <= a.dim(), "level_labelling: level out of range");
    if (k == 0) return a;
    std::vector<SiFamily> levels(a.levels().begin() + k, a.levels().end());
    return CubeFamily::make(a.total(k), std::move(levels), a.cat(), a.obj_labels(),
                            a.arrow_labels());
}

CubeFamily repack(const CubeFamily& lower, int k, const CubeFamily& upper) {
    require(upper.base() == lower.total(k), "repack: upper base must equal the level-k total");
    std::vector<SiFamily> levels(lower.levels().begin(), lower.levels().begin() + k);
    for (const auto& l : upper.levels()) levels.push_back(l);
    return CubeFamily::make(lower.base(), std::move(levels), upper.cat(), upper.obj_labels(),
                            upper.arrow_labels());
}

CubeFamily with_base(const CubeFamily& a, const Poset& new_base, const std::vector<int>& iso) {
    require(int(iso.size()) == a.base().size() && new_base.size() == a.base().size(),
            "with_base: not a bijection");
    for (int x = 0; x < a.base().size(); ++x)
        for (int y = 0; y < a.base().size(); ++y)
            require(a.base().leq(x, y) == new_base.leq(iso[x], iso[y]),
                    "with_base: not an order isomorphism");
    if (a.dim() == 0) {
        std::vector<int> obj(a.base().size()), arr;
        for (int x = 0; x < a.base().size(); ++x) obj[iso[x]] = a.obj_label(x);
        std::vector<int> inv(a.base().size());
        for (int x = 0; x < a.base().size(); ++x) inv[iso[x]] = x;
        for (auto [u, v] : new_base.strict_arrows()) arr.push_back(a.arrow_label(inv[u], inv[v]));
        return CubeFamily::zero(new_base, a.cat(), std::move(obj), std::move(arr));
    }
    std::vector<int> inv(a.base().size());
    for (int x = 0; x < a.base().size(); ++x) inv[iso[x]] = x;
    SiFamily lvl;
    lvl.heights.resize(new_base.size());
    for (int x = 0; x < new_base.size(); ++x) lvl.heights[x] = a.level(1).heights[inv[x]];
    for (auto [u, v] : new_base.strict_arrows())
        lvl.maps.push_back(a.level(1).between(a.base(), inv[u], inv[v]));
    TotalPoset nt = build_total(new_base, lvl);
    // The level-1 totals are isomorphic; rebase the rest inductively.
    const TotalPoset& ot = a.total_info(1);
    std::vector<int> iso1(ot.poset.size());
    for (int i = 0; i < ot.poset.size(); ++i) iso1[i] = nt.at(iso[ot.parent[i]], ot.value[i]);
    CubeFamily upper = with_base(level_labelling(a, 1), nt.poset, iso1);
    std::vector<SiFamily> levels{lvl};
    for (const auto& l : upper.levels()) levels.push_back(l);
    return CubeFamily::make(new_base, std::move(levels), upper.cat(), upper.obj_labels(),
                            upper.arrow_labels());
}

CubeFamily identity_cube(const CubeFamily& a, int m) {
    CubeFamily cur = a;
    for (int i = 0; i < m; ++i) {
        const Poset& x = cur.base();
        SiFamily lvl;
        lvl.heights.assign(x.size(), 0);
        for (size_t j = 0; j < x.strict_arrows().size(); ++j)
            lvl.maps.push_back(SiMap(0, 0, {}));
        TotalPoset t = build_total(x, lvl);
        std::vector<int> iso(x.size());
        for (int o = 0; o < x.size(); ++o) iso[o] = t.at(o, 0);
        CubeFamily upper = with_base(cur, t.poset, iso);
        std::vector<SiFamily> levels{lvl};
        for (const auto& l : upper.levels()) levels.push_back(l);
        cur = CubeFamily::make(x, std::move(levels), upper.cat(), upper.obj_labels(),
                               upper.arrow_labels());
    }
    return cur;
}

Region region_info(const CubeFamily& a, int top_point) {
    const int n = a.dim();
    require(top_point >= 0 && top_point < a.total(n).size(), "region_info: unknown point");
    Region r;
    r.projections.assign(n + 1, 0);
    r.type_bits.assign(n, 0);
    r.projections[n] = top_point;
    for (int k = n; k >= 1; --k) {
        const TotalPoset& t = a.total_info(k);
        r.type_bits[k - 1] = t.value[r.projections[k]] & 1;
        r.projections[k - 1] = t.parent[r.projections[k]];
    }
    for (int b : r.type_bits) r.codim += b;
    return r;
}

CubeFamily relabel(const CubeFamily& a, const CatFunctor& f) {
    require(*a.cat() == *f.dom, "relabel: functor domain mismatch");
    std::vector<int> obj(a.obj_labels());
    for (auto& o : obj) o = f.obj[o];
    std::vector<int> arr(a.arrow_labels());
    for (auto& x : arr) x = f.arr[x];
    return CubeFamily::make(a.base(), a.levels(), f.cod, std::move(obj), std::move(arr));
}

std::vector<int> complete_labels(const Poset& top, CategoryRef cat, const std::vector<int>& obj,
                                 const std::map<std::pair<int, int>, int>& known) {
    const auto& arrows = top.strict_arrows();
    std::vector<int> out(arrows.size(), -1);
    auto find_arrow = [&](int u, int v) -> int {
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i] == std::pair<int, int>{u, v}) return int(i);
        return -1;
    };
    for (auto& [k, v] : known) {
        int i = find_arrow(k.first, k.second);
        require(i >= 0, "complete_labels: labelled pair is not an arrow");
        out[i] = v;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < arrows.size(); ++i) {
            if (out[i] >= 0) continue;
            auto [u, v] = arrows[i];
            auto hom = cat->hom(obj[u], obj[v]);
            require(!hom.empty(), "complete_labels: no arrow between the labels");
            if (hom.size() == 1) {
                out[i] = hom[0];
                changed = true;
                continue;
            }
            // Filter candidates against every triangle with two known sides.
            std::vector<int> cands = hom;
            for (int w = 0; w < top.size() && cands.size() > 1; ++w) {
                if (w == u || w == v) continue;
                if (top.lt(u, w) && top.lt(w, v)) {
                    int a1 = find_arrow(u, w), a2 = find_arrow(w, v);
                    if (a1 >= 0 && a2 >= 0 && out[a1] >= 0 && out[a2] >= 0)
                        cands = {cat->compose(out[a2], out[a1])};
                }
                if (top.lt(w, u)) {
                    int a1 = find_arrow(w, u), a2 = find_arrow(w, v);
                    if (a1 >= 0 && a2 >= 0 && out[a1] >= 0 && out[a2] >= 0) {
                        std::vector<int> keep;
                        for (int g : cands)
                            if (cat->compose(g, out[a1]) == out[a2]) keep.push_back(g);
                        cands = keep;
                    }
                }
                if (top.lt(v, w)) {
                    int a1 = find_arrow(v, w), a2 = find_arrow(u, w);
                    if (a1 >= 0 && a2 >= 0 && out[a1] >= 0 && out[a2] >= 0) {
                        std::vector<int> keep;
                        for (int g : cands)
                            if (cat->compose(out[a1], g) == out[a2]) keep.push_back(g);
                        cands = keep;
                    }
                }
            }
            require(!cands.empty(), "complete_labels: no label satisfies the triangles");
            if (cands.size() == 1) {
                out[i] = cands[0];
                changed = true;
            }
        }
    }
    for (size_t i = 0; i < arrows.size(); ++i)
        require(out[i] >= 0, "complete_labels: arrow label undetermined");
    return out;
}

PullbackResult pullback_family(const CubeFamily& a, const PosetMap& h) {
    require(h.cod == a.base(), "pullback_family: codomain is not the base");
    PullbackResult out;
    out.level_map.push_back(h);
    Poset cur_base = h.dom;
    PosetMap cur = h;  // cur : new G^k -> old G^k
    std::vector<SiFamily> levels;
    for (int k = 1; k <= a.dim(); ++k) {
        const SiFamily& old = a.level(k);
        SiFamily lvl;
        lvl.heights.resize(cur_base.size());
        for (int y = 0; y < cur_base.size(); ++y) lvl.heights[y] = old.heights[cur(y)];
        for (auto [u, v] : cur_base.strict_arrows())
            lvl.maps.push_back(old.at(a.total(k - 1), cur(u), cur(v)));
        TotalPoset t = build_total(cur_base, lvl);
        const TotalPoset& ot = a.total_info(k);
        std::vector<int> lift(t.poset.size());
        for (int i = 0; i < t.poset.size(); ++i) lift[i] = ot.at(cur(t.parent[i]), t.value[i]);
        cur = PosetMap(t.poset, ot.poset, std::move(lift));
        out.level_map.push_back(cur);
        cur_base = t.poset;
        levels.push_back(std::move(lvl));
    }
    std::vector<int> obj(cur_base.size());
    for (int i = 0; i < cur_base.size(); ++i) obj[i] = a.obj_label(cur(i));
    std::vector<int> arr;
    for (auto [u, v] : cur_base.strict_arrows()) arr.push_back(a.arrow_label(cur(u), cur(v)));
    out.family = CubeFamily::make(h.dom, std::move(levels), a.cat(), std::move(obj), std::move(arr));
    return out;
}

PullbackResult restrict_family(const CubeFamily& a, const std::vector<int>& base_objects) {
    std::vector<std::string> names;
    for (int o : base_objects) names.push_back(a.base().name(o));
    std::vector<std::pair<int, int>> arrows;
    for (size_t i = 0; i < base_objects.size(); ++i)
        for (size_t j = 0; j < base_objects.size(); ++j)
            if (a.base().lt(base_objects[i], base_objects[j])) arrows.push_back({int(i), int(j)});
    Poset sub(std::move(names), arrows);
    return pullback_family(a, PosetMap(sub, a.base(), base_objects));
}

CubeFamily sub_above(const CubeFamily& a, int k, int point) {
    CubeFamily upper = level_labelling(a, k);
    PosetMap delta(Poset::point(), upper.base(), {point});
    return pullback_family(upper, delta).family;
}

MultiLevelMap MultiLevelMap::identity(const CubeFamily& a) {
    MultiLevelMap m;
    m.dom = a;
    m.cod = a;
    for (int k = 0; k <= a.dim(); ++k) m.level.push_back(PosetMap::identity(a.total(k)));
    return m;
}

MultiLevelMap MultiLevelMap::then(const MultiLevelMap& g) const {
    require(cod == g.dom, "multi-level composition: middle family mismatch");
    MultiLevelMap m;
    m.dom = dom;
    m.cod = g.cod;
    for (size_t k = 0; k < level.size(); ++k) m.level.push_back(level[k].then(g.level[k]));
    return m;
}

MultiLevelClass check_multilevel_base_change(const MultiLevelMap& h) {
    MultiLevelClass out;
    const int n = h.dom.dim();
    auto fail = [&](const std::string& why) {
        out.valid = false;
        out.why = why;
        return out;
    };
    if (h.cod.dim() != n) return fail("dimension mismatch");
    if (int(h.level.size()) != n + 1) return fail("level map per level required");
    for (int k = 0; k <= n; ++k)
        if (!(h.level[k].dom == h.dom.total(k) && h.level[k].cod == h.cod.total(k)))
            return fail("level map endpoints disagree with towers");
    // Squares over the projections.
    for (int k = 1; k <= n; ++k) {
        const TotalPoset& dt = h.dom.total_info(k);
        const TotalPoset& ct = h.cod.total_info(k);
        for (int i = 0; i < dt.poset.size(); ++i)
            if (ct.parent[h.level[k](i)] != h.level[k - 1](dt.parent[i]))
                return fail("projection square does not commute at level " + std::to_string(k));
    }
    // Label triangle.
    if (!(*h.dom.cat() == *h.cod.cat())) return fail("label categories differ");
    const Poset& top = h.dom.total(n);
    for (int u = 0; u < top.size(); ++u)
        if (h.dom.obj_label(u) != h.cod.obj_label(h.level[n](u)))
            return fail("label triangle fails on an object");
    for (auto [u, v] : top.strict_arrows())
        if (h.dom.arrow_label(u, v) != h.cod.arrow_label(h.level[n](u), h.level[n](v)))
            return fail("label triangle fails on an arrow");
    out.valid = true;
    // Classification of fiber restrictions.
    out.collapse = true;
    out.embedding = true;
    for (int k = 1; k <= n; ++k) {
        const TotalPoset& dt = h.dom.total_info(k);
        const TotalPoset& ct = h.cod.total_info(k);
        for (int x = 0; x < h.dom.total(k - 1).size(); ++x) {
            int y = h.level[k - 1](x);
            int dh = h.dom.level(k).heights[x];
            int chh = h.cod.level(k).heights[y];
            std::vector<int> fiber_map(2 * dh + 1);
            for (int a = 0; a <= 2 * dh; ++a) {
                int img = h.level[k](dt.at(x, a));
                if (ct.parent[img] != y) return out;  // cannot happen (square checked)
                fiber_map[a] = ct.value[img];
            }
            OpenClass c;
            try {
                c = classify_poset_functor(dh, chh, fiber_map);
            } catch (const check_error&) {
                out.collapse = out.embedding = false;
                continue;
            }
            out.collapse = out.collapse && c.collapse;
            out.embedding = out.embedding && c.embedding;
        }
    }
    // Collapse additionally requires the base component to be the identity.
    if (out.collapse) {
        if (!(h.dom.base() == h.cod.base())) out.collapse = false;
        for (int x = 0; out.collapse && x < h.dom.base().size(); ++x)
            if (h.level[0](x) != x) out.collapse = false;
    }
    if (out.embedding) {
        for (int k = 0; k <= n; ++k)
            if (!h.level[k].injective()) out.embedding = false;
    }
    return out;
}

std::vector<MultiLevelMap> decompose_multilevel(const MultiLevelMap& h) {
    MultiLevelClass cls = check_multilevel_base_change(h);
    require(cls.valid, "decompose_multilevel: invalid input (" + cls.why + ")");
    const int n = h.dom.dim();
    // Intermediates: C_k keeps the first k-1 levels of dom and pulls the rest
    // of cod back along the level-(k-1) component. Chain runs level n down to
    // level 0, each step a single-level base change.
    std::vector<MultiLevelMap> steps;
    CubeFamily cur = h.dom;
    std::vector<PosetMap> cur_maps = h.level;  // cur -> cod
    for (int k = n; k >= 0; --k) {
        // Build C_k.
        CubeFamily target;
        std::vector<PosetMap> target_maps;  // C_k -> cod
        if (k == 0) {
            target = h.cod;
            for (int l = 0; l <= n; ++l) target_maps.push_back(PosetMap::identity(h.cod.total(l)));
        } else {
            PullbackResult pulled = pullback_family(level_labelling(h.cod, k - 1), cur_maps[k - 1]);
            target = repack(cur, k - 1, pulled.family);
            for (int l = 0; l < k - 1; ++l) target_maps.push_back(cur_maps[l]);
            for (int l = k - 1; l <= n; ++l) target_maps.push_back(pulled.level_map[l - (k - 1)]);
        }
        // Step map cur -> C_k: identity below k; above, follow the fiber
        // values of the given component maps.
        MultiLevelMap step;
        step.dom = cur;
        step.cod = target;
        for (int l = 0; l <= n; ++l) {
            if (l < k) {
                step.level.push_back(PosetMap::identity(cur.total(l)));
                continue;
            }
            const int down_to = std::max(k, 1);
            std::vector<int> obj(cur.total(l).size());
            for (int u = 0; u < cur.total(l).size(); ++u) {
                // cod fiber values along the image's projection chain
                std::vector<int> cod_vals;
                int cu = cur_maps[l](u);
                for (int m = l; m >= down_to; --m) {
                    cod_vals.push_back(h.cod.total_info(m).value[cu]);
                    cu = h.cod.total_info(m).parent[cu];
                }
                // walk down to the level target shares with cur, then climb
                int w = u;
                for (int m = l; m >= down_to; --m) w = cur.total_info(m).parent[w];
                int img = (k == 0) ? cur_maps[0](w) : w;
                for (int m = down_to; m <= l; ++m)
                    img = target.total_info(m).at(img, cod_vals[l - m]);
                obj[u] = img;
            }
            step.level.push_back(PosetMap(cur.total(l), target.total(l), std::move(obj)));
        }
        invariant(check_multilevel_base_change(step).valid,
                  "decompose_multilevel: invalid step produced");
        steps.push_back(step);
        // Residual: target -> cod.
        cur = target;
        cur_maps = target_maps;
    }
    // Drop trailing identity steps for readability? Keep all: one per level.
    return steps;
}

}  // namespace cubecat
