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

#include "cubecat/globe.hpp"

#include <algorithm>

namespace cubecat {

bool is_constant(const CubeFamily& a) {
    if (a.base().size() == 0) return true;
    PullbackResult k = restrict_family(a, {0});
    PosetMap bang(a.base(), k.family.base(), std::vector<int>(a.base().size(), 0));
    return pullback_family(k.family, bang).family == a;
}

bool is_locally_trivial(const CubeFamily& a) {
    for (auto [x, y] : a.base().strict_arrows()) {
        PullbackResult r = restrict_family(a, {x, y});
        if (!is_constant(normalize(r.family).nf)) return false;
    }
    return true;
}

bool is_globally_trivial(const CubeFamily& a) {
    for (const auto& comp : a.base().components())
        if (!is_constant(restrict_family(a, comp).family)) return false;
    return true;
}

namespace {

// Local triviality of the level-k labelling over a set of arrows of G^k.
bool trivial_on_arrows(const CubeFamily& upper, const std::vector<std::pair<int, int>>& arrows) {
    for (auto [u, v] : arrows) {
        PullbackResult r = restrict_family(upper, {u, v});
        if (!is_constant(normalize(r.family).nf)) return false;
    }
    return true;
}

}  // namespace

bool is_globular(const CubeFamily& a, bool boundary_mode) {
    for (int k = 1; k <= a.dim(); ++k) {
        CubeFamily upper = level_labelling(a, k);
        const TotalPoset& t = a.total_info(k);
        std::vector<std::pair<int, int>> arrows;
        if (!boundary_mode) {
            // all arrows within the regular content of G^k
            for (auto [u, v] : t.poset.strict_arrows())
                if (is_reg(t.value[u]) && is_reg(t.value[v])) arrows.push_back({u, v});
        } else {
            // arrows within the source image and within the target image
            for (auto [x, y] : a.total(k - 1).strict_arrows()) {
                arrows.push_back({t.at(x, 0), t.at(y, 0)});
                arrows.push_back({t.at(x, 2 * a.level(k).heights[x]),
                                  t.at(y, 2 * a.level(k).heights[y])});
            }
        }
        if (!trivial_on_arrows(upper, arrows)) return false;
    }
    return true;
}

namespace {

CubeFamily boundary_slice(const CubeFamily& a, bool source) {
    require(a.dim() >= 1, "globular boundary: dimension must be positive");
    require(a.base().size() == 1, "globular boundary: cube over the point expected");
    int h = a.level(1).heights[0];
    int pt = a.total_info(1).at(0, source ? 0 : 2 * h);
    CubeFamily out = sub_above(a, 1, pt);
    return out;
}

}  // namespace

CubeFamily globular_src(const CubeFamily& a) { return boundary_slice(a, true); }
CubeFamily globular_tgt(const CubeFamily& a) { return boundary_slice(a, false); }

CubeFamily iter_globular_src(const CubeFamily& a, int k) {
    CubeFamily cur = a;
    for (int i = 0; i < k; ++i) cur = globular_src(cur);
    return cur;
}

CubeFamily iter_globular_tgt(const CubeFamily& a, int k) {
    CubeFamily cur = a;
    for (int i = 0; i < k; ++i) cur = globular_tgt(cur);
    return cur;
}

ConeResult adjoin_top(const CubeFamily& a, CategoryRef extended, int top_label) {
    const int n = a.dim();
    const Poset& x = a.base();
    // Uniqueness of arrows into the cone label from all labels used in a.
    for (int p = 0; p < a.total(n).size(); ++p) {
        auto from = extended->object_index(a.cat()->obj_name(a.obj_label(p)));
        require(from.has_value(), "adjoin_top: labels missing from the extended category");
        require(extended->unique_arrow(*from, top_label).has_value(),
                "adjoin_top: no unique arrow from " + a.cat()->obj_name(a.obj_label(p)) +
                    " to the cone label");
    }
    // Translate a's labels into the extended category.
    std::vector<int> obj_lift(a.cat()->objects());
    for (int o = 0; o < a.cat()->objects(); ++o) {
        auto idx = extended->object_index(a.cat()->obj_name(o));
        require(idx.has_value(), "adjoin_top: label category is not a subcategory");
        obj_lift[o] = *idx;
    }
    std::vector<int> arr_lift(a.cat()->arrow_count());
    for (int f = 0; f < a.cat()->arrow_count(); ++f) {
        auto idx = extended->arrow_index(a.cat()->arrow(f).name);
        if (!idx && a.cat()->is_identity(f))
            idx = extended->identity(obj_lift[a.cat()->arrow(f).src]);
        if (!idx)
            idx = extended->unique_arrow(obj_lift[a.cat()->arrow(f).src],
                                         obj_lift[a.cat()->arrow(f).tgt]);
        require(idx.has_value(), "adjoin_top: arrow missing from the extended category");
        arr_lift[f] = *idx;
    }
    CubeFamily al = relabel(a, CatFunctor(a.cat(), extended, obj_lift, arr_lift));

    // The coned base: x plus a fresh maximal object.
    std::vector<std::string> names = x.names();
    std::string top_name = "^";
    while (x.index_of(top_name).has_value()) top_name += "^";
    names.push_back(top_name);
    std::vector<std::pair<int, int>> base_arrows;
    for (auto [u, v] : x.strict_arrows()) base_arrows.push_back({u, v});
    for (int u = 0; u < x.size(); ++u) base_arrows.push_back({u, x.size()});
    Poset xt(names, base_arrows);

    if (n == 0) {
        std::vector<int> obj(xt.size());
        for (int u = 0; u < x.size(); ++u) obj[u] = al.obj_label(u);
        obj[x.size()] = top_label;
        std::vector<int> arr;
        for (auto [u, v] : xt.strict_arrows()) {
            if (v == x.size()) arr.push_back(*extended->unique_arrow(obj[u], top_label));
            else arr.push_back(al.arrow_label(u, v));
        }
        ConeResult out;
        out.family = CubeFamily::zero(xt, extended, std::move(obj), std::move(arr));
        out.vertex = x.size();
        return out;
    }

    require(is_normalized(a) && is_globular(a),
            "adjoin_top: input must be normalized and globular");
    require(x.size() > 0, "adjoin_top: positive-dimensional family over the empty poset");

    // Level 1 over the coned base: the terminal interval over the top object.
    SiFamily lvl;
    lvl.heights.resize(xt.size());
    for (int u = 0; u < x.size(); ++u) lvl.heights[u] = a.level(1).heights[u];
    lvl.heights[x.size()] = 1;
    for (auto [u, v] : xt.strict_arrows()) {
        if (v == int(x.size())) {
            std::vector<int> sm(lvl.heights[u], 1);
            lvl.maps.push_back(SiMap(lvl.heights[u], 1, std::move(sm)));
        } else {
            lvl.maps.push_back(a.level(1).between(x, u, v));
        }
    }
    TotalPoset t1 = build_total(xt, lvl);

    // Y: the old level-1 total plus the two outer points of the cone fiber.
    const TotalPoset& ot = al.total_info(1);
    CubeFamily u1 = level_labelling(al, 1);
    std::vector<int> src_col, tgt_col;
    for (int xx = 0; xx < x.size(); ++xx) {
        src_col.push_back(ot.at(xx, 0));
        tgt_col.push_back(ot.at(xx, 2 * al.level(1).heights[xx]));
    }
    require(is_constant(restrict_family(u1, src_col).family),
            "adjoin_top: family not constant on the source section image");
    require(is_constant(restrict_family(u1, tgt_col).family),
            "adjoin_top: family not constant on the target section image");
    CubeFamily k_src = sub_above(al, 1, src_col[0]);
    CubeFamily k_tgt = sub_above(al, 1, tgt_col[0]);

    // The base of the glued (n-1)-family: Y as a full subposet of t1.
    enum Kind { OLD, SLO, SHI };
    std::vector<int> ysel;
    std::vector<int> kind, ref;       // per Y object
    std::vector<int> ksrc, ktgt;      // K-coordinate when on the matching column
    std::vector<int> old_to_y(ot.poset.size());
    for (int i = 0; i < ot.poset.size(); ++i) {
        ysel.push_back(t1.at(ot.parent[i], ot.value[i]));
        old_to_y[i] = int(ysel.size()) - 1;
        kind.push_back(OLD);
        ref.push_back(i);
        ksrc.push_back(ot.value[i] == 0 ? 0 : -1);
        ktgt.push_back(ot.value[i] == 2 * al.level(1).heights[ot.parent[i]] ? 0 : -1);
    }
    int y_lo = t1.at(x.size(), 0), y_hi = t1.at(x.size(), 2);
    ysel.push_back(y_lo);
    kind.push_back(SLO);
    ref.push_back(0);
    ksrc.push_back(0);
    ktgt.push_back(-1);
    ysel.push_back(y_hi);
    kind.push_back(SHI);
    ref.push_back(0);
    ksrc.push_back(-1);
    ktgt.push_back(0);
    std::vector<std::string> ynames;
    for (int o : ysel) ynames.push_back(t1.poset.name(o));
    std::vector<std::pair<int, int>> yarrows;
    for (size_t i = 0; i < ysel.size(); ++i)
        for (size_t j = 0; j < ysel.size(); ++j)
            if (t1.poset.lt(ysel[i], ysel[j])) yarrows.push_back({int(i), int(j)});
    Poset ypos(ynames, yarrows);

    // Glue u1 with the two constant cone columns over ypos, level by level.
    const int m = n - 1;  // dimension of the glued family
    std::vector<SiFamily> ylevels;
    Poset cur = ypos;
    std::vector<int> ck = kind, cr = ref, cs = ksrc, ct = ktgt;
    for (int l = 1; l <= m; ++l) {
        SiFamily nl;
        nl.heights.resize(cur.size());
        for (int w = 0; w < cur.size(); ++w) {
            if (ck[w] == OLD) nl.heights[w] = u1.level(l).heights[cr[w]];
            else if (ck[w] == SLO) nl.heights[w] = k_src.level(l).heights[cr[w]];
            else nl.heights[w] = k_tgt.level(l).heights[cr[w]];
        }
        for (auto [w, w2] : cur.strict_arrows()) {
            if (ck[w] == OLD && ck[w2] == OLD)
                nl.maps.push_back(u1.level(l).between(u1.total(l - 1), cr[w], cr[w2]));
            else if (ck[w2] == SLO || (ck[w] == SLO && ck[w2] == SLO)) {
                invariant(cs[w] >= 0 && cs[w2] >= 0, "adjoin_top: cross arrow off the column");
                nl.maps.push_back(k_src.level(l).at(k_src.total(l - 1), cs[w], cs[w2]));
            } else {
                invariant(ct[w] >= 0 && ct[w2] >= 0, "adjoin_top: cross arrow off the column");
                nl.maps.push_back(k_tgt.level(l).at(k_tgt.total(l - 1), ct[w], ct[w2]));
            }
        }
        TotalPoset nt = build_total(cur, nl);
        std::vector<int> nk(nt.poset.size()), nr(nt.poset.size()), ns(nt.poset.size(), -1),
            ntg(nt.poset.size(), -1);
        for (int i = 0; i < nt.poset.size(); ++i) {
            int w = nt.parent[i], v = nt.value[i];
            nk[i] = ck[w];
            if (ck[w] == OLD) nr[i] = u1.total_info(l).at(cr[w], v);
            else if (ck[w] == SLO) nr[i] = k_src.total_info(l).at(cr[w], v);
            else nr[i] = k_tgt.total_info(l).at(cr[w], v);
            if (cs[w] >= 0) ns[i] = k_src.total_info(l).at(cs[w], v);
            if (ct[w] >= 0) ntg[i] = k_tgt.total_info(l).at(ct[w], v);
        }
        ck = nk;
        cr = nr;
        cs = ns;
        ct = ntg;
        ylevels.push_back(nl);
        cur = nt.poset;
    }
    std::vector<int> yobj_label(cur.size());
    for (int i = 0; i < cur.size(); ++i) {
        if (ck[i] == OLD) yobj_label[i] = u1.obj_label(cr[i]);
        else if (ck[i] == SLO) yobj_label[i] = k_src.obj_label(cr[i]);
        else yobj_label[i] = k_tgt.obj_label(cr[i]);
    }
    std::vector<int> yarr_label;
    for (auto [w, w2] : cur.strict_arrows()) {
        if (ck[w] == OLD && ck[w2] == OLD)
            yarr_label.push_back(u1.arrow_label(cr[w], cr[w2]));
        else if (ck[w2] == SLO)
            yarr_label.push_back(k_src.arrow_label(cs[w], cs[w2]));
        else
            yarr_label.push_back(k_tgt.arrow_label(ct[w], ct[w2]));
    }
    CubeFamily over_y = CubeFamily::make(ypos, ylevels, extended, yobj_label, yarr_label);

    // Recurse: cone off the glued (n-1)-family, then identify the coned base
    // with the new level-1 total.
    ConeResult inner = adjoin_top(over_y, extended, top_label);
    std::vector<int> iso(inner.family.base().size());
    for (size_t i = 0; i < ysel.size(); ++i) iso[i] = ysel[i];
    iso[ysel.size()] = t1.at(x.size(), 1);
    invariant(int(inner.family.base().size()) == int(ysel.size()) + 1,
              "adjoin_top: recursion produced an unexpected base");
    CubeFamily upper = with_base(inner.family, t1.poset, iso);

    std::vector<SiFamily> levels{lvl};
    for (const auto& l : upper.levels()) levels.push_back(l);
    ConeResult out;
    out.family = CubeFamily::make(xt, std::move(levels), upper.cat(), upper.obj_labels(),
                                  upper.arrow_labels());
    // Track the vertex through the rebasing by its coordinates.
    {
        std::vector<int> vals;
        int w = inner.vertex;
        for (int l = inner.family.dim(); l >= 1; --l) {
            vals.push_back(inner.family.total_info(l).value[w]);
            w = inner.family.total_info(l).parent[w];
        }
        int img = iso[w];
        for (int l = 1; l <= upper.dim(); ++l)
            img = out.family.total_info(l + 1).at(img, vals[upper.dim() - l]);
        out.vertex = img;
    }
    invariant(out.family.obj_label(out.vertex) == top_label, "adjoin_top: vertex mislabelled");
    return out;
}

CubeFamily double_cone(const CubeFamily& s, const CubeFamily& t, CategoryRef cat, int g_label) {
    require(s.dim() == t.dim(), "double_cone: boundary dimensions differ");
    const int m = s.dim();
    require(s.base().size() == 1 && t.base().size() == 1, "double_cone: boundaries over the point");
    if (m >= 1) {
        require(globular_src(s) == globular_src(t) && globular_tgt(s) == globular_tgt(t),
                "double_cone: sources and targets must coincide");
    }
    // A = (S,T) over the 2-point discrete poset, then cone and read off as a
    // 1-level family over the terminal interval.
    Poset two = Poset::discrete({"s", "t"});
    std::vector<SiFamily> levels;
    for (int k = 1; k <= m; ++k) {
        SiFamily lvl;
        // disjoint union of the towers
        const Poset& sb = s.total(k - 1);
        const Poset& tb = t.total(k - 1);
        (void)sb;
        (void)tb;
        lvl = SiFamily{};
        levels.push_back(lvl);
    }
    // Build the disjoint-union family directly.
    // Helper lambda: renumber a family over the two-point base.
    // For simplicity, construct by explicit level data.
    std::vector<SiFamily> lv;
    std::vector<const CubeFamily*> parts{&s, &t};
    // level data by induction over levels, tracking the object maps of each part
    std::vector<std::vector<int>> part_obj(2);  // current-level total ids per part
    part_obj[0] = {0};
    part_obj[1] = {1};
    Poset cur = two;
    for (int k = 1; k <= m; ++k) {
        SiFamily lvl;
        lvl.heights.resize(cur.size());
        for (int side = 0; side < 2; ++side) {
            const CubeFamily& c = *parts[side];
            for (int x = 0; x < c.total(k - 1).size(); ++x)
                lvl.heights[part_obj[side][x]] = c.level(k).heights[x];
        }
        // arrows only within one side (the base is a disjoint union)
        for (auto [u, v] : cur.strict_arrows()) {
            for (int side = 0; side < 2; ++side) {
                const CubeFamily& c = *parts[side];
                int iu = -1, iv = -1;
                for (int x = 0; x < c.total(k - 1).size(); ++x) {
                    if (part_obj[side][x] == u) iu = x;
                    if (part_obj[side][x] == v) iv = x;
                }
                if (iu >= 0 && iv >= 0) lvl.maps.push_back(c.level(k).between(c.total(k - 1), iu, iv));
            }
        }
        TotalPoset tp = build_total(cur, lvl);
        std::vector<std::vector<int>> next(2);
        for (int side = 0; side < 2; ++side) {
            const CubeFamily& c = *parts[side];
            const TotalPoset& pt = c.total_info(k);
            next[side].resize(pt.poset.size());
            for (int i = 0; i < pt.poset.size(); ++i)
                next[side][i] = tp.at(part_obj[side][pt.parent[i]], pt.value[i]);
        }
        part_obj = next;
        cur = tp.poset;
        lv.push_back(lvl);
    }
    std::vector<int> obj(cur.size());
    for (int side = 0; side < 2; ++side) {
        const CubeFamily& c = *parts[side];
        for (int i = 0; i < c.total(m).size(); ++i) obj[part_obj[side][i]] = c.obj_label(i);
    }
    std::vector<int> arr;
    for (auto [u, v] : cur.strict_arrows()) {
        int lab = -1;
        for (int side = 0; side < 2 && lab < 0; ++side) {
            const CubeFamily& c = *parts[side];
            for (int i = 0; i < c.total(m).size() && lab < 0; ++i)
                for (int j = 0; j < c.total(m).size() && lab < 0; ++j)
                    if (part_obj[side][i] == u && part_obj[side][j] == v)
                        lab = c.arrow_label(i, j);
        }
        invariant(lab >= 0, "double_cone: cross-part arrow in a disjoint union");
        arr.push_back(lab);
    }
    CubeFamily pair = CubeFamily::make(two, lv, s.cat(), std::move(obj), std::move(arr));

    ConeResult cone = adjoin_top(pair, cat, g_label);
    // The coned base {s, t, ^} is the terminal interval via s|0, ^|1, t|2.
    const Poset& cb = cone.family.base();
    invariant(cb.size() == 3, "double_cone: unexpected cone base");
    SiFamily top_lvl;
    top_lvl.heights = {1};
    TotalPoset t1 = build_total(Poset::point(), top_lvl);
    std::vector<int> iso(3);
    iso[*cb.index_of("s")] = t1.at(0, 0);
    iso[*cb.index_of("^")] = t1.at(0, 1);
    iso[*cb.index_of("t")] = t1.at(0, 2);
    CubeFamily upper = with_base(cone.family, t1.poset, iso);
    std::vector<SiFamily> levels2{top_lvl};
    for (const auto& l : upper.levels()) levels2.push_back(l);
    return CubeFamily::make(Poset::point(), levels2, upper.cat(), upper.obj_labels(),
                            upper.arrow_labels());
}

TerminalGlobe terminal_globe(int n) {
    TerminalGlobe out;
    out.globular_set = representable_globular(n);
    auto cat = std::make_shared<FiniteCategory>(elements_category(out.globular_set));
    if (n == 0) {
        out.cube = CubeFamily::zero(Poset::point(), cat, {0}, {});
        return out;
    }
    TerminalGlobe prev = terminal_globe(n - 1);
    // Relabel G^{n-1} along El(sigma)^op and El(tau)^op into G^n's category.
    GlobularMap sigma, tau;
    sigma.dom = &prev.globular_set;
    sigma.cod = &out.globular_set;
    tau.dom = &prev.globular_set;
    tau.cod = &out.globular_set;
    sigma.at.resize(n);
    tau.at.resize(n);
    for (int k = 0; k < n - 1; ++k) {
        sigma.at[k] = {0, 1};  // s_k |-> s_k, t_k |-> t_k
        tau.at[k] = {0, 1};
    }
    sigma.at[n - 1] = {0};  // id_{n-1} |-> s_{n-1}
    tau.at[n - 1] = {1};
    CatFunctor fs = elements_functor(sigma, prev.cube.cat(), cat);
    CatFunctor ft = elements_functor(tau, prev.cube.cat(), cat);
    CubeFamily s = relabel(prev.cube, fs);
    CubeFamily t = relabel(prev.cube, ft);
    int top = int(2 * n);  // graded lexicographic: id_n is the last object
    invariant(cat->obj_name(top) == "id" + std::to_string(n), "terminal_globe: label indexing");
    out.cube = double_cone(s, t, cat, top);
    return out;
}

}  // namespace cubecat
