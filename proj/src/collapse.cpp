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

#include "cubecat/collapse.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cubecat {

namespace {

// f applied to a set of singular heights.
std::vector<int> map_set(const SiMap& f, const std::vector<int>& s) {
    std::vector<int> out;
    for (int v : s) out.push_back(f(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool subset_of(const std::vector<int>& a, const std::vector<int>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool is_stable_section(const Poset& base, const SiFamily& fam, const SubsetSection& s) {
    require(int(s.at.size()) == base.size(), "section: entry per base object required");
    for (int x = 0; x < base.size(); ++x)
        for (int v : s.at[x])
            require(is_sing(v) && v >= 1 && v <= 2 * fam.heights[x] - 1,
                    "section: not a singular height");
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        auto [x, y] = arrows[i];
        if (!subset_of(map_set(fam.maps[i], s.at[x]), s.at[y])) return false;
    }
    return true;
}

Injection injection_of_section(const Poset& base, const SiFamily& fam, const SubsetSection& s) {
    require(is_stable_section(base, fam, s), "injection_of_section: unstable section");
    Injection inj;
    for (int x = 0; x < base.size(); ++x)
        inj.component.push_back(SiMap::subset_injection(fam.heights[x], s.at[x]));
    return inj;
}

SubsetSection section_of_injection(const Injection& inj) {
    SubsetSection s;
    for (const auto& c : inj.component) s.at.push_back(c.image());
    return s;
}

bool is_valid_injection(const Poset& base, const SiFamily& fam, const SiFamily& sub,
                        const Injection& inj) {
    if (int(inj.component.size()) != base.size()) return false;
    for (int x = 0; x < base.size(); ++x) {
        const SiMap& c = inj.component[x];
        if (!c.injective() || c.dom_h != sub.heights[x] || c.cod_h != fam.heights[x]) return false;
    }
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        auto [x, y] = arrows[i];
        if (!(sub.maps[i].then(inj.component[y]) == inj.component[x].then(fam.maps[i])))
            return false;
    }
    return true;
}

PosetMap collapse_map(const Poset& base, const SiFamily& fam, const SiFamily& sub,
                      const Injection& inj, const TotalPoset& total_a, const TotalPoset& total_b) {
    require(is_valid_injection(base, fam, sub, inj), "collapse_map: invalid injection");
    std::vector<int> obj(total_a.poset.size());
    for (int i = 0; i < total_a.poset.size(); ++i) {
        int x = total_a.parent[i];
        std::vector<int> fiber = collapse_functor_of_mono(inj.component[x]);
        obj[i] = total_b.at(x, fiber[total_a.value[i]]);
    }
    return PosetMap(total_a.poset, total_b.poset, std::move(obj));
}

std::optional<AppliedCollapse> try_collapse(const CubeFamily& a, int k, const SubsetSection& keep,
                                            std::string* why) {
    auto bail = [&](const std::string& w) -> std::optional<AppliedCollapse> {
        if (why) *why = w;
        return std::nullopt;
    };
    const int n = a.dim();
    require(k >= 1 && k <= n, "try_collapse: level out of range");
    const Poset& kbase = a.total(k - 1);
    const SiFamily& fam = a.level(k);
    if (!is_stable_section(kbase, fam, keep)) return bail("unstable section");

    Injection inj = injection_of_section(kbase, fam, keep);
    SiFamily sub;
    for (int x = 0; x < kbase.size(); ++x) sub.heights.push_back(int(keep.at[x].size()));
    {
        const auto& arrows = kbase.strict_arrows();
        for (size_t i = 0; i < arrows.size(); ++i) {
            auto [x, y] = arrows[i];
            // eta_{F_y}^{-1} . fam(x->y) . eta_{F_x}
            std::vector<int> s;
            for (int v : keep.at[x]) {
                int img = fam.maps[i](v);
                auto it = std::lower_bound(keep.at[y].begin(), keep.at[y].end(), img);
                invariant(it != keep.at[y].end() && *it == img, "try_collapse: stability broken");
                s.push_back(2 * int(it - keep.at[y].begin()) + 1);
            }
            sub.maps.push_back(SiMap(sub.heights[x], sub.heights[y], std::move(s)));
        }
    }
    TotalPoset total_b = build_total(kbase, sub);
    PosetMap s_map = collapse_map(kbase, fam, sub, inj, a.total_info(k), total_b);

    // Push the tower above level k (and finally the labels) through the
    // collapse, checking that everything is constant on preimages and that
    // arrows collapsing onto identities carry identity data.
    std::vector<SiFamily> levels(a.levels().begin(), a.levels().begin() + (k - 1));
    levels.push_back(sub);
    std::vector<PosetMap> level_map;
    for (int l = 0; l < k; ++l) level_map.push_back(PosetMap::identity(a.total(l)));
    level_map.push_back(s_map);

    Poset cur_b = total_b.poset;  // collapsed-side level total
    PosetMap cur = s_map;         // a.total(l) -> collapsed total(l)
    for (int l = k + 1; l <= n; ++l) {
        const SiFamily& old = a.level(l);
        const Poset& old_base = a.total(l - 1);
        SiFamily nl;
        nl.heights.assign(cur_b.size(), -1);
        for (int p = 0; p < old_base.size(); ++p) {
            int q = cur(p);
            if (nl.heights[q] == -1) nl.heights[q] = old.heights[p];
            else if (nl.heights[q] != old.heights[p])
                return bail("label factorization failure: fiber heights disagree at level " +
                            std::to_string(l));
        }
        for (int q = 0; q < cur_b.size(); ++q)
            invariant(nl.heights[q] >= 0, "try_collapse: non-surjective collapse map");
        std::map<std::pair<int, int>, SiMap> table;
        for (auto [p, p2] : old_base.strict_arrows()) {
            const SiMap& m = old.between(old_base, p, p2);
            int q = cur(p), q2 = cur(p2);
            if (q == q2) {
                if (!(m == SiMap::identity(nl.heights[q])))
                    return bail(
                        "label factorization failure: non-identity data over a collapsed arrow "
                        "at level " +
                        std::to_string(l));
                continue;
            }
            auto it = table.find({q, q2});
            if (it == table.end()) table[{q, q2}] = m;
            else if (!(it->second == m))
                return bail(
                    "label factorization failure: maps disagree on a preimage class at level " +
                    std::to_string(l));
        }
        SiFamily built = nl;
        built.maps.clear();
        for (auto [q, q2] : cur_b.strict_arrows()) {
            auto it = table.find({q, q2});
            invariant(it != table.end(), "try_collapse: arrow not covered by any preimage");
            built.maps.push_back(it->second);
        }
        TotalPoset nb = build_total(cur_b, built);
        const TotalPoset& ob = a.total_info(l);
        std::vector<int> obj(ob.poset.size());
        for (int i = 0; i < ob.poset.size(); ++i) obj[i] = nb.at(cur(ob.parent[i]), ob.value[i]);
        cur = PosetMap(ob.poset, nb.poset, std::move(obj));
        level_map.push_back(cur);
        levels.push_back(built);
        cur_b = nb.poset;
    }

    // Labels.
    const Poset& old_top = a.total(n);
    std::vector<int> obj_label(cur_b.size(), -1);
    for (int p = 0; p < old_top.size(); ++p) {
        int q = cur(p);
        if (obj_label[q] == -1) obj_label[q] = a.obj_label(p);
        else if (obj_label[q] != a.obj_label(p))
            return bail("label factorization failure: object labels disagree on a preimage class");
    }
    std::map<std::pair<int, int>, int> atable;
    for (auto [p, p2] : old_top.strict_arrows()) {
        int q = cur(p), q2 = cur(p2);
        int lab = a.arrow_label(p, p2);
        if (q == q2) {
            if (!a.cat()->is_identity(lab))
                return bail("label factorization failure: non-identity label over a collapsed arrow");
            continue;
        }
        auto it = atable.find({q, q2});
        if (it == atable.end()) atable[{q, q2}] = lab;
        else if (it->second != lab)
            return bail("label factorization failure: arrow labels disagree on a preimage class");
    }
    std::vector<int> arrow_label;
    for (auto [q, q2] : cur_b.strict_arrows()) {
        auto it = atable.find({q, q2});
        invariant(it != atable.end(), "try_collapse: top arrow not covered");
        arrow_label.push_back(it->second);
    }

    AppliedCollapse out;
    out.result = CubeFamily::make(a.base(), std::move(levels), a.cat(), std::move(obj_label),
                                  std::move(arrow_label));
    out.witness.level = k;
    out.witness.witness = inj;
    out.level_map = std::move(level_map);
    return out;
}

KCollapseCheck check_k_collapse(const CubeFamily& a, const CubeFamily& b, const Injection& inj,
                                int k) {
    KCollapseCheck out;
    if (a.dim() != b.dim() || k < 1 || k > a.dim()) {
        out.why = "tower mismatch: dimensions or level out of range";
        return out;
    }
    if (!(a.base() == b.base())) {
        out.why = "tower mismatch: bases differ";
        return out;
    }
    for (int l = 1; l < k; ++l)
        if (!(a.level(l).heights == b.level(l).heights && a.level(l).maps == b.level(l).maps)) {
            out.why = "tower mismatch: towers disagree strictly below the collapse level";
            return out;
        }
    const Poset& kbase = a.total(k - 1);
    if (!is_valid_injection(kbase, a.level(k), b.level(k), inj)) {
        out.why = "invalid injection witness";
        return out;
    }
    std::string why;
    auto applied = try_collapse(a, k, section_of_injection(inj), &why);
    if (!applied) {
        out.why = why;
        return out;
    }
    if (!(applied->result == b)) {
        out.why = "label factorization failure: factorized family differs from B";
        return out;
    }
    out.ok = true;
    return out;
}

namespace {

// Whether the family is the constant functor: it equals the pullback of one
// of its point restrictions along the terminal map.
bool is_constant_family(const CubeFamily& fam) {
    if (fam.base().size() == 0) return true;
    PullbackResult k = restrict_family(fam, {0});
    PosetMap bang(fam.base(), k.family.base(), std::vector<int>(fam.base().size(), 0));
    return pullback_family(k.family, bang).family == fam;
}

// Whether the single-arrow restriction of the level-k labelling at the
// total(k) arrow (u -> v) is constant, i.e. the arrow carries identity data
// all the way up.
bool arrow_carries_identity(const CubeFamily& level_k_labelling, int u, int v) {
    PullbackResult r = restrict_family(level_k_labelling, {u, v});
    return is_constant_family(r.family);
}

}  // namespace

SubsetSection normal_form_section(const CubeFamily& a, int k) {
    const Poset& kbase = a.total(k - 1);
    const SiFamily& fam = a.level(k);
    const TotalPoset& tk = a.total_info(k);
    CubeFamily upper = level_labelling(a, k);
    // Locally removable heights: both flanking fiber arrows carry identity
    // data (this subsumes agreement of the towers above the neighbours).
    std::vector<std::vector<int>> removable(kbase.size());
    for (int x = 0; x < kbase.size(); ++x)
        for (int v = 1; v <= 2 * fam.heights[x] - 1; v += 2) {
            int p = tk.at(x, v);
            if (arrow_carries_identity(upper, tk.at(x, v - 1), p) &&
                arrow_carries_identity(upper, tk.at(x, v + 1), p))
                removable[x].push_back(v);
        }
    SubsetSection keep;
    keep.at.resize(kbase.size());
    for (int x = 0; x < kbase.size(); ++x)
        for (int v = 1; v <= 2 * fam.heights[x] - 1; v += 2)
            if (!std::binary_search(removable[x].begin(), removable[x].end(), v))
                keep.at[x].push_back(v);
    // Shrink the removable set until the kept section is stable.
    bool changed = true;
    while (changed) {
        changed = false;
        const auto& arrows = kbase.strict_arrows();
        for (size_t i = 0; i < arrows.size(); ++i) {
            auto [x, y] = arrows[i];
            for (int img : map_set(fam.maps[i], keep.at[x]))
                if (!std::binary_search(keep.at[y].begin(), keep.at[y].end(), img)) {
                    keep.at[y].insert(std::upper_bound(keep.at[y].begin(), keep.at[y].end(), img),
                                      img);
                    changed = true;
                }
        }
    }
    return keep;
}

Normalization normalize(const CubeFamily& a) {
    Normalization out;
    out.seq.families.push_back(a);
    CubeFamily cur = a;
    MultiLevelMap acc = MultiLevelMap::identity(a);
    for (int k = a.dim(); k >= 1; --k) {
        SubsetSection keep = normal_form_section(cur, k);
        std::string why;
        auto applied = try_collapse(cur, k, keep, &why);
        invariant(applied.has_value(), "normalize: maximal collapse failed to factor (" + why + ")");
        MultiLevelMap step;
        step.dom = cur;
        step.cod = applied->result;
        step.level = applied->level_map;
        acc = acc.then(step);
        out.seq.steps.push_back(applied->witness);
        cur = applied->result;
        out.seq.families.push_back(cur);
    }
    out.nf = cur;
    out.to_nf = acc;
    return out;
}

bool is_normalized(const CubeFamily& a) {
    for (int k = 1; k <= a.dim(); ++k) {
        SubsetSection keep = normal_form_section(a, k);
        for (int x = 0; x < a.total(k - 1).size(); ++x)
            if (int(keep.at[x].size()) != a.level(k).heights[x]) return false;
    }
    return true;
}

CollapsePushout collapse_pushout(const CubeFamily& a, int k, const SubsetSection& keep1,
                                 const SubsetSection& keep2) {
    std::string why;
    auto b1 = try_collapse(a, k, keep1, &why);
    require(b1.has_value(), "collapse_pushout: first collapse invalid (" + why + ")");
    auto b2 = try_collapse(a, k, keep2, &why);
    require(b2.has_value(), "collapse_pushout: second collapse invalid (" + why + ")");
    SubsetSection meet;
    meet.at.resize(keep1.at.size());
    for (size_t x = 0; x < keep1.at.size(); ++x)
        std::set_intersection(keep1.at[x].begin(), keep1.at[x].end(), keep2.at[x].begin(),
                              keep2.at[x].end(), std::back_inserter(meet.at[x]));
    auto apex = try_collapse(a, k, meet, &why);
    invariant(apex.has_value(), "collapse_pushout: intersection failed to factor (" + why + ")");

    auto factor = [&](const CubeFamily& leg, const SubsetSection& keep) {
        // Kept section of the factorizing collapse, in the leg's coordinates.
        SubsetSection s;
        s.at.resize(keep.at.size());
        for (size_t x = 0; x < keep.at.size(); ++x)
            for (size_t j = 0; j < keep.at[x].size(); ++j)
                if (std::binary_search(meet.at[x].begin(), meet.at[x].end(), keep.at[x][j]))
                    s.at[x].push_back(2 * int(j) + 1);
        std::string w2;
        auto res = try_collapse(leg, k, s, &w2);
        invariant(res.has_value(), "collapse_pushout: factorization failed (" + w2 + ")");
        invariant(res->result == apex->result, "collapse_pushout: legs do not meet at the apex");
        return res->witness;
    };
    CollapsePushout out;
    out.apex = apex->result;
    out.from_b1 = factor(b1->result, keep1);
    out.from_b2 = factor(b2->result, keep2);
    return out;
}

AppliedCollapse pullback_collapse(const CubeFamily& c1, const AppliedCollapse& mu,
                                  const SubsetSection& lambda_keep, int l) {
    const int k = mu.witness.level;
    require(k < l, "pullback_collapse: level ordering violated");
    const PosetMap& h = mu.level_map[l - 1];  // G^{l-1}(C1) -> G^{l-1}(C2)
    SubsetSection pulled;
    pulled.at.resize(h.dom.size());
    for (int u = 0; u < h.dom.size(); ++u) pulled.at[u] = lambda_keep.at[h(u)];
    std::string why;
    auto res = try_collapse(c1, l, pulled, &why);
    invariant(res.has_value(), "pullback_collapse: pulled collapse invalid (" + why + ")");
    return *res;
}

PushforwardResult pushforward_collapse(const CubeFamily& c1, const AppliedCollapse& mu,
                                       const SubsetSection& lambda_keep, int l) {
    (void)c1;
    const int k = mu.witness.level;
    require(k < l, "pushforward_collapse: level ordering violated");
    const PosetMap& h = mu.level_map[l - 1];
    require(h.surjective() && has_lifts(h),
            "pushforward_collapse: base change must be surjective with lifts");
    PushforwardResult out;
    out.pushed_section.at.assign(h.cod.size(), {});
    for (int y = 0; y < h.cod.size(); ++y) {
        bool started = false;
        std::vector<int> acc;
        for (int u = 0; u < h.dom.size(); ++u) {
            if (h(u) != y) continue;
            if (!started) {
                acc = lambda_keep.at[u];
                started = true;
            } else {
                std::vector<int> tmp;
                std::set_intersection(acc.begin(), acc.end(), lambda_keep.at[u].begin(),
                                      lambda_keep.at[u].end(), std::back_inserter(tmp));
                acc = std::move(tmp);
            }
        }
        out.pushed_section.at[y] = std::move(acc);
    }
    std::string why;
    auto pushed = try_collapse(mu.result, l, out.pushed_section, &why);
    invariant(pushed.has_value(), "pushforward_collapse: pushed collapse invalid (" + why + ")");
    out.pushed = *pushed;
    // rho: the pullback of the pushforward factors through lambda; its kept
    // section lives on lambda's target fibers (positions inside lambda's kept
    // set).
    out.rho_section.at.resize(h.dom.size());
    for (int u = 0; u < h.dom.size(); ++u) {
        const auto& fine = lambda_keep.at[u];
        const auto& coarse = out.pushed_section.at[h(u)];
        for (size_t j = 0; j < fine.size(); ++j)
            if (std::binary_search(coarse.begin(), coarse.end(), fine[j]))
                out.rho_section.at[u].push_back(2 * int(j) + 1);
    }
    return out;
}

MultiLevelMap multilevel_from_sequence(const CollapseSequence& seq) {
    require(!seq.families.empty(), "multilevel_from_sequence: empty sequence");
    MultiLevelMap acc = MultiLevelMap::identity(seq.families.front());
    for (size_t i = 0; i < seq.steps.size(); ++i) {
        const CubeFamily& dom = seq.families[i];
        auto applied =
            try_collapse(dom, seq.steps[i].level, section_of_injection(seq.steps[i].witness));
        invariant(applied.has_value() && applied->result == seq.families[i + 1],
                  "multilevel_from_sequence: invalid step");
        MultiLevelMap step;
        step.dom = dom;
        step.cod = applied->result;
        step.level = applied->level_map;
        acc = acc.then(step);
    }
    return acc;
}

CollapseSequence sequence_from_multilevel(const MultiLevelMap& s) {
    MultiLevelClass cls = check_multilevel_base_change(s);
    require(cls.valid && cls.collapse,
            "sequence_from_multilevel: not a multi-level collapse (" + cls.why + ")");
    const int n = s.dom.dim();
    CollapseSequence out;
    out.families.push_back(s.dom);
    CubeFamily cur = s.dom;
    for (int k = n; k >= 1; --k) {
        // The composite fiber map at level k is the level-k step's collapse
        // functor; kept heights are singular heights with singular image.
        const TotalPoset& dt = s.dom.total_info(k);
        const TotalPoset& ct = s.cod.total_info(k);
        SubsetSection keep;
        keep.at.resize(s.dom.total(k - 1).size());
        for (int i = 0; i < dt.poset.size(); ++i)
            if (is_sing(dt.value[i]) && is_sing(ct.value[s.level[k](i)]))
                keep.at[dt.parent[i]].push_back(dt.value[i]);
        std::string why;
        auto applied = try_collapse(cur, k, keep, &why);
        invariant(applied.has_value(), "sequence_from_multilevel: step invalid (" + why + ")");
        out.steps.push_back(applied->witness);
        cur = applied->result;
        out.families.push_back(cur);
    }
    invariant(cur == s.cod, "sequence_from_multilevel: recomposition mismatch");
    return out;
}

namespace {

Poset product_with_arrow(const Poset& x) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    auto id = [&](int xi, int i) { return 2 * xi + i; };
    for (int xi = 0; xi < x.size(); ++xi) {
        names.push_back("0|" + x.name(xi));
        names.push_back("1|" + x.name(xi));
    }
    for (int xi = 0; xi < x.size(); ++xi) arrows.push_back({id(xi, 0), id(xi, 1)});
    for (auto [a, b] : x.strict_arrows())
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j) arrows.push_back({id(a, i), id(b, j)});
    return Poset(std::move(names), arrows);
}

}  // namespace

CubeFamily collapse_limit(const CubeFamily& a, const SubsetSection& keep) {
    require(a.dim() == 1, "collapse_limit: expects a labelled interval family");
    std::string why;
    auto applied = try_collapse(a, 1, keep, &why);
    require(applied.has_value(), "collapse_limit: invalid collapse (" + why + ")");
    const CubeFamily& b = applied->result;
    const Poset& x = a.base();
    Poset base = product_with_arrow(x);
    auto id = [&](int xi, int i) { return 2 * xi + i; };

    Injection inj = injection_of_section(x, a.level(1), keep);
    SiFamily lvl;
    lvl.heights.resize(base.size());
    for (int xi = 0; xi < x.size(); ++xi) {
        lvl.heights[id(xi, 0)] = b.level(1).heights[xi];
        lvl.heights[id(xi, 1)] = a.level(1).heights[xi];
    }
    for (auto [u, v] : base.strict_arrows()) {
        int xu = u / 2, iu = u % 2, xv = v / 2, iv = v % 2;
        if (iu == 0 && iv == 0) lvl.maps.push_back(b.level(1).at(x, xu, xv));
        else if (iu == 1 && iv == 1) lvl.maps.push_back(a.level(1).at(x, xu, xv));
        else  // mixed: lambda_v after B(xu -> xv)
            lvl.maps.push_back(b.level(1).at(x, xu, xv).then(inj.component[xv]));
    }
    TotalPoset t = build_total(base, lvl);
    // Extended collapse E: slice 0 includes into G(B) as the identity, slice 1
    // maps by the family collapse functor.
    const PosetMap& s = applied->level_map[1];
    std::vector<int> e(t.poset.size());
    for (int i = 0; i < t.poset.size(); ++i) {
        int xi = t.parent[i] / 2, slice = t.parent[i] % 2;
        if (slice == 0) e[i] = b.total_info(1).at(xi, t.value[i]);
        else e[i] = s(a.total_info(1).at(xi, t.value[i]));
    }
    std::vector<int> obj(t.poset.size());
    for (int i = 0; i < t.poset.size(); ++i) obj[i] = b.obj_label(e[i]);
    std::vector<int> arr;
    for (auto [u, v] : t.poset.strict_arrows()) {
        if (e[u] == e[v]) arr.push_back(b.cat()->identity(b.obj_label(e[u])));
        else arr.push_back(b.arrow_label(e[u], e[v]));
    }
    return CubeFamily::make(base, {lvl}, a.cat(), std::move(obj), std::move(arr));
}

CollapseLimitReading read_collapse_limit(const CubeFamily& c) {
    require(c.dim() == 1, "read_collapse_limit: expects a labelled interval family");
    const Poset& base = c.base();
    require(base.size() % 2 == 0, "read_collapse_limit: base is not a product with [2]");
    const int nx = base.size() / 2;
    std::vector<std::string> xnames;
    for (int xi = 0; xi < nx; ++xi) {
        const std::string& n0 = base.name(2 * xi);
        const std::string& n1 = base.name(2 * xi + 1);
        require(n0.rfind("0|", 0) == 0 && n1.rfind("1|", 0) == 0 && n0.substr(2) == n1.substr(2),
                "read_collapse_limit: base is not a product with [2]");
        xnames.push_back(n0.substr(2));
    }
    std::vector<std::pair<int, int>> xarrows;
    for (int a = 0; a < nx; ++a)
        for (int b = 0; b < nx; ++b)
            if (a != b && base.lt(2 * a, 2 * b)) xarrows.push_back({a, b});
    Poset x(xnames, xarrows);

    std::vector<int> to_src, to_tgt, ident(nx);
    for (int xi = 0; xi < nx; ++xi) to_src.push_back(2 * xi + 1);
    for (int xi = 0; xi < nx; ++xi) to_tgt.push_back(2 * xi);
    for (int i = 0; i < nx; ++i) ident[i] = i;
    CollapseLimitReading out;
    out.source = with_base(restrict_family(c, to_src).family, x, ident);
    out.target = with_base(restrict_family(c, to_tgt).family, x, ident);
    // The injection is the mixed map over (x,0) -> (x,1); it must be monic.
    out.keep.at.resize(nx);
    for (int xi = 0; xi < nx; ++xi) {
        SiMap m = c.level(1).between(base, 2 * xi, 2 * xi + 1);
        require(m.injective(), "read_collapse_limit: mixed map not injective");
        out.keep.at[xi] = m.image();
    }
    // Check the extended-collapse labelling condition by rebuilding.
    CubeFamily rebuilt = collapse_limit(out.source, out.keep);
    require(rebuilt == c, "read_collapse_limit: labelling is not an extended collapse");
    return out;
}

}  // namespace cubecat
