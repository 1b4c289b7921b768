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

#include "cubecat/embed.hpp"

#include <algorithm>
#include <set>

namespace cubecat {

bool is_open_section(const Poset& base, const SiFamily& fam, const OpenSection& q) {
    if (int(q.at.size()) != base.size()) return false;
    for (int x = 0; x < base.size(); ++x)
        if (!is_reg(q.at[x]) || q.at[x] < 0 || q.at[x] > 2 * fam.heights[x]) return false;
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        auto [x, y] = arrows[i];
        if (!realise_at(fam.maps[i], q.at[x], q.at[y])) return false;
    }
    return true;
}

OpenSection source_section(const Poset& base, const SiFamily& fam) {
    (void)fam;
    OpenSection q;
    q.at.assign(base.size(), 0);
    return q;
}

OpenSection target_section(const Poset& base, const SiFamily& fam) {
    (void)base;
    OpenSection q;
    for (int h : fam.heights) q.at.push_back(2 * h);
    return q;
}

FamilyEmbedding family_embedding(const Poset& base, const SiFamily& fam, const EndpointPair& e,
                                 const TotalPoset& parent_total) {
    require(is_open_section(base, fam, e.lo) && is_open_section(base, fam, e.hi),
            "family_embedding: endpoints must be open sections (even, functorial)");
    for (int x = 0; x < base.size(); ++x)
        require(e.lo.at[x] <= e.hi.at[x], "family_embedding: endpoints crossing");
    FamilyEmbedding out;
    for (int x = 0; x < base.size(); ++x)
        out.subfamily.heights.push_back((e.hi.at[x] - e.lo.at[x]) / 2);
    const auto& arrows = base.strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i) {
        auto [x, y] = arrows[i];
        std::vector<int> s;
        for (int c = 1; c <= 2 * out.subfamily.heights[x] - 1; c += 2)
            s.push_back(fam.maps[i](c + e.lo.at[x]) - e.lo.at[y]);
        out.subfamily.maps.push_back(
            SiMap(out.subfamily.heights[x], out.subfamily.heights[y], std::move(s)));
    }
    TotalPoset sub_total = build_total(base, out.subfamily);
    std::vector<int> obj(sub_total.poset.size());
    for (int i = 0; i < sub_total.poset.size(); ++i)
        obj[i] =
            parent_total.at(sub_total.parent[i], sub_total.value[i] + e.lo.at[sub_total.parent[i]]);
    out.j = PosetMap(sub_total.poset, parent_total.poset, std::move(obj));
    return out;
}

bool is_embedding(const Embedding& e) {
    MultiLevelClass c = check_multilevel_base_change(e);
    return c.valid && c.embedding;
}

Embedding k_level_embedding(const CubeFamily& a, int k, const EndpointPair& e) {
    require(k >= 1 && k <= a.dim(), "k_level_embedding: level out of range");
    const Poset& kbase = a.total(k - 1);
    FamilyEmbedding fe = family_embedding(kbase, a.level(k), e, a.total_info(k));
    PullbackResult pulled = pullback_family(level_labelling(a, k), fe.j);
    std::vector<SiFamily> levels(a.levels().begin(), a.levels().begin() + (k - 1));
    levels.push_back(fe.subfamily);
    for (const auto& l : pulled.family.levels()) levels.push_back(l);
    Embedding out;
    out.dom = CubeFamily::make(a.base(), std::move(levels), a.cat(), pulled.family.obj_labels(),
                               pulled.family.arrow_labels());
    out.cod = a;
    for (int l = 0; l < k; ++l) out.level.push_back(PosetMap::identity(a.total(l)));
    for (int i = 0; i <= a.dim() - k; ++i) {
        // pulled.level_map[i] lands in a.total(k+i); its domain poset equals
        // out.dom.total(k+i) by canonical construction.
        const PosetMap& m = pulled.level_map[i];
        out.level.push_back(PosetMap(out.dom.total(k + i), a.total(k + i), m.obj));
    }
    invariant(is_embedding(out), "k_level_embedding: produced an invalid embedding");
    return out;
}

Embedding restriction_embedding(const CubeFamily& a, const std::vector<int>& base_objects) {
    PullbackResult r = restrict_family(a, base_objects);
    Embedding out;
    out.dom = r.family;
    out.cod = a;
    for (int l = 0; l <= a.dim(); ++l)
        out.level.push_back(PosetMap(out.dom.total(l), a.total(l), r.level_map[l].obj));
    invariant(is_embedding(out), "restriction_embedding: produced an invalid embedding");
    return out;
}

std::vector<Embedding> decompose_embedding(const Embedding& theta) {
    require(is_embedding(theta), "decompose_embedding: not an embedding");
    const int n = theta.dom.dim();
    const CubeFamily& a = theta.cod;
    // Intermediates C_k: the subfamily's levels 1..k with the rest of the
    // parent pulled back along theta^k; C_n is the subfamily, C_0 the
    // pullback of the parent along theta^0. Steps run level n down to the
    // base restriction (application order).
    std::vector<Embedding> parts;
    CubeFamily cur = theta.dom;
    std::vector<PosetMap> cur_into_a = theta.level;
    for (int k = n; k >= 1; --k) {
        PosetMap hk(cur.total(k - 1), a.total(k - 1), cur_into_a[k - 1].obj);
        PullbackResult pulled = pullback_family(level_labelling(a, k - 1), hk);
        CubeFamily target = repack(cur, k - 1, pulled.family);
        // Window of theta inside target's level-k fibers: images of the
        // source and target sections.
        EndpointPair e;
        e.lo.at.resize(cur.total(k - 1).size());
        e.hi.at.resize(cur.total(k - 1).size());
        const TotalPoset& bt = cur.total_info(k);
        const TotalPoset& at = a.total_info(k);
        for (int y = 0; y < cur.total(k - 1).size(); ++y) {
            int h = cur.level(k).heights[y];
            e.lo.at[y] = at.value[cur_into_a[k](bt.at(y, 0))];
            e.hi.at[y] = at.value[cur_into_a[k](bt.at(y, 2 * h))];
        }
        Embedding step = k_level_embedding(target, k, e);
        invariant(step.dom == cur, "decompose_embedding: window does not recover the subfamily");
        parts.push_back(step);
        std::vector<PosetMap> next;
        for (int l = 0; l < k - 1; ++l)
            next.push_back(PosetMap(target.total(l), a.total(l), cur_into_a[l].obj));
        for (int l = k - 1; l <= n; ++l)
            next.push_back(PosetMap(target.total(l), a.total(l), pulled.level_map[l - (k - 1)].obj));
        cur = target;
        cur_into_a = next;
    }
    Embedding last;
    last.dom = cur;
    last.cod = a;
    last.level = cur_into_a;
    invariant(is_embedding(last), "decompose_embedding: base factor invalid");
    parts.push_back(last);
    return parts;
}

FactorResult factor_embedding(const Embedding& phi, const Embedding& theta) {
    require(is_embedding(phi) && is_embedding(theta),
            "factor_embedding: inputs must be embeddings");
    require(phi.cod == theta.cod, "factor_embedding: different parent families");
    const int n = phi.cod.dim();
    FactorResult out;
    // Containment at the top level decides; the lower levels follow and are
    // asserted during construction.
    std::set<int> top_image(theta.level[n].obj.begin(), theta.level[n].obj.end());
    for (int u = 0; u < phi.dom.total(n).size(); ++u)
        if (!top_image.count(phi.level[n](u))) {
            out.witness = phi.level[n](u);
            return out;
        }
    Embedding chi;
    chi.dom = phi.dom;
    chi.cod = theta.dom;
    for (int l = 0; l <= n; ++l) {
        std::vector<int> obj(phi.dom.total(l).size(), -1);
        for (int u = 0; u < phi.dom.total(l).size(); ++u) {
            int img = phi.level[l](u);
            for (int v = 0; v < theta.dom.total(l).size(); ++v)
                if (theta.level[l](v) == img) {
                    obj[u] = v;
                    break;
                }
            invariant(obj[u] >= 0, "factor_embedding: lower-level containment failed");
        }
        chi.level.push_back(PosetMap(phi.dom.total(l), theta.dom.total(l), std::move(obj)));
    }
    invariant(is_embedding(chi), "factor_embedding: factor is not an embedding");
    out.factor = std::move(chi);
    return out;
}

MinimalNeighbourhood minimal_neighbourhood(const CubeFamily& a, int p) {
    const int n = a.dim();
    Region r = region_info(a, p);
    Embedding acc = restriction_embedding(a, a.base().below(r.projections[0]));
    CubeFamily cur = acc.dom;
    int tracked = -1;
    for (int u = 0; u < cur.total(n).size(); ++u)
        if (acc.level[n](u) == p) tracked = u;
    invariant(tracked >= 0, "minimal_neighbourhood: lost the point in the base restriction");

    for (int k = 1; k <= n; ++k) {
        Region cr = region_info(cur, tracked);
        int pk_val = cur.total_info(k).value[cr.projections[k]];
        int pk1 = cr.projections[k - 1];
        const Poset& kbase = cur.total(k - 1);
        const SiFamily& fam = cur.level(k);
        // Minimal endpoints around the projection of p: every base object of
        // the current family lies below p^{k-1}.
        EndpointPair e;
        e.lo.at.resize(kbase.size());
        e.hi.at.resize(kbase.size());
        for (int y = 0; y < kbase.size(); ++y) {
            RegMap g = regular_dual(fam.at(kbase, y, pk1));
            if (is_sing(pk_val)) {
                e.lo.at[y] = g(pk_val - 1);
                e.hi.at[y] = g(pk_val + 1);
            } else {
                e.lo.at[y] = g(pk_val);
                e.hi.at[y] = g(pk_val);
            }
        }
        Embedding step = k_level_embedding(cur, k, e);
        int next = -1;
        for (int u = 0; u < step.dom.total(n).size(); ++u)
            if (step.level[n](u) == tracked) next = u;
        invariant(next >= 0, "minimal_neighbourhood: lost the point at level " + std::to_string(k));
        tracked = next;
        cur = step.dom;
        acc = step.then(acc);
    }
    MinimalNeighbourhood out;
    out.family = cur;
    out.iota = acc;
    out.point = tracked;
    return out;
}

RestrictedCollapse restrict_collapse(const Embedding& theta, const MultiLevelMap& coll) {
    require(is_embedding(theta), "restrict_collapse: not an embedding");
    require(theta.cod == coll.dom, "restrict_collapse: collapse must start at the parent family");
    CollapseSequence seq = sequence_from_multilevel(coll);
    const int n = theta.dom.dim();

    Embedding cur_theta = theta;
    MultiLevelMap acc = MultiLevelMap::identity(theta.dom);
    for (size_t i = 0; i < seq.steps.size(); ++i) {
        const int k = seq.steps[i].level;
        const CubeFamily& a_side = seq.families[i];
        SubsetSection fa = section_of_injection(seq.steps[i].witness);
        auto a_applied = try_collapse(a_side, k, fa);
        invariant(a_applied.has_value(), "restrict_collapse: replaying parent step failed");

        const CubeFamily& b_side = cur_theta.dom;
        SubsetSection fb;
        fb.at.resize(b_side.total(k - 1).size());
        const TotalPoset& bt = b_side.total_info(k);
        const TotalPoset& at = a_side.total_info(k);
        for (int y = 0; y < b_side.total(k - 1).size(); ++y)
            for (int c = 1; c <= 2 * b_side.level(k).heights[y] - 1; c += 2) {
                int img_val = at.value[cur_theta.level[k](bt.at(y, c))];
                int ay = cur_theta.level[k - 1](y);
                if (std::binary_search(fa.at[ay].begin(), fa.at[ay].end(), img_val))
                    fb.at[y].push_back(c);
            }
        std::string why;
        auto b_applied = try_collapse(b_side, k, fb, &why);
        invariant(b_applied.has_value(),
                  "restrict_collapse: restricted step invalid (" + why + ")");

        MultiLevelMap step;
        step.dom = b_side;
        step.cod = b_applied->result;
        step.level = b_applied->level_map;
        acc = acc.then(step);

        // Collapsed embedding: factor through the surjective step maps.
        Embedding next;
        next.dom = b_applied->result;
        next.cod = a_applied->result;
        for (int l = 0; l <= n; ++l) {
            std::vector<int> obj(next.dom.total(l).size(), -1);
            for (int u = 0; u < b_side.total(l).size(); ++u) {
                int v = b_applied->level_map[l](u);
                int img = a_applied->level_map[l](cur_theta.level[l](u));
                invariant(obj[v] == -1 || obj[v] == img,
                          "restrict_collapse: collapsed embedding ill-defined");
                obj[v] = img;
            }
            next.level.push_back(PosetMap(next.dom.total(l), next.cod.total(l), std::move(obj)));
        }
        invariant(is_embedding(next), "restrict_collapse: collapsed map is not an embedding");
        cur_theta = next;
    }
    RestrictedCollapse out;
    out.restricted = acc;
    out.collapsed = cur_theta;
    return out;
}

}  // namespace cubecat
