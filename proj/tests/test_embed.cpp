#include <set>

#include "cubecat/compose.hpp"
#include "cubecat/embed.hpp"
#include "doctest.h"
#include "testgen.hpp"

using namespace cubecat;
using namespace cubecat::testgen;

namespace {

// All endpoint-delimited subfamilies at one level (for the oracle).
std::vector<EndpointPair> all_endpoints(const Poset& base, const SiFamily& fam) {
    std::vector<EndpointPair> out;
    std::vector<std::vector<int>> opts(base.size());
    for (int x = 0; x < base.size(); ++x)
        for (int v = 0; v <= 2 * fam.heights[x]; v += 2) opts[x].push_back(v);
    std::vector<size_t> lo(base.size(), 0), hi(base.size(), 0);
    auto valid = [&](const std::vector<size_t>& pick, OpenSection& q) {
        q.at.resize(base.size());
        for (int x = 0; x < base.size(); ++x) q.at[x] = opts[x][pick[x]];
        return is_open_section(base, fam, q);
    };
    std::vector<size_t> pick_lo(base.size(), 0);
    while (true) {
        OpenSection qlo;
        if (valid(pick_lo, qlo)) {
            std::vector<size_t> pick_hi(base.size(), 0);
            while (true) {
                OpenSection qhi;
                if (valid(pick_hi, qhi)) {
                    bool leq = true;
                    for (int x = 0; x < base.size(); ++x)
                        if (qlo.at[x] > qhi.at[x]) leq = false;
                    if (leq) out.push_back({qlo, qhi});
                }
                size_t i = 0;
                while (i < pick_hi.size() && ++pick_hi[i] == opts[i].size()) pick_hi[i++] = 0;
                if (i == pick_hi.size()) break;
            }
        }
        size_t i = 0;
        while (i < pick_lo.size() && ++pick_lo[i] == opts[i].size()) pick_lo[i++] = 0;
        if (i == pick_lo.size()) break;
    }
    return out;
}

// Oracle: smallest endpoint-delimited subfamily (iterating per level) whose
// top image contains the over-poset of p. Enumerates all endpoint choices.
std::optional<CubeFamily> oracle_minimal(const CubeFamily& a, int p) {
    // over-poset of p in the top total
    std::vector<int> over = a.total(a.dim()).below(p);
    std::set<int> over_set(over.begin(), over.end());
    // all base restrictions that are downward closed and contain p^0
    Region r = region_info(a, p);
    std::vector<int> base_objs = a.base().below(r.projections[0]);
    Embedding first = restriction_embedding(a, base_objs);
    // candidate subfamilies: iterate endpoint choices level by level,
    // collecting every chain that still contains the over-poset; return the
    // smallest top size among those that are exactly over-posets at each level.
    std::vector<Embedding> frontier{first};
    for (int k = 1; k <= a.dim(); ++k) {
        std::vector<Embedding> next;
        for (const Embedding& e : frontier)
            for (const EndpointPair& ep : all_endpoints(e.dom.total(k - 1), e.dom.level(k))) {
                Embedding step = k_level_embedding(e.dom, k, ep);
                Embedding comp = step.then(e);
                // must still contain the over-poset of p
                std::set<int> im(comp.level[a.dim()].obj.begin(), comp.level[a.dim()].obj.end());
                bool contains = true;
                for (int q : over)
                    if (!im.count(q)) contains = false;
                if (contains) next.push_back(comp);
            }
        frontier = next;
    }
    std::optional<CubeFamily> best;
    for (const Embedding& e : frontier)
        if (!best || e.dom.total(a.dim()).size() < best->total(a.dim()).size()) best = e.dom;
    return best;
}

}  // namespace

TEST_CASE("open sections and base change commutes with source/target") {
    Rng rng(seed_from_env(61));
    for (int it = 0; it < 30; ++it) {
        Poset base = random_poset(rng, 3, 3);
        SiFamily fam = random_si_family(rng, base, 2);
        OpenSection s = source_section(base, fam), t = target_section(base, fam);
        CHECK(is_open_section(base, fam, s));
        CHECK(is_open_section(base, fam, t));
        // base change along a point inclusion
        int x = rng.below(base.size());
        CHECK(s.at[x] == 0);
        CHECK(t.at[x] == 2 * fam.heights[x]);
    }
}

TEST_CASE("family embedding: image window and degenerate endpoints") {
    Rng rng(seed_from_env(62));
    for (int it = 0; it < 30; ++it) {
        Poset base = random_poset(rng, 2, 1);
        CubeFamily a = random_cube(rng, base, 1, 3, 2, 40);
        const SiFamily& fam = a.level(1);
        EndpointPair full{source_section(base, fam), target_section(base, fam)};
        Embedding e = k_level_embedding(a, 1, full);
        CHECK(e.dom == a);
        // q- = q+ gives all-initial fibers
        EndpointPair degenerate{source_section(base, fam), source_section(base, fam)};
        Embedding d = k_level_embedding(a, 1, degenerate);
        for (int h : d.dom.level(1).heights) CHECK(h == 0);
        // window heights are (hi - lo) / 2
        auto eps = all_endpoints(base, fam);
        if (!eps.empty()) {
            const EndpointPair& ep = eps[rng.below(int(eps.size()))];
            Embedding w = k_level_embedding(a, 1, ep);
            for (int x = 0; x < base.size(); ++x)
                CHECK(w.dom.level(1).heights[x] == (ep.hi.at[x] - ep.lo.at[x]) / 2);
        }
        // crossing endpoints rejected
        if (fam.heights[0] > 0) {
            EndpointPair bad{target_section(base, fam), source_section(base, fam)};
            CHECK_THROWS_AS(k_level_embedding(a, 1, bad), check_error);
        }
    }
}

TEST_CASE("embedding components are fully faithful") {
    Rng rng(seed_from_env(63));
    int done = 0;
    for (int it = 0; it < 100 && done < 20; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 2, 20);
        int p = rng.below(a.total(2).size());
        MinimalNeighbourhood mn = minimal_neighbourhood(a, p);
        ++done;
        for (int l = 0; l <= a.dim(); ++l) {
            const PosetMap& m = mn.iota.level[l];
            for (int u = 0; u < m.dom.size(); ++u)
                for (int v = 0; v < m.dom.size(); ++v)
                    CHECK(m.dom.leq(u, v) == m.cod.leq(m(u), m(v)));
        }
    }
    CHECK(done >= 20);
}

TEST_CASE("decompose and recompose embeddings") {
    Rng rng(seed_from_env(64));
    int done = 0;
    for (int it = 0; it < 200 && done < 25; ++it) {
        CubeFamily a = random_cube_over_point(rng, 1 + rng.below(3), 2, 2, 25);
        int p = rng.below(a.total(a.dim()).size());
        Embedding theta = minimal_neighbourhood(a, p).iota;
        auto parts = decompose_embedding(theta);
        REQUIRE(int(parts.size()) == a.dim() + 1);
        Embedding re = parts.front();
        for (size_t i = 1; i < parts.size(); ++i) re = re.then(parts[i]);
        for (int l = 0; l <= a.dim(); ++l) CHECK(re.level[l].obj == theta.level[l].obj);
        ++done;
        // identity embedding decomposes into trivial factors
        Embedding id;
        id.dom = a;
        id.cod = a;
        for (int l = 0; l <= a.dim(); ++l) id.level.push_back(PosetMap::identity(a.total(l)));
        for (const auto& part : decompose_embedding(id)) CHECK(part.dom == part.cod);
    }
    CHECK(done >= 25);
}

TEST_CASE("factor embedding: identity, containment, and witness") {
    Rng rng(seed_from_env(65));
    int done = 0;
    for (int it = 0; it < 200 && done < 20; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 2, 20);
        int p = rng.below(a.total(2).size());
        Embedding theta = minimal_neighbourhood(a, p).iota;
        // phi = theta factors through itself as the identity
        FactorResult same = factor_embedding(theta, theta);
        REQUIRE(same.factor.has_value());
        for (int l = 0; l <= 2; ++l)
            CHECK(same.factor->level[l].obj == PosetMap::identity(theta.dom.total(l)).obj);
        // phi strictly inside theta: a minimal neighbourhood inside theta's image
        int q = theta.dom.total(2).size() ? theta.level[2](rng.below(theta.dom.total(2).size()))
                                          : p;
        Embedding phi = minimal_neighbourhood(a, q).iota;
        std::set<int> im(theta.level[2].obj.begin(), theta.level[2].obj.end());
        bool inside = true;
        for (int u : phi.level[2].obj)
            if (!im.count(u)) inside = false;
        FactorResult f = factor_embedding(phi, theta);
        CHECK(f.factor.has_value() == inside);
        if (f.factor) {
            Embedding re = f.factor->then(theta);
            for (int l = 0; l <= 2; ++l) CHECK(re.level[l].obj == phi.level[l].obj);
            ++done;
        } else {
            CHECK(f.witness >= 0);
        }
    }
    CHECK(done >= 10);
}

TEST_CASE("side-by-side columns fail to factor with a witness") {
    // two singular columns of a 2-cube with incomparable images
    auto cat = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(2)));
    SiFamily l1;
    l1.heights = {2};
    TotalPoset t1 = build_total(Poset::point(), l1);
    SiFamily l2;
    l2.heights = {0, 1, 0, 1, 0};
    for (auto [u, v] : t1.poset.strict_arrows()) {
        (void)u;
        (void)v;
        l2.maps.push_back(SiMap(0, 1, {}));
    }
    TotalPoset t2 = build_total(t1.poset, l2);
    std::vector<int> obj(t2.poset.size(), 0);
    for (int i = 0; i < t2.poset.size(); ++i)
        if (is_sing(t2.value[i])) obj[i] = 1;
    std::vector<int> arr;
    for (auto [u, v] : t2.poset.strict_arrows()) arr.push_back(*cat->unique_arrow(obj[u], obj[v]));
    CubeFamily a = CubeFamily::make(Poset::point(), {l1, l2}, cat, obj, arr);
    int c1 = -1, c2 = -1;
    for (int i = 0; i < t2.poset.size(); ++i)
        if (is_sing(t2.value[i])) (c1 < 0 ? c1 : c2) = i;
    REQUIRE(c2 >= 0);
    Embedding e1 = minimal_neighbourhood(a, c1).iota;
    Embedding e2 = minimal_neighbourhood(a, c2).iota;
    FactorResult f = factor_embedding(e1, e2);
    CHECK(!f.factor.has_value());
    CHECK(f.witness >= 0);
}

TEST_CASE("minimal neighbourhoods match the endpoint-enumeration oracle") {
    Rng rng(seed_from_env(66));
    int done = 0;
    for (int it = 0; it < 300 && done < 40; ++it) {
        Poset base = rng.coin() ? Poset::point() : random_poset(rng, 2, 1);
        CubeFamily a = random_cube(rng, base, 1 + rng.below(2), 2, 2, 10);
        if (a.total(a.dim()).size() > 10) continue;
        int p = rng.below(a.total(a.dim()).size());
        MinimalNeighbourhood mn = minimal_neighbourhood(a, p);
        auto oracle = oracle_minimal(a, p);
        REQUIRE(oracle.has_value());
        CHECK(mn.family == *oracle);
        // universal property: factors through every downward-closed embedding
        // containing p (here: every minimal neighbourhood of a point above p)
        for (int q = 0; q < a.total(a.dim()).size(); ++q) {
            if (!a.total(a.dim()).leq(p, q)) continue;
            Embedding theta = minimal_neighbourhood(a, q).iota;
            std::set<int> im(theta.level[a.dim()].obj.begin(), theta.level[a.dim()].obj.end());
            if (!im.count(p)) continue;
            if (!is_downward_closed(a.base(), [&] {
                    std::set<int> s(theta.level[0].obj.begin(), theta.level[0].obj.end());
                    return std::vector<int>(s.begin(), s.end());
                }()))
                continue;
            CHECK(factor_embedding(mn.iota, theta).factor.has_value());
        }
        ++done;
    }
    CHECK(done >= 40);
}

TEST_CASE("restrict_collapse: identities and the pullback squares") {
    Rng rng(seed_from_env(67));
    int done = 0;
    for (int it = 0; it < 200 && done < 25; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 2, 25);
        Normalization n = normalize(a);
        int p = rng.below(a.total(2).size());
        Embedding theta = minimal_neighbourhood(a, p).iota;
        RestrictedCollapse rc = restrict_collapse(theta, n.to_nf);
        ++done;
        // squares commute
        for (int l = 0; l <= 2; ++l)
            for (int u = 0; u < theta.dom.total(l).size(); ++u)
                CHECK(rc.collapsed.level[l](rc.restricted.level[l](u)) ==
                      n.to_nf.level[l](theta.level[l](u)));
        // theta identity: restriction is the collapse itself
        Embedding id;
        id.dom = a;
        id.cod = a;
        for (int l = 0; l <= 2; ++l) id.level.push_back(PosetMap::identity(a.total(l)));
        RestrictedCollapse rid = restrict_collapse(id, n.to_nf);
        for (int l = 0; l <= 2; ++l) CHECK(rid.restricted.level[l].obj == n.to_nf.level[l].obj);
        // collapse identity: restriction is the embedding itself
        RestrictedCollapse rcoll = restrict_collapse(theta, MultiLevelMap::identity(a));
        for (int l = 0; l <= 2; ++l) CHECK(rcoll.collapsed.level[l].obj == theta.level[l].obj);
        // normalize(A//p) divides normalize(A): the restricted sequence is an
        // initial segment, and the collapsed embedding is again minimal
        CHECK(normalize(rc.restricted.cod).nf == normalize(theta.dom).nf);
        int q = n.to_nf.level[2](p);
        MinimalNeighbourhood mq = minimal_neighbourhood(n.nf, q);
        CHECK(rc.collapsed.dom == mq.family);
    }
    CHECK(done >= 25);
}
