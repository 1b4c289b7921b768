#include "cubecat/compose.hpp"
#include "cubecat/globe.hpp"
#include "doctest.h"
#include "testgen.hpp"

using namespace cubecat;
using namespace cubecat::testgen;

TEST_CASE("terminal globes: counts, globularity, normalization") {
    for (int n = 0; n <= 3; ++n) {
        TerminalGlobe g = terminal_globe(n);
        CHECK(g.cube.dim() == n);
        CHECK(g.cube.cat()->objects() == 2 * n + 1);
        int expect = 1;
        for (int i = 0; i < n; ++i) expect *= 3;
        CHECK(g.cube.total(n).size() == expect);
        CHECK(is_globular(g.cube));
        CHECK(is_globular(g.cube, true));
        CHECK(is_normalized(g.cube));
        // every fiber is the terminal interval
        for (int k = 1; k <= n; ++k)
            for (int h : g.cube.level(k).heights) CHECK(h == 1);
    }
    CHECK(terminal_globe(0).cube.cat()->obj_name(0) == "id0");
}

TEST_CASE("terminal globe vertex is minimal with full codim") {
    for (int n = 1; n <= 3; ++n) {
        TerminalGlobe g = terminal_globe(n);
        int top_label = 2 * n;
        int vertex = -1;
        for (int p = 0; p < g.cube.total(n).size(); ++p)
            if (g.cube.obj_label(p) == top_label) {
                CHECK(vertex == -1);
                vertex = p;
            }
        REQUIRE(vertex >= 0);
        CHECK(region_info(g.cube, vertex).codim == n);
        MinimalNeighbourhood mn = minimal_neighbourhood(g.cube, vertex);
        CHECK(mn.family == g.cube);
    }
}

TEST_CASE("globular source and target of terminal globes") {
    for (int n = 1; n <= 3; ++n) {
        TerminalGlobe g = terminal_globe(n);
        CubeFamily s = globular_src(g.cube);
        CubeFamily t = globular_tgt(g.cube);
        CHECK(s.dim() == n - 1);
        // source and target are the relabelled terminal (n-1)-globes
        GlobularContext ctx = make_context(g.globular_set);
        CHECK(s == leaf_realisation(ctx, n - 1, 0));
        CHECK(t == leaf_realisation(ctx, n - 1, 1));
    }
}

TEST_CASE("double cone: forced 1-cube and characterizing properties") {
    // S = T = point labelled a, arrow a -> g: |S ->g T| is the D1 cube a,g,a.
    auto cat = std::make_shared<FiniteCategory>(
        FiniteCategory::from_poset(Poset({"a", "g"}, {{0, 1}})));
    CubeFamily pt = CubeFamily::zero(Poset::point(), cat, {0}, {});
    CubeFamily cone = double_cone(pt, pt, cat, 1);
    CHECK(cone.dim() == 1);
    CHECK(cone.level(1).heights[0] == 1);
    CHECK(cone.obj_label(cone.total_info(1).at(0, 0)) == 0);
    CHECK(cone.obj_label(cone.total_info(1).at(0, 1)) == 1);
    CHECK(cone.obj_label(cone.total_info(1).at(0, 2)) == 0);
    CHECK(is_globular(cone));
    CHECK(is_normalized(cone));
    CHECK(globular_src(cone) == pt);
    CHECK(globular_tgt(cone) == pt);
    // vertex minimality
    int vertex = cone.total_info(1).at(0, 1);
    CHECK(region_info(cone, vertex).codim == 1);
    CHECK(minimal_neighbourhood(cone, vertex).family == cone);
}

TEST_CASE("double cone of relabelled terminal boundary reproduces the globe") {
    for (int n = 1; n <= 3; ++n) {
        TerminalGlobe g = terminal_globe(n);
        TerminalGlobe prev = terminal_globe(n - 1);
        GlobularMap sigma{&prev.globular_set, &g.globular_set, {}};
        GlobularMap tau{&prev.globular_set, &g.globular_set, {}};
        sigma.at.resize(n);
        tau.at.resize(n);
        for (int k = 0; k + 1 < n; ++k) {
            sigma.at[k] = {0, 1};
            tau.at[k] = {0, 1};
        }
        sigma.at[n - 1] = {0};
        tau.at[n - 1] = {1};
        CatFunctor fs = elements_functor(sigma, prev.cube.cat(), g.cube.cat());
        CatFunctor ft = elements_functor(tau, prev.cube.cat(), g.cube.cat());
        CubeFamily dc = double_cone(relabel(prev.cube, fs), relabel(prev.cube, ft),
                                    g.cube.cat(), 2 * n);
        CHECK(dc == g.cube);
    }
}

TEST_CASE("local and global triviality") {
    // constant family: both
    Rng rng(seed_from_env(41));
    CubeFamily k = random_cube_over_point(rng, 1, 2, 2, 20);
    Poset base = Poset::chain(2);
    PosetMap bang(base, Poset::point(), {0, 0});
    CubeFamily constant = pullback_family(k, bang).family;
    CHECK(is_locally_trivial(constant));
    CHECK(is_globally_trivial(constant));
    CHECK(is_constant(constant));
    // a family whose arrow restriction collapses away: locally trivial, not
    // globally trivial before normalization
    auto cat = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(1)));
    SiFamily lvl;
    lvl.heights = {0, 1};
    lvl.maps = {SiMap(0, 1, {})};
    TotalPoset t = build_total(base, lvl);
    std::vector<int> obj(t.poset.size(), 0), arr(t.poset.strict_arrows().size(), 0);
    CubeFamily loc = CubeFamily::make(base, {lvl}, cat, obj, arr);
    CHECK(is_locally_trivial(loc));
    CHECK(!is_globally_trivial(loc));
    CHECK(!is_normalized(loc));
    // non-collapsible new singular height: not locally trivial
    auto cat2 = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(2)));
    std::vector<int> obj2(t.poset.size());
    for (int i = 0; i < t.poset.size(); ++i)
        obj2[i] = (t.parent[i] == 1 && is_sing(t.value[i])) ? 1 : 0;
    std::vector<int> arr2;
    for (auto [u, v] : t.poset.strict_arrows())
        arr2.push_back(*cat2->unique_arrow(obj2[u], obj2[v]));
    CubeFamily bad = CubeFamily::make(base, {lvl}, cat2, obj2, arr2);
    CHECK(!is_locally_trivial(bad));
}

TEST_CASE("globularity: modes, strict implies boundary, failure case") {
    Rng rng(seed_from_env(42));
    for (int n = 0; n <= 3; ++n) {
        TerminalGlobe g = terminal_globe(n);
        CHECK(is_globular(g.cube));
        CHECK(is_globular(g.cube, true));
    }
    // any 1-cube over the point is globular
    for (int it = 0; it < 10; ++it) {
        CubeFamily c = random_cube_over_point(rng, 1, 3, 3, 20);
        CHECK(is_globular(c));
    }
    // 2-cube with differing labels along a regular row: strict fails
    auto cat = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(2)));
    SiFamily l1;
    l1.heights = {1};
    TotalPoset t1 = build_total(Poset::point(), l1);
    SiFamily l2;
    l2.heights = {0, 0, 0};
    l2.maps = {SiMap(0, 0, {}), SiMap(0, 0, {})};
    TotalPoset t2 = build_total(t1.poset, l2);
    // labels: the two regular rows get different labels 0 and 1 at their ends
    std::vector<int> obj(t2.poset.size());
    for (int i = 0; i < t2.poset.size(); ++i) obj[i] = (t2.parent[i] >= 1) ? 1 : 0;
    std::vector<int> arr;
    for (auto [u, v] : t2.poset.strict_arrows()) arr.push_back(*cat->unique_arrow(obj[u], obj[v]));
    CubeFamily c2 = CubeFamily::make(Poset::point(), {l1, l2}, cat, obj, arr);
    CHECK(!is_globular(c2));
}

TEST_CASE("globularity on the nose for normalized globular cubes") {
    Rng rng(seed_from_env(43));
    int done = 0;
    for (int it = 0; it < 400 && done < 60; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2 + rng.below(2), 2, 2, 25);
        CubeFamily nf = normalize(a).nf;
        if (!is_globular(nf)) continue;
        ++done;
        CHECK(is_globular(nf, true));  // strict implies boundary
        CHECK(globular_src(globular_src(nf)) == globular_src(globular_tgt(nf)));
        CHECK(iter_globular_tgt(nf, 2) == globular_tgt(globular_src(nf)));
        // sources/targets of globes are normalized and globular
        CHECK(is_normalized(globular_src(nf)));
        CHECK(is_globular(globular_src(nf)));
    }
    CHECK(done >= 50);
}

TEST_CASE("collapse preserves and reflects globularity") {
    Rng rng(seed_from_env(44));
    int done = 0;
    for (int it = 0; it < 300 && done < 40; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 2, 20);
        bool ga = is_globular(a);
        CubeFamily nf = normalize(a).nf;
        CHECK(is_globular(nf) == ga);
        ++done;
    }
    CHECK(done >= 40);
}

TEST_CASE("adjoin_top on a 0-family and the worked 1-cube") {
    // A a single 0-cube: the cone is a D1-fibered 1-cube with the new label
    // at height 1.
    auto small = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(1)));
    auto big = std::make_shared<FiniteCategory>(
        FiniteCategory::from_poset(Poset({"0", "T"}, {{0, 1}})));
    CubeFamily a = CubeFamily::zero(Poset::point(), small, {0}, {});
    ConeResult cone = adjoin_top(a, big, 1);
    CHECK(cone.family.dim() == 0);
    CHECK(cone.family.base().size() == 2);
    CHECK(cone.family.obj_label(cone.vertex) == 1);
    // one dimension up: over the empty poset the cone is the vertex alone
    CubeFamily empty = CubeFamily::zero(Poset({}, {}), small, {}, {});
    ConeResult ec = adjoin_top(empty, big, 1);
    CHECK(ec.family.base().size() == 1);
}

TEST_CASE("subfamilies inherit strict globularity") {
    Rng rng(seed_from_env(45));
    int done = 0;
    for (int it = 0; it < 300 && done < 30; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 2, 20);
        CubeFamily nf = normalize(a).nf;
        if (!is_globular(nf)) continue;
        int p = rng.below(nf.total(2).size());
        MinimalNeighbourhood mn = minimal_neighbourhood(nf, p);
        CHECK(is_globular(mn.family));
        ++done;
    }
    CHECK(done >= 30);
}
