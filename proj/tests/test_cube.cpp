#include "cubecat/cube.hpp"
#include "doctest.h"
#include "testgen.hpp"

using namespace cubecat;
using namespace cubecat::testgen;

TEST_CASE("level totals and unpack/repack round trips") {
    Rng rng(seed_from_env(21));
    for (int it = 0; it < 40; ++it) {
        Poset base = rng.coin() ? Poset::point() : random_poset(rng, 2, 2);
        CubeFamily a = random_cube(rng, base, 1 + rng.below(3), 2, 3, 40);
        CHECK(a.total(0) == a.base());
        for (int k = 0; k <= a.dim(); ++k) {
            CubeFamily upper = level_labelling(a, k);
            CHECK(repack(a, k, upper) == a);
        }
        // connectedness of totals over connected bases
        if (a.base().connected())
            for (int k = 1; k <= a.dim(); ++k) CHECK(a.total(k).connected());
    }
}

TEST_CASE("identity cube") {
    Rng rng(seed_from_env(22));
    CubeFamily a = random_cube_over_point(rng, 2, 2, 3, 40);
    CHECK(identity_cube(a, 0) == a);
    CubeFamily id = identity_cube(a);
    CHECK(id.dim() == 3);
    for (int x = 0; x < id.base().size(); ++x) CHECK(id.level(1).heights[x] == 0);
    // unpack at level 1 recovers a up to the canonical base identification
    CubeFamily upper = level_labelling(id, 1);
    CHECK(upper.dim() == a.dim());
    CHECK(upper.total(a.dim()).size() == a.total(a.dim()).size());
    CHECK(upper.obj_labels() == a.obj_labels());
    // all regions of Id^n of a 0-cube are regular
    CubeFamily pt = random_cube_over_point(rng, 0, 0, 2);
    CubeFamily idn = identity_cube(pt, 3);
    for (int p = 0; p < idn.total(3).size(); ++p) CHECK(region_info(idn, p).codim == 0);
}

TEST_CASE("region info: codim two ways") {
    Rng rng(seed_from_env(23));
    for (int it = 0; it < 20; ++it) {
        CubeFamily a = random_cube_over_point(rng, 2, 2, 3, 40);
        for (int p = 0; p < a.total(2).size(); ++p) {
            Region r = region_info(a, p);
            int parity_walk = 0, q = p;
            for (int k = 2; k >= 1; --k) {
                parity_walk += a.total_info(k).value[q] & 1;
                q = a.total_info(k).parent[q];
            }
            CHECK(r.codim == parity_walk);
            CHECK(r.projections[0] == 0);
        }
    }
}

TEST_CASE("relabel: identity, collapse-to-point, compositionality") {
    Rng rng(seed_from_env(24));
    CubeFamily a = random_cube_over_point(rng, 2, 2, 3, 40);
    CatFunctor id = CatFunctor::identity(a.cat());
    CHECK(relabel(a, id) == a);
    // collapse all labels to one object of a discrete category
    auto one = std::make_shared<FiniteCategory>(FiniteCategory::discrete({"*"}));
    std::vector<int> obj(a.cat()->objects(), 0), arr(a.cat()->arrow_count(), 0);
    CatFunctor bang(a.cat(), one, obj, arr);
    CubeFamily constant = relabel(a, bang);
    for (int p = 0; p < constant.total(2).size(); ++p) CHECK(constant.obj_label(p) == 0);
    CHECK(relabel(relabel(a, id), bang) == relabel(a, id.then(bang)));
}

TEST_CASE("pullback composes; point pullback restricts") {
    Rng rng(seed_from_env(25));
    for (int it = 0; it < 20; ++it) {
        Poset x = random_poset(rng, 3, 3);
        CubeFamily a = random_cube(rng, x, 2, 2, 3, 60);
        CHECK(pullback_family(a, PosetMap::identity(x)).family == a);
        // composite of base changes
        Poset y = random_poset(rng, 2, 1);
        std::vector<int> ho;
        for (int i = 0; i < y.size(); ++i) ho.push_back(rng.below(x.size()));
        std::optional<PosetMap> h;
        try {
            h.emplace(y, x, ho);
        } catch (const check_error&) {
            continue;
        }
        PosetMap k(Poset::point(), y, {0});
        CubeFamily ah = pullback_family(a, *h).family;
        CHECK(pullback_family(ah, k).family == pullback_family(a, k.then(*h)).family);
    }
}

TEST_CASE("multi-level base change: identity and perturbed square") {
    Rng rng(seed_from_env(26));
    CubeFamily a = random_cube_over_point(rng, 2, 2, 3, 40);
    MultiLevelMap id = MultiLevelMap::identity(a);
    MultiLevelClass c = check_multilevel_base_change(id);
    CHECK(c.valid);
    CHECK(c.collapse);
    CHECK(c.embedding);
    auto steps = decompose_multilevel(id);
    CHECK(int(steps.size()) == a.dim() + 1);
    MultiLevelMap re = steps.front();
    for (size_t i = 1; i < steps.size(); ++i) re = re.then(steps[i]);
    for (int l = 0; l <= a.dim(); ++l) CHECK(re.level[l].obj == id.level[l].obj);
}
