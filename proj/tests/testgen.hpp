// Shared generators and brute-force oracles for the test suites. The oracles
// here are deliberately independent of the library's search strategies: they
// enumerate, they do not optimize.
#ifndef CUBECAT_TESTS_TESTGEN_HPP
#define CUBECAT_TESTS_TESTGEN_HPP

#include <algorithm>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cubecat/collapse.hpp"
#include "cubecat/cube.hpp"
#include "cubecat/util.hpp"

namespace cubecat::testgen {

inline uint64_t seed_from_env(uint64_t fallback = 0xC0FFEEull) {
    if (const char* s = std::getenv("CUBECAT_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

// Random monotone map of singular heights.
inline SiMap random_simap(Rng& rng, int dom_h, int cod_h) {
    std::vector<int> s;
    int cur = 1;
    for (int i = 0; i < dom_h; ++i) {
        cur = cur + 2 * rng.below((2 * cod_h - 1 - cur) / 2 + 1);
        s.push_back(cur);
    }
    return SiMap(dom_h, cod_h, std::move(s));
}

// Small random poset given as a DAG on `n` objects.
inline Poset random_poset(Rng& rng, int n, int extra_arrows) {
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    std::vector<std::pair<int, int>> arrows;
    for (int e = 0; e < extra_arrows; ++e) {
        int a = rng.below(n), b = rng.below(n);
        if (a < b) arrows.push_back({a, b});
    }
    return Poset(std::move(names), arrows);
}

// Random SI-family over a base: heights then maps, built Hasse-first so that
// functoriality holds by construction (maps on closures are composites along
// a chosen linear extension).
inline SiFamily random_si_family(Rng& rng, const Poset& base, int max_h) {
    std::vector<int> heights;
    for (int x = 0; x < base.size(); ++x) heights.push_back(rng.below(max_h + 1));
    // No SI-morphism exists from a positive-height interval into the initial
    // interval; lift zero heights reachable from positive ones.
    for (bool changed = true; changed;) {
        changed = false;
        for (auto [x, y] : base.strict_arrows())
            if (heights[x] > 0 && heights[y] == 0) {
                heights[y] = 1;
                changed = true;
            }
    }
    // Build maps along a topological order so that composites are consistent:
    // assign maps greedily on all strict arrows via a "potential" trick is
    // fragile; instead pick maps on Hasse arrows and close, retrying on
    // failure.
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::map<std::pair<int, int>, SiMap> hasse;
        for (auto [a, b] : base.hasse()) hasse[{a, b}] = random_simap(rng, heights[a], heights[b]);
        try {
            return close_si_family(base, heights, hasse);
        } catch (const check_error&) {
            continue;  // parallel paths disagreed; retry
        }
    }
    // Fall back to constant maps onto height 0.
    std::vector<int> flat(base.size(), 0);
    std::map<std::pair<int, int>, SiMap> hasse;
    for (auto [a, b] : base.hasse()) hasse[{a, b}] = SiMap(0, 0, {});
    return close_si_family(base, flat, hasse);
}

// Random labelled cube family over `base` with `n` levels; labels are a
// random monotone map into a chain category, which makes collapses likely.
inline CubeFamily random_cube(Rng& rng, const Poset& base, int n, int max_h, int chain_len,
                              int max_top = 1 << 20) {
    for (int attempt = 0;; ++attempt) {
        std::vector<SiFamily> levels;
        const Poset* cur = &base;
        std::vector<TotalPoset> totals;
        bool too_big = false;
        for (int k = 0; k < n; ++k) {
            SiFamily f = random_si_family(rng, *cur, max_h);
            totals.push_back(build_total(*cur, f));
            levels.push_back(std::move(f));
            cur = &totals.back().poset;
            if (cur->size() > max_top) {
                too_big = true;
                break;
            }
        }
        if (too_big && attempt < 64) continue;
        if (too_big) return random_cube(rng, base, n, 1, chain_len, max_top);
        const Poset& top = *cur;
        auto cat = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(Poset::chain(chain_len)));
        // Monotone potential: distance from minimal elements, clamped, plus noise
        // that respects the order by construction.
        std::vector<int> depth(top.size(), 0);
        for (int i = 0; i < top.size(); ++i)
            for (int j = 0; j < top.size(); ++j)
                if (top.lt(j, i)) depth[i] = std::max(depth[i], depth[j] + 1);
        // re-run to fixpoint (depth needs order; simple loop suffices for small posets)
        for (int it = 0; it < top.size(); ++it)
            for (int i = 0; i < top.size(); ++i)
                for (int j = 0; j < top.size(); ++j)
                    if (top.lt(j, i)) depth[i] = std::max(depth[i], depth[j] + 1);
        std::vector<int> obj(top.size());
        for (int i = 0; i < top.size(); ++i)
            obj[i] = std::min(chain_len - 1, rng.below(2) ? std::min(depth[i], chain_len - 1)
                                                          : std::max(0, std::min(depth[i] - 1, chain_len - 1)));
        // enforce monotonicity (noise may have broken it): lift to max over predecessors
        for (int it = 0; it < top.size(); ++it)
            for (int i = 0; i < top.size(); ++i)
                for (int j = 0; j < top.size(); ++j)
                    if (top.lt(j, i)) obj[i] = std::max(obj[i], obj[j]);
        std::vector<int> arr;
        for (auto [u, v] : top.strict_arrows())
            arr.push_back(*cat->unique_arrow(obj[u], obj[v]));
        return CubeFamily::make(base, std::move(levels), cat, std::move(obj), std::move(arr));
    }
}

inline CubeFamily random_cube_over_point(Rng& rng, int n, int max_h, int chain_len,
                                         int max_top = 1 << 20) {
    return random_cube(rng, Poset::point(), n, max_h, chain_len, max_top);
}

// --- brute-force collapse oracle -------------------------------------------

// All stable sections of the level-k family that also factor, i.e. all valid
// k-collapses from `a`.
inline std::vector<SubsetSection> all_valid_collapses(const CubeFamily& a, int k,
                                                      bool skip_identity = true) {
    const Poset& kbase = a.total(k - 1);
    const SiFamily& fam = a.level(k);
    // Enumerate subsets per fiber.
    std::vector<std::vector<std::vector<int>>> choices(kbase.size());
    for (int x = 0; x < kbase.size(); ++x) {
        int h = fam.heights[x];
        for (int mask = 0; mask < (1 << h); ++mask) {
            std::vector<int> s;
            for (int i = 0; i < h; ++i)
                if (mask & (1 << i)) s.push_back(2 * i + 1);
            choices[x].push_back(std::move(s));
        }
    }
    std::vector<SubsetSection> out;
    std::vector<int> pick(kbase.size(), 0);
    while (true) {
        SubsetSection s;
        for (int x = 0; x < kbase.size(); ++x) s.at.push_back(choices[x][pick[x]]);
        bool identity = true;
        for (int x = 0; x < kbase.size(); ++x)
            if (int(s.at[x].size()) != fam.heights[x]) identity = false;
        if (!(skip_identity && identity) && is_stable_section(kbase, fam, s) &&
            try_collapse(a, k, s).has_value())
            out.push_back(s);
        int x = 0;
        while (x < kbase.size() && ++pick[x] == int(choices[x].size())) pick[x++] = 0;
        if (x == kbase.size()) break;
    }
    return out;
}

// Fixpoint oracle: apply any valid collapse (first found, scanning levels
// n..1) until none applies.
inline CubeFamily oracle_normal_form(const CubeFamily& a) {
    CubeFamily cur = a;
    while (true) {
        bool progressed = false;
        for (int k = cur.dim(); k >= 1 && !progressed; --k) {
            auto all = all_valid_collapses(cur, k);
            if (!all.empty()) {
                cur = try_collapse(cur, k, all.front())->result;
                progressed = true;
            }
        }
        if (!progressed) return cur;
    }
}

// Exhaustively explores every maximal collapse strategy; returns all distinct
// end points (confluence check wants exactly one).
inline void oracle_all_normal_forms(const CubeFamily& a, std::set<std::string>& sink,
                                    std::string (*key)(const CubeFamily&), int budget = 100000) {
    std::vector<CubeFamily> stack{a};
    int spent = 0;
    while (!stack.empty()) {
        CubeFamily cur = stack.back();
        stack.pop_back();
        if (++spent > budget) throw check_error("oracle_all_normal_forms: budget exceeded");
        bool any = false;
        for (int k = cur.dim(); k >= 1; --k)
            for (const auto& s : all_valid_collapses(cur, k)) {
                stack.push_back(try_collapse(cur, k, s)->result);
                any = true;
            }
        if (!any) sink.insert(key(cur));
    }
}

}  // namespace cubecat::testgen

#endif
