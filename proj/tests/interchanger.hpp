// Builds the binary interchanger over its classifying globular set: one
// 0-cell a; 1-cells f,g,h,k on a; 2-cells x : g => f and y : k => h. The
// 3-cube D exchanges the heights of x and y.
#ifndef CUBECAT_TESTS_INTERCHANGER_HPP
#define CUBECAT_TESTS_INTERCHANGER_HPP

#include <map>

#include "cubecat/compose.hpp"

namespace cubecat::testgen {

struct Interchanger {
    GlobularSet s;
    GlobularContext ctx;
    CTreeRef t_src, t_tgt;
    CubeFamily d;       // the homotopy witness
    int point_y = -1;   // the y-labelled point of the middle slice
    int point_x = -1;
};

inline Interchanger make_interchanger() {
    Interchanger ir;
    ir.s.grade = {{"a"}, {"f", "g", "h", "k"}, {"x", "y"}};
    ir.s.src = {{0, 0, 0, 0}, {1, 3}};  // x : g => f, y : k => h
    ir.s.tgt = {{0, 0, 0, 0}, {0, 2}};
    ir.s.validate();
    ir.ctx = make_context(ir.s);

    auto leaf = [&](int grade, int idx) { return tree_leaf(ir.ctx, grade, idx); };
    CTreeRef gy = tree_whisker(ir.ctx, leaf(2, 1), leaf(1, 1), 2, false);  // g then y
    CTreeRef xh = tree_whisker(ir.ctx, leaf(2, 0), leaf(1, 2), 2, true);   // x then h
    CTreeRef xk = tree_whisker(ir.ctx, leaf(2, 0), leaf(1, 3), 2, true);   // x then k
    CTreeRef fy = tree_whisker(ir.ctx, leaf(2, 1), leaf(1, 0), 2, false);  // f then y
    ir.t_src = tree_whisker(ir.ctx, gy, xh, 1, true);
    ir.t_tgt = tree_whisker(ir.ctx, xk, fy, 1, true);

    CubeFamily src = ir.t_src->real;
    CubeFamily tgt = ir.t_tgt->real;
    CubeFamily mid = k_stack(leaf(2, 0)->real, leaf(2, 1)->real, 2);  // x beside y

    // Assemble the 3-cube: level 1 is the terminal interval; the slices over
    // fiber values 0, 1, 2 are src, mid, tgt; all level-3 maps are identities
    // and the cross labels are forced by composition.
    SiFamily l1;
    l1.heights = {1};
    TotalPoset t1 = build_total(Poset::point(), l1);
    const CubeFamily* slice[3] = {&src, &mid, &tgt};
    SiFamily l2;
    l2.heights = {2, 1, 2};
    l2.maps = {SiMap(2, 1, {1, 1}), SiMap(2, 1, {1, 1})};
    TotalPoset t2 = build_total(t1.poset, l2);
    SiFamily l3;
    l3.heights.resize(t2.poset.size());
    for (int i = 0; i < t2.poset.size(); ++i) {
        int sl = t2.parent[i], row = t2.value[i];
        l3.heights[i] = slice[sl]->level(2).heights[slice[sl]->total_info(1).at(0, row)];
    }
    for (auto [u, v] : t2.poset.strict_arrows()) {
        if (t2.parent[u] == t2.parent[v]) {
            const CubeFamily& c = *slice[t2.parent[u]];
            l3.maps.push_back(c.level(2).between(c.total(1), c.total_info(1).at(0, t2.value[u]),
                                                 c.total_info(1).at(0, t2.value[v])));
        } else {
            l3.maps.push_back(SiMap::identity(l3.heights[u]));
        }
    }
    TotalPoset t3 = build_total(t2.poset, l3);
    std::vector<int> obj(t3.poset.size());
    for (int i = 0; i < t3.poset.size(); ++i) {
        int g2 = t3.parent[i], c = t3.value[i];
        int sl = t2.parent[g2], row = t2.value[g2];
        const CubeFamily& cube = *slice[sl];
        int sp = cube.total_info(2).at(cube.total_info(1).at(0, row), c);
        obj[i] = cube.obj_label(sp);
    }
    std::map<std::pair<int, int>, int> known;
    for (auto [u, v] : t3.poset.strict_arrows()) {
        int g2u = t3.parent[u], g2v = t3.parent[v];
        if (t2.parent[g2u] != t2.parent[g2v]) continue;  // cross labels are forced
        const CubeFamily& cube = *slice[t2.parent[g2u]];
        int su = cube.total_info(2).at(cube.total_info(1).at(0, t2.value[g2u]), t3.value[u]);
        int sv = cube.total_info(2).at(cube.total_info(1).at(0, t2.value[g2v]), t3.value[v]);
        known[{u, v}] = cube.arrow_label(su, sv);
    }
    std::vector<int> arr = complete_labels(t3.poset, ir.ctx.el, obj, known);
    ir.d = CubeFamily::make(Poset::point(), {l1, l2, l3}, ir.ctx.el, obj, arr);
    // the x- and y-labelled points of the middle slice
    for (int i = 0; i < t3.poset.size(); ++i) {
        if (t2.parent[t3.parent[i]] != 1) continue;
        if (obj[i] == ir.ctx.el_object(2, 0)) ir.point_x = i;
        if (obj[i] == ir.ctx.el_object(2, 1)) ir.point_y = i;
    }
    return ir;
}

}  // namespace cubecat::testgen

#endif
