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

#include "cubecat/compose.hpp"

#include <algorithm>

namespace cubecat {

namespace {

PosetMap section_map(const CubeFamily& a, int k, bool source) {
    const Poset& kbase = a.total(k - 1);
    const TotalPoset& t = a.total_info(k);
    std::vector<int> obj(kbase.size());
    for (int y = 0; y < kbase.size(); ++y)
        obj[y] = t.at(y, source ? 0 : 2 * a.level(k).heights[y]);
    return PosetMap(kbase, t.poset, std::move(obj));
}

}  // namespace

CubeFamily cubical_src(const CubeFamily& a, int k) {
    require(k >= 1 && k <= a.dim(), "cubical_src: level out of range");
    return pullback_family(level_labelling(a, k), section_map(a, k, true)).family;
}

CubeFamily cubical_tgt(const CubeFamily& a, int k) {
    require(k >= 1 && k <= a.dim(), "cubical_tgt: level out of range");
    return pullback_family(level_labelling(a, k), section_map(a, k, false)).family;
}

namespace {

// Shared machinery of k_stack: builds the stacked family and the two
// embedding object maps level by level.
struct StackBuild {
    CubeFamily result;
    std::vector<std::vector<int>> from_a, from_b;  // per level l = 0..n: object maps
};

StackBuild build_stack(const CubeFamily& a, const CubeFamily& b, int k) {
    require(a.dim() == b.dim(), "k_stack: dimensions differ");
    const int n = a.dim();
    require(k >= 1 && k <= n, "k_stack: level out of range");
    require(a.base() == b.base(), "k_stack: bases differ");
    for (int l = 1; l < k; ++l)
        require(a.level(l).heights == b.level(l).heights && a.level(l).maps == b.level(l).maps,
                "k_stack: towers disagree strictly below the stacking level");
    require(*a.cat() == *b.cat(), "k_stack: label categories differ");
    {
        CubeFamily ta = cubical_tgt(a, k);
        CubeFamily sb = cubical_src(b, k);
        if (!(ta == sb)) {
            // find the first disagreeing label for the report
            std::string detail = "boundary mismatch";
            int m = ta.dim();
            if (ta.total(m).size() == sb.total(m).size()) {
                for (int p = 0; p < ta.total(m).size(); ++p)
                    if (ta.obj_label(p) != sb.obj_label(p)) {
                        detail += ": first disagreeing label at " + ta.total(m).name(p) + " (" +
                                  ta.cat()->obj_name(ta.obj_label(p)) + " vs " +
                                  sb.cat()->obj_name(sb.obj_label(p)) + ")";
                        break;
                    }
            }
            throw check_error("k_stack: " + detail);
        }
    }

    StackBuild out;
    const Poset& kbase = a.total(k - 1);
    std::vector<SiFamily> levels(a.levels().begin(), a.levels().begin() + (k - 1));
    SiFamily sum;
    for (int x = 0; x < kbase.size(); ++x)
        sum.heights.push_back(a.level(k).heights[x] + b.level(k).heights[x]);
    {
        const auto& arrows = kbase.strict_arrows();
        for (size_t i = 0; i < arrows.size(); ++i)
            sum.maps.push_back(ordered_sum_mor(a.level(k).maps[i], b.level(k).maps[i]));
    }
    levels.push_back(sum);
    for (int l = 0; l < k; ++l) {
        std::vector<int> ident(a.total(l).size());
        for (size_t i = 0; i < ident.size(); ++i) ident[i] = int(i);
        out.from_a.push_back(ident);
        out.from_b.push_back(ident);
    }
    TotalPoset cur = build_total(kbase, sum);
    // Level-k embeddings: In1 keeps values, In2 shifts by 2 H_A.
    {
        std::vector<int> fa(a.total(k).size()), fb(b.total(k).size());
        const TotalPoset& at = a.total_info(k);
        for (int i = 0; i < at.poset.size(); ++i) fa[i] = cur.at(at.parent[i], at.value[i]);
        const TotalPoset& bt = b.total_info(k);
        for (int i = 0; i < bt.poset.size(); ++i)
            fb[i] = cur.at(bt.parent[i], bt.value[i] + 2 * a.level(k).heights[bt.parent[i]]);
        out.from_a.push_back(fa);
        out.from_b.push_back(fb);
    }
    // Glue the towers above level k; each new-object datum comes from the A
    // part when its level-k value lies at or below the seam, else from B.
    for (int l = k + 1; l <= n; ++l) {
        const Poset& new_base = cur.poset;
        std::vector<int> a_pre(new_base.size(), -1), b_pre(new_base.size(), -1);
        for (int i = 0; i < a.total(l - 1).size(); ++i) a_pre[out.from_a[l - 1][i]] = i;
        for (int i = 0; i < b.total(l - 1).size(); ++i) b_pre[out.from_b[l - 1][i]] = i;
        SiFamily lvl;
        lvl.heights.resize(new_base.size());
        for (int q = 0; q < new_base.size(); ++q) {
            if (a_pre[q] >= 0) lvl.heights[q] = a.level(l).heights[a_pre[q]];
            else lvl.heights[q] = b.level(l).heights[b_pre[q]];
            if (a_pre[q] >= 0 && b_pre[q] >= 0)
                invariant(a.level(l).heights[a_pre[q]] == b.level(l).heights[b_pre[q]],
                          "k_stack: seam heights disagree");
        }
        for (auto [q, q2] : new_base.strict_arrows()) {
            if (a_pre[q] >= 0 && a_pre[q2] >= 0)
                lvl.maps.push_back(a.level(l).between(a.total(l - 1), a_pre[q], a_pre[q2]));
            else if (b_pre[q] >= 0 && b_pre[q2] >= 0)
                lvl.maps.push_back(b.level(l).between(b.total(l - 1), b_pre[q], b_pre[q2]));
            else
                throw internal_error("k_stack: arrow crosses the seam");
        }
        TotalPoset next = build_total(new_base, lvl);
        std::vector<int> fa(a.total(l).size()), fb(b.total(l).size());
        const TotalPoset& at = a.total_info(l);
        for (int i = 0; i < at.poset.size(); ++i)
            fa[i] = next.at(out.from_a[l - 1][at.parent[i]], at.value[i]);
        const TotalPoset& bt = b.total_info(l);
        for (int i = 0; i < bt.poset.size(); ++i)
            fb[i] = next.at(out.from_b[l - 1][bt.parent[i]], bt.value[i]);
        out.from_a.push_back(fa);
        out.from_b.push_back(fb);
        levels.push_back(lvl);
        cur = next;
    }
    // Labels.
    const Poset& top = cur.poset;
    std::vector<int> a_pre(top.size(), -1), b_pre(top.size(), -1);
    for (int i = 0; i < a.total(n).size(); ++i) a_pre[out.from_a[n][i]] = i;
    for (int i = 0; i < b.total(n).size(); ++i) b_pre[out.from_b[n][i]] = i;
    std::vector<int> obj(top.size());
    for (int q = 0; q < top.size(); ++q)
        obj[q] = a_pre[q] >= 0 ? a.obj_label(a_pre[q]) : b.obj_label(b_pre[q]);
    std::vector<int> arr;
    for (auto [q, q2] : top.strict_arrows()) {
        if (a_pre[q] >= 0 && a_pre[q2] >= 0) arr.push_back(a.arrow_label(a_pre[q], a_pre[q2]));
        else if (b_pre[q] >= 0 && b_pre[q2] >= 0) arr.push_back(b.arrow_label(b_pre[q], b_pre[q2]));
        else throw internal_error("k_stack: top arrow crosses the seam");
    }
    out.result = CubeFamily::make(a.base(), std::move(levels), a.cat(), std::move(obj),
                                  std::move(arr));
    return out;
}

}  // namespace

CubeFamily k_stack(const CubeFamily& a, const CubeFamily& b, int k) {
    return build_stack(a, b, k).result;
}

StackEmbeddings stack_embeddings(const CubeFamily& a, const CubeFamily& b, int k) {
    StackBuild sb = build_stack(a, b, k);
    StackEmbeddings out;
    out.in1.dom = a;
    out.in1.cod = sb.result;
    out.in2.dom = b;
    out.in2.cod = sb.result;
    for (int l = 0; l <= a.dim(); ++l) {
        out.in1.level.push_back(PosetMap(a.total(l), sb.result.total(l), sb.from_a[l]));
        out.in2.level.push_back(PosetMap(b.total(l), sb.result.total(l), sb.from_b[l]));
    }
    invariant(is_embedding(out.in1) && is_embedding(out.in2),
              "stack_embeddings: non-embedding inclusion");
    return out;
}

CubeFamily whisker(const CubeFamily& a, const CubeFamily& b, int k, bool post) {
    const int n = a.dim();
    require(k >= 1 && k <= n, "whisker: level out of range");
    require(b.dim() == n - k + 1, "whisker: dimension of the smaller globe must be n-k+1");
    require(a.base().size() == 1 && b.base().size() == 1, "whisker: globes over the point expected");
    require(is_normalized(a) && is_globular(a), "whisker: first argument not a normalized globe");
    require(is_normalized(b) && is_globular(b), "whisker: second argument not a normalized globe");
    {
        CubeFamily mine = post ? iter_globular_tgt(a, k) : iter_globular_src(a, k);
        CubeFamily theirs = post ? globular_src(b) : globular_tgt(b);
        require(mine == theirs, "whisker: boundary mismatch");
    }
    PosetMap bang(a.total(k - 1), b.base(), std::vector<int>(a.total(k - 1).size(), 0));
    CubeFamily pulled = pullback_family(b, bang).family;
    CubeFamily padded = repack(a, k - 1, pulled);
    CubeFamily out = post ? k_stack(a, padded, k) : k_stack(padded, a, k);
    invariant(is_normalized(out), "whisker: result not normalized");
    invariant(is_globular(out), "whisker: result not globular");
    return out;
}

GlobularContext make_context(const GlobularSet& s) {
    GlobularContext ctx;
    ctx.s = s;
    ctx.el = std::make_shared<FiniteCategory>(elements_category(s));
    for (size_t k = 0; k < s.grade.size(); ++k)
        for (size_t i = 0; i < s.grade[k].size(); ++i) {
            ctx.obj_grade.push_back(int(k));
            ctx.obj_index.push_back(int(i));
        }
    return ctx;
}

int GlobularContext::el_object(int grade, int index) const {
    for (size_t o = 0; o < obj_grade.size(); ++o)
        if (obj_grade[o] == grade && obj_index[o] == index) return int(o);
    throw internal_error("GlobularContext: element not found");
}

CubeFamily leaf_realisation(const GlobularContext& ctx, int grade, int index) {
    TerminalGlobe g = terminal_globe(grade);
    GlobularMap cls;
    cls.dom = &g.globular_set;
    cls.cod = &ctx.s;
    cls.at.resize(grade + 1);
    for (int k = 0; k < grade; ++k)
        cls.at[k] = {ctx.s.iter_src(grade, index, k), ctx.s.iter_tgt(grade, index, k)};
    cls.at[grade] = {index};
    CatFunctor f = elements_functor(cls, g.cube.cat(), ctx.el);
    return relabel(g.cube, f);
}

namespace {

CubeFamily realise(const GlobularContext& ctx, const CTree& t);

CTreeRef finish(const GlobularContext& ctx, CTree t) {
    t.real = realise(ctx, t);
    invariant(is_normalized(t.real) && is_globular(t.real),
              "composition tree: realisation must be globular and normalized");
    return std::make_shared<const CTree>(std::move(t));
}

CubeFamily realise(const GlobularContext& ctx, const CTree& t) {
    switch (t.kind) {
        case CTree::Kind::Leaf:
            return leaf_realisation(ctx, t.grade, t.index);
        case CTree::Kind::Whisker:
            return whisker(t.t1->real, t.t2->real, t.k, t.post);
        case CTree::Kind::Ident:
            return identity_cube(t.t1->real);
        case CTree::Kind::Homotopy:
            return t.witness;
    }
    throw internal_error("realise: unknown node kind");
}

}  // namespace

CTreeRef tree_leaf(const GlobularContext& ctx, int grade, int index) {
    require(grade < int(ctx.s.grade.size()) && index < int(ctx.s.grade[grade].size()),
            "tree_leaf: no such element");
    CTree t;
    t.kind = CTree::Kind::Leaf;
    t.grade = grade;
    t.index = index;
    t.height = 0;
    t.dim = grade;
    return finish(ctx, std::move(t));
}

CTreeRef tree_whisker(const GlobularContext& ctx, CTreeRef t1, CTreeRef t2, int k, bool post) {
    require(t1 && t2, "tree_whisker: missing subtree");
    CTree t;
    t.kind = CTree::Kind::Whisker;
    t.t1 = t1;
    t.t2 = t2;
    t.k = k;
    t.post = post;
    require(t2->dim == t1->dim - k + 1, "tree_whisker: dimension side condition violated");
    {
        CubeFamily mine = post ? iter_globular_tgt(t1->real, k) : iter_globular_src(t1->real, k);
        CubeFamily theirs = post ? globular_src(t2->real) : globular_tgt(t2->real);
        require(mine == theirs, "tree_whisker: boundary side condition violated");
    }
    t.height = std::max(t1->height, t2->height) + 1;
    t.dim = t1->dim;
    return finish(ctx, std::move(t));
}

CTreeRef tree_ident(const GlobularContext& ctx, CTreeRef sub) {
    require(sub != nullptr, "tree_ident: missing subtree");
    CTree t;
    t.kind = CTree::Kind::Ident;
    t.t1 = sub;
    t.height = sub->height + 1;
    t.dim = sub->dim + 1;
    return finish(ctx, std::move(t));
}

CTreeRef tree_homotopy(const GlobularContext& ctx, CTreeRef t1, CTreeRef t2, const CubeFamily& d) {
    require(t1 && t2, "tree_homotopy: missing subtree");
    require(t1->dim == t2->dim, "tree_homotopy: endpoint dimensions differ");
    CTree t;
    t.kind = CTree::Kind::Homotopy;
    t.t1 = t1;
    t.t2 = t2;
    t.witness = d;
    require(d.dim() == t1->dim + 1, "tree_homotopy: witness dimension");
    require(globular_src(d) == t1->real && globular_tgt(d) == t2->real,
            "tree_homotopy: witness endpoints disagree with the subtrees");
    HomotopyVerdict v = is_homotopy(ctx, d);
    require(v.ok && v.one_step, "tree_homotopy: witness is not a one-step homotopy (" + v.why + ")");
    t.height = std::max(t1->height, t2->height) + 1;
    t.dim = t1->dim + 1;
    return finish(ctx, std::move(t));
}

CTreeRef tree_src(const GlobularContext& ctx, const CTreeRef& t) {
    switch (t->kind) {
        case CTree::Kind::Leaf:
            require(t->grade > 0, "tree_src: boundary of a point");
            return tree_leaf(ctx, t->grade - 1, ctx.s.src[t->grade - 1][t->index]);
        case CTree::Kind::Ident:
            return t->t1;
        case CTree::Kind::Homotopy:
            return t->t1;
        case CTree::Kind::Whisker:
            if (t->post) {
                if (t->k == 1) return tree_src(ctx, t->t1);
                return tree_whisker(ctx, tree_src(ctx, t->t1), t->t2, t->k - 1, true);
            }
            if (t->k == 1) return tree_src(ctx, t->t2);
            return tree_whisker(ctx, tree_src(ctx, t->t1), t->t2, t->k - 1, false);
    }
    throw internal_error("tree_src: unknown node kind");
}

CTreeRef tree_tgt(const GlobularContext& ctx, const CTreeRef& t) {
    switch (t->kind) {
        case CTree::Kind::Leaf:
            require(t->grade > 0, "tree_tgt: boundary of a point");
            return tree_leaf(ctx, t->grade - 1, ctx.s.tgt[t->grade - 1][t->index]);
        case CTree::Kind::Ident:
            return t->t1;
        case CTree::Kind::Homotopy:
            return t->t2;
        case CTree::Kind::Whisker:
            if (t->post) {
                if (t->k == 1) return tree_tgt(ctx, t->t2);
                return tree_whisker(ctx, tree_tgt(ctx, t->t1), t->t2, t->k - 1, true);
            }
            if (t->k == 1) return tree_tgt(ctx, t->t1);
            return tree_whisker(ctx, tree_tgt(ctx, t->t1), t->t2, t->k - 1, false);
    }
    throw internal_error("tree_tgt: unknown node kind");
}

CTreeRef relabel_tree(const GlobularContext& from, const GlobularContext& to,
                      const GlobularMap& alpha, const CTreeRef& t) {
    alpha.validate();
    switch (t->kind) {
        case CTree::Kind::Leaf:
            return tree_leaf(to, t->grade, alpha.at[t->grade][t->index]);
        case CTree::Kind::Whisker:
            return tree_whisker(to, relabel_tree(from, to, alpha, t->t1),
                                relabel_tree(from, to, alpha, t->t2), t->k, t->post);
        case CTree::Kind::Ident:
            return tree_ident(to, relabel_tree(from, to, alpha, t->t1));
        case CTree::Kind::Homotopy: {
            CatFunctor f = elements_functor(alpha, from.el, to.el);
            return tree_homotopy(to, relabel_tree(from, to, alpha, t->t1),
                                 relabel_tree(from, to, alpha, t->t2), relabel(t->witness, f));
        }
    }
    throw internal_error("relabel_tree: unknown node kind");
}

HomotopyVerdict is_homotopy(const GlobularContext& ctx, const CubeFamily& d) {
    HomotopyVerdict v;
    const int n1 = d.dim();  // n + 1
    if (d.base().size() != 1) {
        v.why = "homotopies are cubes over the point";
        return v;
    }
    if (!is_globular(d)) {
        v.why = "not a globular cube";
        return v;
    }
    bool typed_ok = true, trivial_ok = true;
    for (int p = 0; p < d.total(n1).size() && typed_ok; ++p) {
        int g = d.obj_label(p);
        int k = ctx.grade_of_label(g);
        if (k > n1 - 1) {
            typed_ok = false;
            v.witness_point = p;
            v.why = "label of top dimension at point " + d.total(n1).name(p);
            break;
        }
        MinimalNeighbourhood mn = minimal_neighbourhood(d, p);
        CubeFamily nf = normalize(mn.family).nf;
        CubeFamily want =
            identity_cube(leaf_realisation(ctx, k, ctx.obj_index[g]), n1 - k);
        if (!(nf == want)) {
            typed_ok = false;
            v.witness_point = p;
            v.why = "minimal neighbourhood does not normalize to the identity of the label's type";
        }
        // Cross-check: local triviality of the level-1 labelling of D // p.
        if (!is_locally_trivial(level_labelling(mn.family, 1))) trivial_ok = false;
    }
    if (typed_ok) {
        // The two characterizations agree (checked when the fast one passed).
        for (int p = 0; p < d.total(n1).size(); ++p) {
            MinimalNeighbourhood mn = minimal_neighbourhood(d, p);
            if (!is_locally_trivial(level_labelling(mn.family, 1))) trivial_ok = false;
        }
        invariant(trivial_ok, "is_homotopy: characterizations disagree (typed but not trivial)");
    }
    v.ok = typed_ok;
    v.one_step = v.ok && d.level(1).heights[0] == 1;
    return v;
}

bool LawReport::all_ok() const {
    for (const auto& i : items)
        if (!i.ok) return false;
    return true;
}

namespace {

void collect_subtrees(const CTreeRef& t, std::vector<CTreeRef>& out) {
    out.push_back(t);
    if (t->t1) collect_subtrees(t->t1, out);
    if (t->t2) collect_subtrees(t->t2, out);
}

std::string el_name(const GlobularContext& ctx, int grade, int index) {
    return ctx.s.grade[grade][index];
}

}  // namespace

LawReport check_anc_laws(const GlobularContext& ctx, const ShapeLookup& m,
                         const std::vector<CTreeRef>& trees, int truncation) {
    LawReport report;
    std::vector<CTreeRef> all;
    for (const auto& t : trees) collect_subtrees(t, all);
    auto lookup = [&](const CubeFamily& c, LawReport::Item& item) -> std::optional<std::pair<int, int>> {
        auto r = m(c);
        if (!r) {
            item.undefined = true;
            item.ok = false;
        }
        return r;
    };
    for (const auto& t : all) {
        if (t->kind == CTree::Kind::Leaf) {
            LawReport::Item item;
            item.law = "unit";
            item.desc = "M(|" + el_name(ctx, t->grade, t->index) + "|) = " +
                        el_name(ctx, t->grade, t->index);
            auto r = lookup(t->real, item);
            if (r) item.ok = (*r == std::make_pair(t->grade, t->index));
            report.items.push_back(item);
        } else if (t->kind == CTree::Kind::Whisker) {
            LawReport::Item item;
            item.law = "whiskering";
            item.desc = "M on a level-" + std::to_string(t->k) + " whisker node";
            auto lhs = lookup(t->real, item);
            auto m1 = lookup(t->t1->real, item);
            auto m2 = lookup(t->t2->real, item);
            if (lhs && m1 && m2) {
                CTreeRef l1 = tree_leaf(ctx, m1->first, m1->second);
                CTreeRef l2 = tree_leaf(ctx, m2->first, m2->second);
                try {
                    CTreeRef re = tree_whisker(ctx, l1, l2, t->k, t->post);
                    auto rhs = lookup(re->real, item);
                    if (rhs) item.ok = (*lhs == *rhs);
                } catch (const check_error& e) {
                    item.ok = false;
                    item.desc += std::string(" (re-associated whisker invalid: ") + e.what() + ")";
                }
            }
            report.items.push_back(item);
        } else if (t->kind == CTree::Kind::Ident) {
            LawReport::Item item;
            item.law = "identity";
            item.desc = "M on an identity node";
            auto lhs = lookup(t->real, item);
            auto sub = lookup(t->t1->real, item);
            if (lhs && sub) {
                CTreeRef re = tree_ident(ctx, tree_leaf(ctx, sub->first, sub->second));
                auto rhs = lookup(re->real, item);
                if (rhs) item.ok = (*lhs == *rhs);
            }
            report.items.push_back(item);
        }
        if (t->dim == truncation + 1) {
            LawReport::Item item;
            item.law = "homotopy";
            item.desc = "M(src) = M(tgt) on a truncation-dimension shape";
            auto s = lookup(tree_src(ctx, t)->real, item);
            auto g = lookup(tree_tgt(ctx, t)->real, item);
            if (s && g) item.ok = (*s == *g);
            report.items.push_back(item);
        }
    }
    return report;
}

}  // namespace cubecat
