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

#include "cubecat/presentation.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace cubecat {

void Namescope::validate() const {
    std::set<std::string> seen;
    for (const auto& g : grades)
        for (const auto& n : g)
            require(seen.insert(n).second, "namescope: duplicate name " + n);
}

Poset gamma_total(const Namescope& ns, int truncation) {
    require(truncation >= 0 && truncation < int(ns.grades.size()),
            "gamma_total: truncation out of range");
    std::vector<std::string> names;
    std::vector<int> grade_of;
    for (int k = 0; k <= truncation; ++k)
        for (const auto& n : ns.grades[k]) {
            names.push_back(n);
            grade_of.push_back(k);
        }
    std::vector<std::pair<int, int>> arrows;
    for (size_t i = 0; i < names.size(); ++i)
        for (size_t j = 0; j < names.size(); ++j)
            if (grade_of[i] < grade_of[j]) arrows.push_back({int(i), int(j)});
    return Poset(std::move(names), arrows);
}

std::optional<std::pair<int, int>> Namescope::find(const std::string& name) const {
    for (size_t k = 0; k < grades.size(); ++k)
        for (size_t i = 0; i < grades[k].size(); ++i)
            if (grades[k][i] == name) return std::make_pair(int(k), int(i));
    return std::nullopt;
}

Presentation::Presentation(int n) : n_(n) {
    ns_.grades.assign(n + 2, {});
    rebuild_gamma();
}

void Presentation::rebuild_gamma() {
    gamma_poset_ = gamma_total(ns_, n_ + 1);
    gamma_cat_ = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(gamma_poset_));
    for (auto& g : gens_) g.gamma_obj = *gamma_poset_.index_of(g.name);
}

std::optional<int> Presentation::find_gen(const std::string& name) const {
    for (int g = 0; g < generator_count(); ++g)
        if (gens_[g].name == name) return g;
    return std::nullopt;
}

// Tries to transport labels of `d` into `cat` by object and arrow names;
// posetal identity arrows are matched structurally.
CubeFamily lift_labels(const CubeFamily& d, CategoryRef cat) {
    if (*d.cat() == *cat) return d;
    std::vector<int> obj(d.cat()->objects());
    for (int o = 0; o < d.cat()->objects(); ++o) {
        auto i = cat->object_index(d.cat()->obj_name(o));
        require(i.has_value(), "label " + d.cat()->obj_name(o) + " unknown in the presentation");
        obj[o] = *i;
    }
    std::vector<int> arr(d.cat()->arrow_count());
    for (int f = 0; f < d.cat()->arrow_count(); ++f) {
        if (d.cat()->is_identity(f)) {
            arr[f] = cat->identity(obj[d.cat()->arrow(f).src]);
            continue;
        }
        auto i = cat->arrow_index(d.cat()->arrow(f).name);
        if (!i) i = cat->unique_arrow(obj[d.cat()->arrow(f).src], obj[d.cat()->arrow(f).tgt]);
        require(i.has_value(), "arrow label unknown in the presentation");
        arr[f] = *i;
    }
    return relabel(d, CatFunctor(d.cat(), cat, obj, arr));
}

Presentation widen(const Presentation& p, int new_n) {
    require(new_n >= p.n(), "widen: cannot shrink a presentation");
    if (new_n == p.n()) return p;
    Presentation out(new_n);
    out.ns_ = p.ns_;
    out.ns_.grades.resize(new_n + 2);
    out.rebuild_gamma();
    for (const auto& g : p.gens_) {
        Presentation::Gen ng;
        ng.name = g.name;
        ng.dim = g.dim;
        ng.type = lift_labels(g.type, out.gamma_cat_);
        if (g.dim > 0) {
            ng.source = lift_labels(g.source, out.gamma_cat_);
            ng.target = lift_labels(g.target, out.gamma_cat_);
        }
        ng.gamma_obj = *out.gamma_poset_.index_of(g.name);
        out.gens_.push_back(ng);
    }
    return out;
}

MorphismVerdict check_morphism(const CubeFamily& d_in, const Presentation& p, int m,
                               GlobularityMode mode) {
    MorphismVerdict v;
    if (d_in.dim() != m) {
        v.clause = "dimension";
        v.detail = "cube dimension disagrees with the declared morphism dimension";
        return v;
    }
    CubeFamily d;
    try {
        d = lift_labels(d_in, p.gamma());
    } catch (const check_error& e) {
        v.clause = "labels";
        v.detail = e.what();
        return v;
    }
    const int top = d.total(m).size();
    // Label grades must not exceed m (the truncation construction).
    for (int q = 0; q < top; ++q) {
        auto gi = p.find_gen(p.gamma()->obj_name(d.obj_label(q)));
        if (!gi || p.gen_dim(*gi) > m) {
            v.clause = "labels";
            v.witness_point = q;
            v.detail = "label grade exceeds the morphism dimension";
            return v;
        }
    }
    if (!is_normalized(d)) {
        v.clause = "normalized";
        return v;
    }
    if (!is_globular(d, mode.boundary)) {
        v.clause = "globular";
        return v;
    }
    // Per-point type checks are independent; collect verdicts positionally.
    std::vector<int> bad(top, 0);
    std::vector<std::string> why(top);
#pragma omp parallel for schedule(dynamic)
    for (int q = 0; q < top; ++q) {
        try {
            int g = *p.find_gen(p.gamma()->obj_name(d.obj_label(q)));
            MinimalNeighbourhood mn = minimal_neighbourhood(d, q);
            CubeFamily nf = normalize(mn.family).nf;
            CubeFamily want = identity_cube(p.type_of(g), m - p.gen_dim(g));
            if (!(nf == want)) {
                bad[q] = 1;
                why[q] = "minimal neighbourhood does not normalize to the label's type";
            }
        } catch (const std::exception& e) {
            bad[q] = 1;
            why[q] = e.what();
        }
    }
    for (int q = 0; q < top; ++q)
        if (bad[q]) {
            v.clause = "well-typed";
            v.witness_point = q;
            v.detail = why[q];
            return v;
        }
    v.ok = true;
    return v;
}

namespace {

void verify_type_clauses(const Presentation& p, const CubeFamily& type, int dim,
                         const std::string& name) {
    int g_obj = *p.gamma()->object_index(name);
    int vertex = -1;
    for (int q = 0; q < type.total(dim).size(); ++q)
        if (type.obj_label(q) == g_obj) {
            require(vertex < 0, "type of " + name + ": vertex point not unique");
            vertex = q;
        }
    require(vertex >= 0, "type of " + name + ": no vertex point");
    require(region_info(type, vertex).codim == dim, "type of " + name + ": wrong vertex codim");
    MinimalNeighbourhood mn = minimal_neighbourhood(type, vertex);
    require(mn.family == type, "type of " + name + ": not minimal around the vertex");
    // Well-typedness of every non-vertex point against the lower types.
    for (int q = 0; q < type.total(dim).size(); ++q) {
        if (q == vertex) continue;
        auto gi = p.find_gen(p.gamma()->obj_name(type.obj_label(q)));
        require(gi.has_value(), "type of " + name + ": unknown label");
        CubeFamily nf = normalize(minimal_neighbourhood(type, q).family).nf;
        require(nf == identity_cube(p.type_of(*gi), dim - p.gen_dim(*gi)),
                "type of " + name + ": point fails well-typedness");
    }
}

}  // namespace

Presentation adjoin_zero(const Presentation& p, const std::string& name) {
    require(!p.names().find(name).has_value(), "adjoin: name collision on " + name);
    Presentation out = p;
    out.ns_.grades[0].push_back(name);
    out.rebuild_gamma();
    for (auto& g : out.gens_) {
        g.type = lift_labels(g.type, out.gamma_cat_);
        if (g.dim > 0) {
            g.source = lift_labels(g.source, out.gamma_cat_);
            g.target = lift_labels(g.target, out.gamma_cat_);
        }
    }
    Presentation::Gen g;
    g.name = name;
    g.dim = 0;
    int label = *out.gamma_cat_->object_index(name);
    g.type = CubeFamily::zero(Poset::point(), out.gamma_cat_, {label}, {});
    g.gamma_obj = *out.gamma_poset_.index_of(name);
    out.gens_.push_back(g);
    return out;
}

Presentation adjoin(const Presentation& p, const CubeFamily& x, const CubeFamily& y,
                    const std::string& name, bool equality) {
    const int k = x.dim() + 1;
    require(!p.ns_.find(name).has_value(), "adjoin: name collision on " + name);
    require(k <= p.n_ + 1, "adjoin: dimension overflow");
    if (equality) require(k == p.n_ + 1, "adjoin: equalities live at grade n+1");
    require(x.dim() == y.dim(), "adjoin: boundary dimensions differ");
    // Validate boundaries as morphisms of p.
    MorphismVerdict vx = check_morphism(x, p, x.dim());
    require(vx.ok, "adjoin: source is not a valid morphism (" + vx.clause + ")");
    MorphismVerdict vy = check_morphism(y, p, y.dim());
    require(vy.ok, "adjoin: target is not a valid morphism (" + vy.clause + ")");
    if (x.dim() >= 1) {
        CubeFamily xs = globular_src(lift_labels(x, p.gamma()));
        CubeFamily ys = globular_src(lift_labels(y, p.gamma()));
        CubeFamily xt = globular_tgt(lift_labels(x, p.gamma()));
        CubeFamily yt = globular_tgt(lift_labels(y, p.gamma()));
        require(xs == ys && xt == yt, "adjoin: boundary mismatch between source and target");
    }

    // Proof irrelevance: an equality with the same boundary pair is an alias.
    if (equality) {
        for (int g = 0; g < p.generator_count(); ++g)
            if (p.gen_dim(g) == k && p.source_of(g) == lift_labels(x, p.gamma()) &&
                p.target_of(g) == lift_labels(y, p.gamma()))
                return p;
    }

    Presentation out = p;
    out.ns_.grades[k].push_back(name);
    std::string inv_name;
    if (equality) {
        inv_name = name + "~";
        while (out.ns_.find(inv_name).has_value()) inv_name += "~";
        bool have_inverse = false;
        for (int g = 0; g < p.generator_count(); ++g)
            if (p.gen_dim(g) == k && p.source_of(g) == lift_labels(y, p.gamma()) &&
                p.target_of(g) == lift_labels(x, p.gamma()))
                have_inverse = true;
        if (!have_inverse) out.ns_.grades[k].push_back(inv_name);
        else inv_name.clear();
    }
    out.rebuild_gamma();

    // Transport existing types and boundaries into the extended Gamma.
    for (auto& g : out.gens_) {
        g.type = lift_labels(g.type, out.gamma_cat_);
        if (g.dim > 0) {
            g.source = lift_labels(g.source, out.gamma_cat_);
            g.target = lift_labels(g.target, out.gamma_cat_);
        }
    }
    auto add_gen = [&](const std::string& nm, const CubeFamily& src, const CubeFamily& tgt) {
        Presentation::Gen g;
        g.name = nm;
        g.dim = k;
        g.source = lift_labels(src, out.gamma_cat_);
        g.target = lift_labels(tgt, out.gamma_cat_);
        int label = *out.gamma_cat_->object_index(nm);
        g.type = double_cone(g.source, g.target, out.gamma_cat_, label);
        g.gamma_obj = *out.gamma_poset_.index_of(nm);
        out.gens_.push_back(g);
        verify_type_clauses(out, out.gens_.back().type, k, nm);
    };
    add_gen(name, x, y);
    if (equality && !inv_name.empty()) add_gen(inv_name, y, x);
    return out;
}

PresentationMapVerdict check_presentation_map(const std::map<std::string, std::string>& alpha,
                                              const Presentation& p, const Presentation& q) {
    PresentationMapVerdict v;
    // Build the induced functor on Gamma totals.
    std::vector<int> obj(p.gamma()->objects());
    for (int o = 0; o < p.gamma()->objects(); ++o) {
        const std::string& n = p.gamma()->obj_name(o);
        auto it = alpha.find(n);
        if (it == alpha.end()) {
            v.why = "map undefined on " + n;
            return v;
        }
        auto pi = p.names().find(n);
        auto qi = q.names().find(it->second);
        if (!qi) {
            v.why = "image name unknown: " + it->second;
            return v;
        }
        if (pi->first != qi->first) {
            v.why = "grade violation on " + n;
            return v;
        }
        obj[o] = *q.gamma()->object_index(it->second);
    }
    std::vector<int> arr(p.gamma()->arrow_count());
    for (int f = 0; f < p.gamma()->arrow_count(); ++f) {
        const auto& a = p.gamma()->arrow(f);
        auto u = q.gamma()->unique_arrow(obj[a.src], obj[a.tgt]);
        invariant(u.has_value(), "check_presentation_map: gamma image arrow missing");
        arr[f] = *u;
    }
    CatFunctor functor(p.gamma(), q.gamma(), obj, arr);
    for (int g = 0; g < p.generator_count(); ++g) {
        auto qg = q.find_gen(alpha.at(p.gen_name(g)));
        if (!qg) {
            v.why = "image generator missing";
            return v;
        }
        if (!(relabel(p.type_of(g), functor) == q.type_of(*qg))) {
            v.why = "type of " + p.gen_name(g) + " is not preserved";
            return v;
        }
    }
    v.ok = true;
    return v;
}

Presentation presentation_colimit(const std::vector<Presentation>& chain) {
    require(!chain.empty(), "presentation_colimit: empty chain");
    for (size_t i = 0; i + 1 < chain.size(); ++i) {
        // Each link must be an inclusion (identity on names).
        std::map<std::string, std::string> incl;
        for (int g = 0; g < chain[i].generator_count(); ++g)
            incl[chain[i].gen_name(g)] = chain[i].gen_name(g);
        // All gamma objects (not only generators with cached types) must exist.
        for (int o = 0; o < chain[i].gamma()->objects(); ++o) {
            const std::string& n = chain[i].gamma()->obj_name(o);
            require(chain[i + 1].names().find(n).has_value(),
                    "presentation_colimit: link is not an inclusion (missing " + n + ")");
        }
        PresentationMapVerdict v = check_presentation_map(incl, chain[i], chain[i + 1]);
        require(v.ok, "presentation_colimit: non-inclusion link (" + v.why + ")");
    }
    return chain.back();
}

GlobularSet globular_quotient(const GlobularSet& s, int n) {
    s.validate();
    require(n >= 0 && n < int(s.grade.size()), "globular_quotient: degree out of range");
    GlobularSet out;
    out.grade.assign(s.grade.begin(), s.grade.begin() + n + 1);
    out.src.assign(s.src.begin(), s.src.begin() + std::max(0, n));
    out.tgt.assign(s.tgt.begin(), s.tgt.begin() + std::max(0, n));
    if (n + 1 >= int(s.grade.size())) return out;
    // Union-find over degree-n elements, merging s(h) ~ t(h).
    std::vector<int> parent(s.grade[n].size());
    for (size_t i = 0; i < parent.size(); ++i) parent[i] = int(i);
    std::function<int(int)> find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (size_t h = 0; h < s.grade[n + 1].size(); ++h)
        parent[find(s.src[n][h])] = find(s.tgt[n][h]);
    // Classes named after their least representative, brackets added when the
    // class is non-trivial.
    std::vector<int> cls(parent.size(), -1);
    std::vector<std::string> names;
    std::vector<int> rep;
    for (size_t i = 0; i < parent.size(); ++i) {
        int r = find(int(i));
        if (cls[r] == -1) {
            cls[r] = int(names.size());
            names.push_back(s.grade[n][r]);
            rep.push_back(r);
        }
        cls[i] = cls[r];
    }
    for (size_t c = 0; c < names.size(); ++c) {
        int count = 0;
        for (size_t i = 0; i < parent.size(); ++i)
            if (cls[i] == int(c)) ++count;
        if (count > 1) names[c] = "[" + names[c] + "]";
    }
    out.grade[n] = names;
    if (n >= 1) {
        out.src[n - 1].assign(names.size(), 0);
        out.tgt[n - 1].assign(names.size(), 0);
        for (size_t i = 0; i < s.grade[n].size(); ++i) {
            out.src[n - 1][cls[i]] = s.src[n - 1][i];
            out.tgt[n - 1][cls[i]] = s.tgt[n - 1][i];
        }
    }
    out.validate();
    return out;
}

NFoldPresentation::NFoldPresentation(int n, std::vector<NFoldGenerator> gens)
    : n_(n), gens_(std::move(gens)) {
    // Gamma: all names, arrows wherever the type vectors are componentwise <=.
    std::vector<std::string> names;
    for (const auto& g : gens_) {
        require(int(g.alpha.size()) == n + 1, "n-fold: alpha must have n+1 bits");
        names.push_back(g.name);
    }
    std::vector<std::pair<int, int>> arrows;
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = 0; j < gens_.size(); ++j) {
            if (i == j) continue;
            bool leq = true, equal = true;
            for (int b = 0; b <= n; ++b) {
                if (gens_[i].alpha[b] > gens_[j].alpha[b]) leq = false;
                if (gens_[i].alpha[b] != gens_[j].alpha[b]) equal = false;
            }
            if (leq && !equal) arrows.push_back({int(i), int(j)});
        }
    gamma_poset_ = Poset(names, arrows);
    gamma_cat_ = std::make_shared<FiniteCategory>(FiniteCategory::from_poset(gamma_poset_));
    // Validate types: minimality, dimensionality (region type = alpha bits),
    // well-typedness.
    for (auto& g : gens_) g.type = lift_labels(g.type, gamma_cat_);
    for (const auto& g : gens_) {
        require(g.type.dim() == n, "n-fold: types are n-cubes");
        int label = *gamma_cat_->object_index(g.name);
        int vertex = -1;
        for (int q = 0; q < g.type.total(n).size(); ++q)
            if (g.type.obj_label(q) == label) {
                require(vertex < 0, "n-fold type of " + g.name + ": vertex not unique");
                vertex = q;
            }
        require(vertex >= 0, "n-fold type of " + g.name + ": no vertex");
        Region r = region_info(g.type, vertex);
        for (int b = 0; b < n; ++b)
            require(r.type_bits[b] == g.alpha[b], "n-fold type of " + g.name + ": wrong region type");
        require(minimal_neighbourhood(g.type, vertex).family == g.type,
                "n-fold type of " + g.name + ": not minimal");
        require(is_normalized(g.type), "n-fold type of " + g.name + ": not normalized");
        for (int q = 0; q < g.type.total(n).size(); ++q) {
            if (q == vertex) continue;
            auto f = find_gen(gamma_cat_->obj_name(g.type.obj_label(q)));
            require(f.has_value(), "n-fold type: unknown label");
            CubeFamily nf = normalize(minimal_neighbourhood(g.type, q).family).nf;
            require(nf == gens_[*f].type, "n-fold type of " + g.name + ": point fails typing");
        }
    }
}

std::optional<int> NFoldPresentation::find_gen(const std::string& name) const {
    for (size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return int(i);
    return std::nullopt;
}

MorphismVerdict check_nfold_morphism(const CubeFamily& d_in, const NFoldPresentation& p,
                                     const std::vector<int>& alpha) {
    MorphismVerdict v;
    const int n = p.n();
    if (d_in.dim() != n || int(alpha.size()) < n) {
        v.clause = "dimension";
        return v;
    }
    CubeFamily d;
    try {
        d = lift_labels(d_in, p.gamma());
    } catch (const check_error& e) {
        v.clause = "labels";
        v.detail = e.what();
        return v;
    }
    if (!is_normalized(d)) {
        v.clause = "normalized";
        return v;
    }
    for (int i = 1; i <= n; ++i) {
        if (alpha[i - 1] != 0) continue;
        for (int h : d.level(i).heights)
            if (h != 0) {
                v.clause = "level-triviality";
                v.detail = "level " + std::to_string(i) + " must be trivial where alpha is 0";
                return v;
            }
    }
    for (int q = 0; q < d.total(n).size(); ++q) {
        auto g = p.find_gen(p.gamma()->obj_name(d.obj_label(q)));
        invariant(g.has_value(), "check_nfold_morphism: label outside Gamma");
        CubeFamily nf = normalize(minimal_neighbourhood(d, q).family).nf;
        if (!(nf == p.gens()[*g].type)) {
            v.clause = "well-typed";
            v.witness_point = q;
            return v;
        }
    }
    v.ok = true;
    return v;
}

Presentation build_presentation(const PresentationDoc& doc) {
    Presentation p(doc.n);
    for (const auto& g : doc.generators) {
        if (g.dim == 0) {
            p = adjoin_zero(p, g.name);
            continue;
        }
        require(g.source.has_value() && g.target.has_value(),
                "generator " + g.name + ": missing boundaries");
        require(g.source->dim() == g.dim - 1,
                "generator " + g.name + ": boundary dimension disagrees with dim");
        p = adjoin(p, *g.source, *g.target, g.name, g.dim == p.n() + 1);
    }
    return p;
}

}  // namespace cubecat
