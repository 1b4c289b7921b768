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

#include "cubecat/io.hpp"

#include <algorithm>
#include <map>

namespace cubecat {

namespace {

[[noreturn]] void semantic(const std::string& path, const std::string& what) {
    throw check_error("document error at " + path + ": " + what);
}

const Json& field(const Json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) semantic(path, "missing key '" + key + "'");
    return *it;
}

Json poset_to_json(const Poset& p) {
    Json j;
    j["objects"] = Json::array();
    for (int i = 0; i < p.size(); ++i) j["objects"].push_back(p.name(i));
    j["hasse"] = Json::array();
    for (auto [a, b] : p.hasse()) j["hasse"].push_back(Json::array({p.name(a), p.name(b)}));
    return j;
}

Poset poset_from_json(const Json& j, const std::string& path) {
    if (!j.is_object()) semantic(path, "poset must be an object");
    std::vector<std::string> names;
    for (const auto& n : field(j, "objects", path)) names.push_back(n.get<std::string>());
    Poset tmp = Poset::discrete(names);
    std::vector<std::pair<int, int>> arrows;
    for (const auto& a : field(j, "hasse", path)) {
        if (!a.is_array() || a.size() != 2) semantic(path + ".hasse", "arrow must be a pair");
        auto i = tmp.index_of(a[0].get<std::string>());
        auto k = tmp.index_of(a[1].get<std::string>());
        if (!i || !k) semantic(path + ".hasse", "unknown object in arrow");
        arrows.push_back({*i, *k});
    }
    try {
        return Poset(names, arrows);
    } catch (const check_error& e) {
        semantic(path, e.what());
    }
}

// Coordinate tuple of a point in the k-level total poset: base object index
// followed by the fiber values along the projections.
Json coord_of(const CubeFamily& a, int level, int point) {
    std::vector<int> vals;
    int w = point;
    for (int l = level; l >= 1; --l) {
        vals.push_back(a.total_info(l).value[w]);
        w = a.total_info(l).parent[w];
    }
    Json j = Json::array();
    j.push_back(w);
    for (auto it = vals.rbegin(); it != vals.rend(); ++it) j.push_back(*it);
    return j;
}

int point_of(const CubeFamily& a, int level, const Json& coord, const std::string& path) {
    if (!coord.is_array() || int(coord.size()) != level + 1)
        semantic(path, "coordinate tuple must have length " + std::to_string(level + 1));
    for (const auto& v : coord)
        if (!v.is_number_integer()) semantic(path, "coordinates must be integers");
    int w = coord[0].get<int>();
    if (w < 0 || w >= a.base().size()) semantic(path, "base index out of range");
    for (int l = 1; l <= level; ++l) {
        int v = coord[l].get<int>();
        const TotalPoset& t = a.total_info(l);
        if (v < 0 || v >= int(t.first[w].size())) semantic(path, "fiber value out of range");
        w = t.at(w, v);
    }
    return w;
}

}  // namespace

Json category_to_json(const FiniteCategory& c, const std::optional<GlobularSet>& origin) {
    Json j;
    if (origin) {
        Json g;
        g["grades"] = Json::array();
        for (const auto& gr : origin->grade) {
            Json row = Json::array();
            for (const auto& n : gr) row.push_back(n);
            g["grades"].push_back(row);
        }
        g["src"] = origin->src;
        g["tgt"] = origin->tgt;
        j["globular_elements_op"] = g;
        return j;
    }
    // Posetal categories print as posets (arrows are forced).
    require(c.posetal(), "category_to_json: only posetal or El(S)^op categories serialize");
    std::vector<std::string> names;
    for (int o = 0; o < c.objects(); ++o) names.push_back(c.obj_name(o));
    std::vector<std::pair<int, int>> arrows;
    for (int a = 0; a < c.arrow_count(); ++a)
        if (!c.is_identity(a)) arrows.push_back({c.arrow(a).src, c.arrow(a).tgt});
    j["poset"] = poset_to_json(Poset(names, arrows));
    return j;
}

CategoryRef category_from_json(const Json& j, std::optional<GlobularSet>* origin_out) {
    if (origin_out) origin_out->reset();
    if (j.contains("poset")) {
        Poset p = poset_from_json(j["poset"], "category.poset");
        return std::make_shared<FiniteCategory>(FiniteCategory::from_poset(p));
    }
    if (j.contains("discrete")) {
        std::vector<std::string> names;
        for (const auto& n : j["discrete"]) names.push_back(n.get<std::string>());
        return std::make_shared<FiniteCategory>(FiniteCategory::discrete(names));
    }
    if (j.contains("globular_elements_op")) {
        const Json& g = j["globular_elements_op"];
        GlobularSet s;
        for (const auto& row : field(g, "grades", "category")) {
            s.grade.push_back({});
            for (const auto& n : row) s.grade.back().push_back(n.get<std::string>());
        }
        s.src = field(g, "src", "category").get<std::vector<std::vector<int>>>();
        s.tgt = field(g, "tgt", "category").get<std::vector<std::vector<int>>>();
        s.validate();
        if (origin_out) *origin_out = s;
        return std::make_shared<FiniteCategory>(elements_category(s));
    }
    semantic("category", "expected one of 'poset', 'discrete', 'globular_elements_op'");
}

Json cube_to_json(const CubeFamily& a) {
    Json j;
    j["base"] = poset_to_json(a.base());
    j["levels"] = Json::array();
    for (int k = 1; k <= a.dim(); ++k) {
        Json lvl;
        lvl["heights"] = Json::array();
        const Poset& kb = a.total(k - 1);
        for (int x = 0; x < kb.size(); ++x) {
            Json entry = Json::array();
            entry.push_back(coord_of(a, k - 1, x));
            entry.push_back(a.level(k).heights[x]);
            lvl["heights"].push_back(entry);
        }
        lvl["maps"] = Json::array();
        for (auto [x, y] : kb.hasse()) {
            Json entry = Json::array();
            entry.push_back(coord_of(a, k - 1, x));
            entry.push_back(coord_of(a, k - 1, y));
            Json pairs = Json::array();
            const SiMap& m = a.level(k).between(kb, x, y);
            for (int i = 0; i < m.dom_h; ++i)
                pairs.push_back(Json::array({2 * i + 1, m.sing[i]}));
            entry.push_back(pairs);
            lvl["maps"].push_back(entry);
        }
        j["levels"].push_back(lvl);
    }
    Json labels;
    labels["objects"] = Json::array();
    const int n = a.dim();
    for (int p = 0; p < a.total(n).size(); ++p)
        labels["objects"].push_back(
            Json::array({coord_of(a, n, p), a.cat()->obj_name(a.obj_label(p))}));
    labels["arrows"] = Json::array();
    const auto& arrows = a.total(n).strict_arrows();
    for (size_t i = 0; i < arrows.size(); ++i)
        labels["arrows"].push_back(Json::array({coord_of(a, n, arrows[i].first),
                                                coord_of(a, n, arrows[i].second),
                                                a.cat()->arrow(a.arrow_labels()[i]).name}));
    j["labels"] = labels;
    return j;
}

CubeFamily cube_from_json(const Json& j, CategoryRef cat) {
    Poset base = poset_from_json(field(j, "base", "cube"), "cube.base");
    const Json& jlevels = field(j, "levels", "cube");
    // Build levels one at a time so coordinates can be resolved.
    std::vector<SiFamily> levels;
    CubeFamily partial = CubeFamily::zero(base, std::make_shared<FiniteCategory>(
                                                    FiniteCategory::discrete({"?"})),
                                          std::vector<int>(base.size(), 0), [&] {
                                              std::vector<int> arr;
                                              for (size_t i = 0; i < base.strict_arrows().size(); ++i)
                                                  arr.push_back(0);
                                              return arr;
                                          }());
    for (int k = 1; k <= int(jlevels.size()); ++k) {
        const std::string path = "cube.levels[" + std::to_string(k - 1) + "]";
        const Json& lvl = jlevels[k - 1];
        const Poset& kb = (k == 1) ? base : partial.total(k - 1);
        std::vector<int> heights(kb.size(), -1);
        for (const auto& entry : field(lvl, "heights", path)) {
            if (!entry.is_array() || entry.size() != 2) semantic(path + ".heights", "bad entry");
            int x = point_of(partial, k - 1, entry[0], path + ".heights");
            int h = entry[1].get<int>();
            if (h < 0) semantic(path + ".heights", "negative height");
            heights[x] = h;
        }
        for (int x = 0; x < kb.size(); ++x)
            if (heights[x] < 0) semantic(path + ".heights", "missing fiber " + kb.name(x));
        std::map<std::pair<int, int>, SiMap> hasse;
        for (const auto& entry : field(lvl, "maps", path)) {
            if (!entry.is_array() || entry.size() != 3) semantic(path + ".maps", "bad entry");
            int x = point_of(partial, k - 1, entry[0], path + ".maps");
            int y = point_of(partial, k - 1, entry[1], path + ".maps");
            std::vector<int> sing(heights[x], -1);
            for (const auto& pr : entry[2]) {
                if (!pr.is_array() || pr.size() != 2) semantic(path + ".maps", "bad pair");
                int from = pr[0].get<int>(), to = pr[1].get<int>();
                if (!is_sing(from) || from < 1 || from > 2 * heights[x] - 1)
                    semantic(path + ".maps", "map key is not a singular height of the fiber");
                sing[(from - 1) / 2] = to;
            }
            for (int v : sing)
                if (v < 0) semantic(path + ".maps", "map misses a singular height");
            try {
                hasse.insert({{x, y}, SiMap(heights[x], heights[y], sing)});
            } catch (const check_error& e) {
                semantic(path + ".maps", e.what());
            }
        }
        SiFamily fam;
        try {
            fam = close_si_family(kb, heights, hasse);
        } catch (const check_error& e) {
            semantic(path, e.what());
        }
        levels.push_back(fam);
        // Extend the scaffold (labels stay dummy until the end).
        std::vector<SiFamily> sofar(levels);
        TotalPoset t = build_total(kb, fam);
        auto dummy = std::make_shared<FiniteCategory>(FiniteCategory::discrete({"?"}));
        std::vector<int> obj(t.poset.size(), 0), arr(t.poset.strict_arrows().size(), 0);
        partial = CubeFamily::make(base, sofar, dummy, obj, arr);
    }
    const int n = int(levels.size());
    const Json& jlabels = field(j, "labels", "cube");
    std::vector<int> obj(partial.total(n).size(), -1);
    for (const auto& entry : field(jlabels, "objects", "cube.labels")) {
        if (!entry.is_array() || entry.size() != 2) semantic("cube.labels.objects", "bad entry");
        int p = point_of(partial, n, entry[0], "cube.labels.objects");
        auto o = cat->object_index(entry[1].get<std::string>());
        if (!o) semantic("cube.labels.objects", "unknown label " + entry[1].get<std::string>());
        obj[p] = *o;
    }
    for (int p = 0; p < partial.total(n).size(); ++p)
        if (obj[p] < 0) semantic("cube.labels.objects", "missing label for a point");
    const auto& arrows = partial.total(n).strict_arrows();
    std::vector<int> arr(arrows.size(), -1);
    for (const auto& entry : field(jlabels, "arrows", "cube.labels")) {
        if (!entry.is_array() || entry.size() != 3) semantic("cube.labels.arrows", "bad entry");
        int u = point_of(partial, n, entry[0], "cube.labels.arrows");
        int v = point_of(partial, n, entry[1], "cube.labels.arrows");
        auto f = cat->arrow_index(entry[2].get<std::string>());
        if (!f) semantic("cube.labels.arrows", "unknown arrow " + entry[2].get<std::string>());
        bool found = false;
        for (size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i] == std::pair<int, int>{u, v}) {
                arr[i] = *f;
                found = true;
            }
        if (!found) semantic("cube.labels.arrows", "labelled pair is not an arrow");
    }
    for (size_t i = 0; i < arrows.size(); ++i)
        if (arr[i] < 0) {
            // posetal categories: fill in the forced arrow
            auto u = cat->unique_arrow(obj[arrows[i].first], obj[arrows[i].second]);
            if (!u) semantic("cube.labels.arrows", "missing label for an arrow");
            arr[i] = *u;
        }
    try {
        return CubeFamily::make(base, levels, cat, obj, arr);
    } catch (const check_error& e) {
        semantic("cube", e.what());
    }
}

std::string canonical_cube_text(const CubeFamily& a) {
    Json j;
    std::optional<GlobularSet> none;
    if (a.cat()->posetal()) j["category"] = category_to_json(*a.cat(), none);
    else {
        // General categories appear only in-memory; key by their raw tables.
        Json c;
        c["objects"] = Json::array();
        for (int o = 0; o < a.cat()->objects(); ++o) c["objects"].push_back(a.cat()->obj_name(o));
        c["arrows"] = Json::array();
        for (int f = 0; f < a.cat()->arrow_count(); ++f)
            c["arrows"].push_back(Json::array(
                {a.cat()->arrow(f).name, a.cat()->arrow(f).src, a.cat()->arrow(f).tgt}));
        j["category"] = c;
    }
    j["cube"] = cube_to_json(a);
    return j.dump();
}

namespace {

Json presentation_to_json(const PresentationDoc& d) {
    Json j;
    j["kind"] = "presentation";
    j["name"] = d.name;
    j["n"] = d.n;
    j["generators"] = Json::array();
    for (const auto& g : d.generators) {
        Json gj;
        gj["dim"] = g.dim;
        gj["name"] = g.name;
        if (g.source) gj["source"] = cube_to_json(*g.source);
        if (g.target) gj["target"] = cube_to_json(*g.target);
        j["generators"].push_back(gj);
    }
    j["morphisms"] = Json::array();
    for (const auto& m : d.morphisms) {
        Json mj;
        mj["name"] = m.name;
        mj["dim"] = m.dim;
        mj["cube"] = cube_to_json(m.cube);
        j["morphisms"].push_back(mj);
    }
    return j;
}

PresentationDoc presentation_from_json(const Json& j) {
    PresentationDoc d;
    d.name = field(j, "name", "presentation").get<std::string>();
    d.n = field(j, "n", "presentation").get<int>();
    if (d.n < 0) semantic("presentation.n", "dimension must be nonnegative");
    // First pass: the namescope.
    Namescope ns;
    ns.grades.assign(d.n + 2, {});
    for (const auto& gj : field(j, "generators", "presentation")) {
        int dim = field(gj, "dim", "generator").get<int>();
        std::string name = field(gj, "name", "generator").get<std::string>();
        if (dim < 0 || dim > d.n + 1) semantic("generator " + name, "dimension out of range");
        ns.grades[dim].push_back(name);
    }
    try {
        ns.validate();
    } catch (const check_error& e) {
        semantic("presentation.generators", e.what());
    }
    // Second pass: boundaries in the total poset category.
    size_t gi = 0;
    for (const auto& gj : field(j, "generators", "presentation")) {
        GeneratorDecl g;
        g.dim = gj["dim"].get<int>();
        g.name = gj["name"].get<std::string>();
        std::string path = "presentation.generators[" + std::to_string(gi++) + "]";
        if (g.dim > 0) {
            if (!gj.contains("source") || !gj.contains("target"))
                semantic(path, "positive-dimensional generator needs source and target");
            auto cat = std::make_shared<FiniteCategory>(
                FiniteCategory::from_poset(gamma_total(ns, g.dim - 1)));
            g.source = cube_from_json(gj["source"], cat);
            g.target = cube_from_json(gj["target"], cat);
        }
        d.generators.push_back(std::move(g));
    }
    if (j.contains("morphisms")) {
        size_t mi = 0;
        for (const auto& mj : j["morphisms"]) {
            PresentationMorphismDecl m;
            m.name = field(mj, "name", "morphism").get<std::string>();
            m.dim = field(mj, "dim", "morphism").get<int>();
            std::string path = "presentation.morphisms[" + std::to_string(mi++) + "]";
            if (m.dim < 0 || m.dim > d.n + 1) semantic(path, "dimension out of range");
            auto cat = std::make_shared<FiniteCategory>(
                FiniteCategory::from_poset(gamma_total(ns, m.dim)));
            m.cube = cube_from_json(field(mj, "cube", path), cat);
            d.morphisms.push_back(std::move(m));
        }
    }
    return d;
}

}  // namespace

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what());
    }
    if (!j.is_object()) throw parse_error("document must be a JSON object");
    Document d;
    auto kind = j.find("kind");
    if (kind == j.end() || !kind->is_string()) throw parse_error("document needs a 'kind' string");
    d.kind = kind->get<std::string>();
    if (d.kind == "presentation") {
        d.presentation = presentation_from_json(j);
    } else if (d.kind == "cubes") {
        CubesDoc c;
        c.cat = category_from_json(field(j, "category", "document"), &c.cat_origin);
        for (const auto& cj : field(j, "cubes", "document")) {
            std::string name = field(cj, "name", "cubes").get<std::string>();
            c.cubes.push_back({name, cube_from_json(field(cj, "cube", name), c.cat)});
        }
        d.cubes = std::move(c);
    } else {
        semantic("kind", "unknown document kind '" + d.kind + "'");
    }
    return d;
}

std::string print_document(const Document& doc) {
    Json j;
    if (doc.kind == "presentation") {
        invariant(doc.presentation.has_value(), "print_document: missing presentation payload");
        j = presentation_to_json(*doc.presentation);
    } else if (doc.kind == "cubes") {
        invariant(doc.cubes.has_value(), "print_document: missing cubes payload");
        j["kind"] = "cubes";
        j["category"] = category_to_json(*doc.cubes->cat, doc.cubes->cat_origin);
        j["cubes"] = Json::array();
        for (const auto& [name, cube] : doc.cubes->cubes) {
            Json cj;
            cj["name"] = name;
            cj["cube"] = cube_to_json(cube);
            j["cubes"].push_back(cj);
        }
    } else {
        throw internal_error("print_document: unknown kind");
    }
    return j.dump(2) + "\n";
}

}  // namespace cubecat
