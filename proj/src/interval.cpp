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

#include "cubecat/interval.hpp"

#include <algorithm>
#include <set>

namespace cubecat {

Poset interval_poset(int height) {
    std::vector<std::string> names;
    std::vector<std::pair<int, int>> arrows;
    for (int a = 0; a <= 2 * height; ++a) names.push_back(std::to_string(a));
    for (int a = 0; a < 2 * height; ++a) {
        if (is_reg(a)) arrows.push_back({a, a + 1});  // a -> a+1
        else arrows.push_back({a + 1, a});            // a+1 -> a
    }
    return Poset(std::move(names), arrows);
}

SiMap::SiMap(int dom_height, int cod_height, std::vector<int> sing_map)
    : dom_h(dom_height), cod_h(cod_height), sing(std::move(sing_map)) {
    require(int(sing.size()) == dom_h, "SI-morphism: wrong number of singular heights");
    int prev = -1;
    for (int v : sing) {
        require(is_sing(v) && v >= 1 && v <= 2 * cod_h - 1, "SI-morphism: image not a singular height");
        require(v >= prev, "SI-morphism: not monotone");
        prev = v;
    }
}

SiMap SiMap::identity(int h) {
    std::vector<int> s;
    for (int i = 0; i < h; ++i) s.push_back(2 * i + 1);
    return SiMap(h, h, std::move(s));
}

SiMap SiMap::subset_injection(int cod_height, const std::vector<int>& subset) {
    std::vector<int> s(subset);
    std::sort(s.begin(), s.end());
    const int dom_height = int(s.size());
    return SiMap(dom_height, cod_height, std::move(s));
}

int SiMap::ext(int a) const {
    if (a == -1) return -1;
    if (a == 2 * dom_h + 1) return 2 * cod_h + 1;
    return (*this)(a);
}

SiMap SiMap::then(const SiMap& g) const {
    require(cod_h == g.dom_h, "SI-morphism composition: height mismatch");
    std::vector<int> s(sing.size());
    for (size_t i = 0; i < sing.size(); ++i) s[i] = g.sing[(sing[i] - 1) / 2];
    return SiMap(dom_h, g.cod_h, std::move(s));
}

bool SiMap::injective() const {
    for (size_t i = 1; i < sing.size(); ++i)
        if (sing[i] == sing[i - 1]) return false;
    return true;
}

std::vector<int> SiMap::image() const {
    std::vector<int> out(sing);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

RegMap::RegMap(int dom_height, int cod_height, std::vector<int> reg_map)
    : dom_h(dom_height), cod_h(cod_height), reg(std::move(reg_map)) {
    require(int(reg.size()) == dom_h + 1, "reg-morphism: wrong number of segments");
    int prev = -1;
    for (int v : reg) {
        require(is_reg(v) && v >= 0 && v <= 2 * cod_h, "reg-morphism: image not regular");
        require(v >= prev, "reg-morphism: not monotone");
        prev = v;
    }
    require(reg.front() == 0 && reg.back() == 2 * cod_h, "reg-morphism: endpoints not preserved");
}

RegMap regular_dual(const SiMap& f) {
    // f^reg(a) = b iff ext f(b-1) < a < ext f(b+1), for a in reg(cod).
    std::vector<int> reg(f.cod_h + 1, -1);
    for (int a = 0; a <= 2 * f.cod_h; a += 2)
        for (int b = 0; b <= 2 * f.dom_h; b += 2)
            if (f.ext(b - 1) < a && a < f.ext(b + 1)) {
                reg[a / 2] = b;
                break;
            }
    return RegMap(f.cod_h, f.dom_h, std::move(reg));
}

SiMap singular_dual(const RegMap& g) {
    // g^sing(c) = d iff g(d-1) < c < g(d+1), for c in sing(cod of g^sing's dom)...
    // With g : J ->reg I, the dual maps sing(I) -> sing(J).
    std::vector<int> s(g.cod_h, -1);
    for (int c = 1; c <= 2 * g.cod_h - 1; c += 2)
        for (int d = 1; d <= 2 * g.dom_h - 1; d += 2)
            if (g(d - 1) < c && c < g(d + 1)) {
                s[(c - 1) / 2] = d;
                break;
            }
    return SiMap(g.cod_h, g.dom_h, std::move(s));
}

bool realise_at(const SiMap& f, int a, int b) {
    if (a < 0 || a > 2 * f.dom_h || b < 0 || b > 2 * f.cod_h) return false;
    if (is_sing(a)) return f(a) == b;                       // Sing1
    return f.ext(a - 1) <= b && b <= f.ext(a + 1);          // Sing2
}

ProfRel realise(const SiMap& f) {
    ProfRel r(interval_poset(f.dom_h), interval_poset(f.cod_h));
    for (int a = 0; a <= 2 * f.dom_h; ++a)
        for (int b = 0; b <= 2 * f.cod_h; ++b)
            if (realise_at(f, a, b)) r.set(a, b);
    return r;
}

std::vector<Edge> edges(const SiMap& f) {
    std::vector<Edge> out;
    Edge e{0, 0};
    out.push_back(e);
    const int maxn = 2 * (f.dom_h + f.cod_h);
    while (e.norm() < maxn) {
        e = step_forward(f, e).edge;
        out.push_back(e);
    }
    return out;
}

EdgeStep step_forward(const SiMap& f, Edge e) {
    require(realise_at(f, e.source, e.target), "step_forward: not an edge");
    require(e.norm() < 2 * (f.dom_h + f.cod_h), "step_forward: stepping past the extremal edge");
    const int s = e.source, t = e.target;
    if (is_reg(s) && is_reg(t))  // DL+
        return {{s, t + 1}, {t, t + 1}, FillerSide::Target};
    if (is_sing(s) && is_sing(t))  // UL+
        return {{s + 1, t}, {s + 1, s}, FillerSide::Source};
    invariant(is_reg(s) && is_sing(t), "step_forward: impossible edge parity");
    if (f.ext(s + 1) > t)  // DR+
        return {{s, t + 1}, {t + 1, t}, FillerSide::Target};
    // UR+ : ext f(s+1) == t
    return {{s + 1, t}, {s, s + 1}, FillerSide::Source};
}

EdgeStep step_backward(const SiMap& f, Edge e) {
    require(realise_at(f, e.source, e.target), "step_backward: not an edge");
    require(e.norm() > 0, "step_backward: stepping past the extremal edge");
    const int s = e.source, t = e.target;
    RegMap g = regular_dual(f);
    if (is_reg(s) && is_sing(t)) {
        if (g(t - 1) == s)  // DL-
            return {{s, t - 1}, {t - 1, t}, FillerSide::Target};
        // UL- : g(t-1) < s
        return {{s - 1, t}, {s, s - 1}, FillerSide::Source};
    }
    if (is_reg(s) && is_reg(t))  // DR-
        return {{s, t - 1}, {t, t - 1}, FillerSide::Target};
    invariant(is_sing(s) && is_sing(t), "step_backward: impossible edge parity");
    // UR-
    return {{s - 1, t}, {s - 1, s}, FillerSide::Source};
}

int ordered_sum(int height_i, int height_j) { return height_i + height_j; }

SiMap ordered_sum_mor(const SiMap& f, const SiMap& g) {
    std::vector<int> s;
    for (int v : f.sing) s.push_back(v);
    for (int v : g.sing) s.push_back(v + 2 * f.cod_h);
    return SiMap(f.dom_h + g.dom_h, f.cod_h + g.cod_h, std::move(s));
}

OpenClass classify_poset_functor(int dom_h, int cod_h, const std::vector<int>& obj_map) {
    require(int(obj_map.size()) == 2 * dom_h + 1, "classify: object map size mismatch");
    for (int v : obj_map) require(v >= 0 && v <= 2 * cod_h, "classify: image out of range");
    for (int a = 0; a < 2 * dom_h; ++a)
        require(obj_map[a] <= obj_map[a + 1], "classify: not monotone in direction order");
    for (int a = 0; a <= 2 * dom_h; ++a)
        for (int b = 0; b <= 2 * dom_h; ++b)
            if (interval_leq(a, b))
                require(interval_leq(obj_map[a], obj_map[b]), "classify: not functorial");
    OpenClass c;
    c.open = true;
    for (int a = 0; a <= 2 * dom_h; a += 2)
        if (is_sing(obj_map[a])) c.open = false;
    std::set<int> image(obj_map.begin(), obj_map.end());
    bool surj = int(image.size()) == 2 * cod_h + 1;
    bool inj = int(image.size()) == 2 * dom_h + 1;
    c.collapse = c.open && surj;
    c.embedding = c.open && inj;
    return c;
}

std::vector<int> collapse_functor_of_mono(const SiMap& t) {
    require(t.injective(), "collapse_functor_of_mono: non-injective monomorphism");
    // s : J -> I with s(a) = b iff (b singular and t(b) = a) or
    // (b regular and ext t(b-1) < a < ext t(b+1)).
    std::vector<int> obj(2 * t.cod_h + 1, -1);
    for (int b = 1; b <= 2 * t.dom_h - 1; b += 2) obj[t(b)] = b;
    for (int a = 0; a <= 2 * t.cod_h; ++a) {
        if (obj[a] != -1) continue;
        for (int b = 0; b <= 2 * t.dom_h; b += 2)
            if (t.ext(b - 1) < a && a < t.ext(b + 1)) {
                obj[a] = b;
                break;
            }
    }
    return obj;
}

SiMap underlying_mono(int dom_h, int cod_h, const std::vector<int>& obj_map) {
    OpenClass c = classify_poset_functor(dom_h, cod_h, obj_map);
    require(c.collapse, "underlying_mono: functor is not a collapse");
    std::vector<int> s(cod_h, -1);
    for (int a = 0; a <= 2 * dom_h; ++a)
        if (is_sing(obj_map[a])) {
            invariant(s[(obj_map[a] - 1) / 2] == -1 || s[(obj_map[a] - 1) / 2] == a,
                      "underlying_mono: singular preimage not unique");
            s[(obj_map[a] - 1) / 2] = a;
        }
    return SiMap(cod_h, dom_h, std::move(s));
}

}  // namespace cubecat
