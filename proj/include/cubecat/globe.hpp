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

#ifndef CUBECAT_GLOBE_HPP
#define CUBECAT_GLOBE_HPP

#include <optional>
#include <string>

#include "cubecat/collapse.hpp"
#include "cubecat/cube.hpp"
#include "cubecat/embed.hpp"

namespace cubecat {

// Local triviality: every arrow restriction of the family normalizes to the
// constant functor. Global triviality: constant on connected components.
bool is_locally_trivial(const CubeFamily& a);
bool is_globally_trivial(const CubeFamily& a);
bool is_constant(const CubeFamily& a);

// Strict globularity: every level-k labelling locally trivial on the regular
// content of G^k. Boundary mode checks the source/target section images only.
bool is_globular(const CubeFamily& a, bool boundary_mode = false);

// Globular source/target of a globular cube over the point (n >= 1): the
// level-1 labelling restricted at fiber value 0 resp. 2H.
CubeFamily globular_src(const CubeFamily& a);
CubeFamily globular_tgt(const CubeFamily& a);
CubeFamily iter_globular_src(const CubeFamily& a, int k);
CubeFamily iter_globular_tgt(const CubeFamily& a, int k);

// The ?-extension (double cone of a family): adjoins a cone point labelled by
// `top` over the whole family. `top` must be an object of `extended` (a
// category containing a.cat()) with a unique arrow from every label used on
// the source/target images of a. Preconditions: a normalized, globular, and
// constant on its source and target section images.
struct ConeResult {
    CubeFamily family;   // over the base with a fresh top object
    int vertex;          // the unique top-labelled point of the top total
};
ConeResult adjoin_top(const CubeFamily& a, CategoryRef extended, int top_label);

// Double cone |S ->g T|: the unique globular normalized cube with source S,
// target T and a single g-labelled vertex of full codimension.
CubeFamily double_cone(const CubeFamily& s, const CubeFamily& t, CategoryRef cat, int g_label);

// Terminal n-globe over El(G(-,n))^op.
struct TerminalGlobe {
    CubeFamily cube;
    GlobularSet globular_set;  // the representable G(-,n)
};
TerminalGlobe terminal_globe(int n);

}  // namespace cubecat

#endif
