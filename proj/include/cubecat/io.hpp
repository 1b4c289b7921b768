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

#ifndef CUBECAT_IO_HPP
#define CUBECAT_IO_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "cubecat/cube.hpp"
#include "cubecat/presentation.hpp"

namespace cubecat {

using Json = nlohmann::ordered_json;

// --- categories -------------------------------------------------------------

// Serializable label categories: discrete, posetal, or El(S)^op of a globular
// set. General composition tables are not part of the file format.
Json category_to_json(const FiniteCategory& c, const std::optional<GlobularSet>& origin);
CategoryRef category_from_json(const Json& j, std::optional<GlobularSet>* origin_out = nullptr);

// --- cubes -------------------------------------------------------------------

// Canonical cube payload: base, levels keyed by coordinate tuples, labels.
Json cube_to_json(const CubeFamily& a);
CubeFamily cube_from_json(const Json& j, CategoryRef cat);

// Canonical standalone text for hashing and deterministic ordering; includes
// the label category.
std::string canonical_cube_text(const CubeFamily& a);

// --- documents ---------------------------------------------------------------

struct MorphismDecl {
    std::string name;
    CubeFamily cube;
};

struct CubesDoc {
    CategoryRef cat;
    std::optional<GlobularSet> cat_origin;
    std::vector<std::pair<std::string, CubeFamily>> cubes;
};

struct Document {
    std::string kind;  // "presentation" | "cubes"
    std::optional<PresentationDoc> presentation;
    std::optional<CubesDoc> cubes;
};

Document parse_document(const std::string& text);
std::string print_document(const Document& doc);

}  // namespace cubecat

#endif
