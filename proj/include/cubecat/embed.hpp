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

#ifndef CUBECAT_EMBED_HPP
#define CUBECAT_EMBED_HPP

#include <optional>
#include <string>
#include <vector>

#include "cubecat/collapse.hpp"
#include "cubecat/cube.hpp"

namespace cubecat {

// Open section of an interval family: a regular fiber value per base object,
// functorial as a section of the bundle.
struct OpenSection {
    std::vector<int> at;  // even values
};

bool is_open_section(const Poset& base, const SiFamily& fam, const OpenSection& q);
OpenSection source_section(const Poset& base, const SiFamily& fam);  // all zeros
OpenSection target_section(const Poset& base, const SiFamily& fam);  // all 2H

struct EndpointPair {
    OpenSection lo, hi;  // lo <= hi pointwise
};

// Fiberwise window [lo, hi]: the subfamily and the family embedding functor
// on level totals (x, c) -> (x, c + lo(x)).
struct FamilyEmbedding {
    SiFamily subfamily;
    PosetMap j;  // sub total -> parent total
};
FamilyEmbedding family_embedding(const Poset& base, const SiFamily& fam, const EndpointPair& e,
                                 const TotalPoset& parent_total);

// A multi-level embedding is a fibrewise open+injective MultiLevelMap with
// injective base component.
using Embedding = MultiLevelMap;

bool is_embedding(const Embedding& e);

// k-level embedding determined by endpoints on level k: identity below k, the
// family embedding at k, iterated pullbacks above.
Embedding k_level_embedding(const CubeFamily& a, int k, const EndpointPair& e);
// Restriction embedding along a full subposet of the base.
Embedding restriction_embedding(const CubeFamily& a, const std::vector<int>& base_objects);
// Canonical decomposition: a restriction embedding followed by one k-level
// embedding per level 1..n (application order).
std::vector<Embedding> decompose_embedding(const Embedding& theta);

// theta^{-1} phi when im(phi^n) is inside im(theta^n); otherwise a witness
// point outside the image.
struct FactorResult {
    std::optional<Embedding> factor;
    int witness = -1;  // top point of phi's image not in theta's image
};
FactorResult factor_embedding(const Embedding& phi, const Embedding& theta);

// Minimal neighbourhood A//p: the smallest endpoint-delimited subfamily whose
// top image contains the over-poset of p; built by the per-level minimal-
// endpoint recursion.
struct MinimalNeighbourhood {
    CubeFamily family;
    Embedding iota;
    int point;  // the preimage of p in the subfamily's top total
};
MinimalNeighbourhood minimal_neighbourhood(const CubeFamily& a, int p);

// Restriction of a multi-level collapse along an embedding: the collapsed
// subfamily, the restricted collapse and the collapsed embedding.
struct RestrictedCollapse {
    MultiLevelMap restricted;  // B -> B~
    Embedding collapsed;       // B~ -> A~
};
RestrictedCollapse restrict_collapse(const Embedding& theta, const MultiLevelMap& coll);

}  // namespace cubecat

#endif
