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

#ifndef CUBECAT_COLLAPSE_HPP
#define CUBECAT_COLLAPSE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cubecat/cube.hpp"

namespace cubecat {

// Per-base-object subset of singular heights of an interval family; the kept
// heights of a collapse.
struct SubsetSection {
    std::vector<std::vector<int>> at;  // sorted odd values per base object
};

// Injection of interval families: a monic SI-morphism per base object,
// natural in the base.
struct Injection {
    std::vector<SiMap> component;
};

// level-k collapse witness: towers agree strictly below k and the level-k
// labelling factors through the family collapse functor of the injection.
struct KCollapse {
    int level = 0;
    Injection witness;  // und U^{k-1}_B into und U^{k-1}_A
};

// Strictly descending list of k-collapses (the normal-form chain).
struct CollapseSequence {
    std::vector<KCollapse> steps;                  // levels n, n-1, ..., 1
    std::vector<CubeFamily> families;              // n+1 entries: source .. NF
};

bool is_stable_section(const Poset& base, const SiFamily& fam, const SubsetSection& s);
Injection injection_of_section(const Poset& base, const SiFamily& fam, const SubsetSection& s);
SubsetSection section_of_injection(const Injection& inj);
// Naturality of an injection into `fam` (image section stability plus
// componentwise squares).
bool is_valid_injection(const Poset& base, const SiFamily& fam, const SiFamily& sub,
                        const Injection& inj);

// The family collapse functor S^lambda on level-k totals, as a poset map from
// A's level-k total onto the collapsed total.
PosetMap collapse_map(const Poset& base, const SiFamily& fam, const SiFamily& sub,
                      const Injection& inj, const TotalPoset& total_a, const TotalPoset& total_b);

// Applies the level-k collapse with kept section `keep` to A, constructing the
// factorized family; fails when the labels (or tower data above k) do not
// factor.
struct AppliedCollapse {
    CubeFamily result;
    KCollapse witness;
    // Component maps A.total(l) -> result.total(l) for l = 0..n (identity
    // strictly below k).
    std::vector<PosetMap> level_map;
};
std::optional<AppliedCollapse> try_collapse(const CubeFamily& a, int k, const SubsetSection& keep,
                                            std::string* why = nullptr);

struct KCollapseCheck {
    bool ok = false;
    std::string why;  // distinguishes tower mismatch from label factorization
};
KCollapseCheck check_k_collapse(const CubeFamily& a, const CubeFamily& b, const Injection& inj,
                                int k);

// The kept section of the unique level-k normal-form collapse (the maximal
// valid collapse): locally removable heights, shrunk to restore stability.
SubsetSection normal_form_section(const CubeFamily& a, int k);

struct Normalization {
    CubeFamily nf;
    CollapseSequence seq;
    MultiLevelMap to_nf;  // multi-level collapse A -> NF
};
Normalization normalize(const CubeFamily& a);
bool is_normalized(const CubeFamily& a);

// Pushout of two collapses from the same family at the same level: the
// intersection of kept sections.
struct CollapsePushout {
    CubeFamily apex;
    KCollapse from_b1, from_b2;  // witnesses B1 ~> P, B2 ~> P
};
CollapsePushout collapse_pushout(const CubeFamily& a, int k, const SubsetSection& keep1,
                                 const SubsetSection& keep2);

// k-level pullback of an l-level collapse (k < l): precompose the section
// with the iterated total map of S^mu.
AppliedCollapse pullback_collapse(const CubeFamily& c1, const AppliedCollapse& mu,
                                  const SubsetSection& lambda_keep, int l);
// k-level pushforward of an l-level collapse (k < l): intersect sections over
// the fibers of the base change. Also returns the factorization rho of
// (pullback of the pushforward) through lambda.
struct PushforwardResult {
    AppliedCollapse pushed;        // on C2
    SubsetSection pushed_section;  // section on C2's level l
    SubsetSection rho_section;     // witness of mu* mu_* lambda factoring through lambda
};
PushforwardResult pushforward_collapse(const CubeFamily& c1, const AppliedCollapse& mu,
                                       const SubsetSection& lambda_keep, int l);

MultiLevelMap multilevel_from_sequence(const CollapseSequence& seq);
CollapseSequence sequence_from_multilevel(const MultiLevelMap& s);

// 1-level collapse limits: encodes a collapse of interval families over X as
// a family over X x [2]; restriction at 1 is the source, at 0 the target.
CubeFamily collapse_limit(const CubeFamily& a, const SubsetSection& keep);
// Inverse reading; checks the extended-collapse labelling condition.
struct CollapseLimitReading {
    CubeFamily source, target;
    SubsetSection keep;
};
CollapseLimitReading read_collapse_limit(const CubeFamily& c);

}  // namespace cubecat

#endif
