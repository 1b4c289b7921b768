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

#ifndef CUBECAT_PRESENTATION_HPP
#define CUBECAT_PRESENTATION_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cubecat/collapse.hpp"
#include "cubecat/cube.hpp"
#include "cubecat/globe.hpp"

namespace cubecat {

// Graded generator name sets C_0 .. C_{n+1}; names globally distinct.
struct Namescope {
    std::vector<std::vector<std::string>> grades;

    int dimension() const { return int(grades.size()) - 2; }  // category dimension n
    void validate() const;
    std::optional<std::pair<int, int>> find(const std::string& name) const;  // (grade, index)
};

// Total poset of the k-truncated full realisation: all names up to grade k,
// with an arrow between every lower-grade and higher-grade name.
Poset gamma_total(const Namescope& ns, int truncation);

struct GlobularityMode {
    bool boundary = false;  // false: strict globularity (the default)
};

// A presented associative n-category: namescope plus per-generator boundary
// morphisms; types are derived double cones, cached per generator.
class Presentation {
public:
    Presentation() = default;
    explicit Presentation(int n);

    int n() const { return n_; }
    const Namescope& names() const { return ns_; }
    CategoryRef gamma() const { return gamma_cat_; }  // total poset of Gamma as a category
    const Poset& gamma_poset() const { return gamma_poset_; }

    int generator_count() const { return int(gens_.size()); }
    const std::string& gen_name(int g) const { return gens_[g].name; }
    int gen_dim(int g) const { return gens_[g].dim; }
    const CubeFamily& type_of(int g) const { return gens_[g].type; }
    const CubeFamily& source_of(int g) const { return gens_[g].source; }
    const CubeFamily& target_of(int g) const { return gens_[g].target; }
    std::optional<int> find_gen(const std::string& name) const;
    // Gamma object index of a generator.
    int gamma_index(int g) const { return gens_[g].gamma_obj; }

private:
    friend Presentation adjoin(const Presentation&, const CubeFamily&, const CubeFamily&,
                               const std::string&, bool);
    friend Presentation adjoin_zero(const Presentation&, const std::string&);
    friend Presentation widen(const Presentation&, int);
    friend Presentation presentation_colimit(const std::vector<Presentation>&);
    struct Gen {
        std::string name;
        int dim = 0;
        CubeFamily source, target;  // (dim-1)-morphisms; empty cubes for dim 0
        CubeFamily type;            // derived double cone
        int gamma_obj = 0;
    };
    void rebuild_gamma();
    int n_ = 0;
    Namescope ns_;
    std::vector<Gen> gens_;
    Poset gamma_poset_;
    CategoryRef gamma_cat_;
};

// Transports labels of a cube into a category containing them by name.
CubeFamily lift_labels(const CubeFamily& d, CategoryRef cat);
// Pads the namescope to a higher category dimension, keeping all generators.
Presentation widen(const Presentation& p, int new_n);

struct MorphismVerdict {
    bool ok = false;
    std::string clause;  // "normalized" | "globular" | "well-typed" | ...
    int witness_point = -1;
    std::string detail;
};

// The kernel check: normalized, globular (configured mode), and every point's
// minimal neighbourhood normalizes to the identity-padded type of its label.
MorphismVerdict check_morphism(const CubeFamily& d, const Presentation& p, int m,
                               GlobularityMode mode = {});

// Adjoins a 0-generator (no boundaries).
Presentation adjoin_zero(const Presentation& p, const std::string& name);
// Adjoins a generator (equality=false) or an equality pair (equality=true)
// between boundary-compatible morphisms; equalities are deduplicated by their
// boundary pair (proof irrelevance) and the inverse is added automatically.
Presentation adjoin(const Presentation& p, const CubeFamily& x, const CubeFamily& y,
                    const std::string& name, bool equality);

struct PresentationMapVerdict {
    bool ok = false;
    std::string why;
};
// alpha: generator name -> generator name, grade preserving; valid iff every
// relabelled type matches.
PresentationMapVerdict check_presentation_map(const std::map<std::string, std::string>& alpha,
                                              const Presentation& p, const Presentation& q);

Presentation presentation_colimit(const std::vector<Presentation>& chain);

// Degree-n coequalizer of source/target: merges n-cells connected by
// (n+1)-cells; lower degrees unchanged, grade n+1 dropped.
GlobularSet globular_quotient(const GlobularSet& s, int n);

// --- n-fold presentations -----------------------------------------------------

struct NFoldGenerator {
    std::string name;
    std::vector<int> alpha;  // n+1 bits
    CubeFamily type;         // n-cube labelled in the n-fold Gamma total poset
};

class NFoldPresentation {
public:
    NFoldPresentation(int n, std::vector<NFoldGenerator> gens);
    int n() const { return n_; }
    CategoryRef gamma() const { return gamma_cat_; }
    const std::vector<NFoldGenerator>& gens() const { return gens_; }
    std::optional<int> find_gen(const std::string& name) const;

private:
    int n_ = 0;
    std::vector<NFoldGenerator> gens_;
    Poset gamma_poset_;
    CategoryRef gamma_cat_;
};

// Normalized; levels with alpha_i = 0 are all-initial; every minimal
// neighbourhood normalizes to the type of its label. No globularity.
MorphismVerdict check_nfold_morphism(const CubeFamily& d, const NFoldPresentation& p,
                                     const std::vector<int>& alpha);

// --- document declarations (shared with io) -----------------------------------

struct GeneratorDecl {
    int dim = 0;
    std::string name;
    std::optional<CubeFamily> source, target;
};

struct PresentationMorphismDecl {
    std::string name;
    int dim = 0;
    CubeFamily cube;
};

struct PresentationDoc {
    std::string name;
    int n = 0;
    std::vector<GeneratorDecl> generators;
    std::vector<PresentationMorphismDecl> morphisms;
};

// Builds (and fully validates) a presentation from declarations.
Presentation build_presentation(const PresentationDoc& doc);

}  // namespace cubecat

#endif
