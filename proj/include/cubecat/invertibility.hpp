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

#ifndef CUBECAT_INVERTIBILITY_HPP
#define CUBECAT_INVERTIBILITY_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cubecat/presentation.hpp"

namespace cubecat {

// A generator of the theory of invertibility: the minimal framed cobordism
// between a boundary pair of TI-morphisms.
struct TIGenerator {
    int dim = 0;
    std::string name;
    CubeFamily source, target;  // (dim-1)-morphisms of TI
    CubeFamily type;
};

struct TIValidation {
    bool ok = false;
    std::string why;            // failing sign and clause on rejection
    std::optional<CubeFamily> type;
};

// The lazy TI oracle: presents the theory of invertibility up to requested
// dimension and size budgets, memoized across calls. The memo table supports
// concurrent readers with exclusive insertion; results are deterministic.
class TiOracle {
public:
    TiOracle();

    // Checks the boundary-pair conditions: builds the double cone and tests
    // that the - and + label preimages of its top labelling are nonempty and
    // connected (undirected reachability).
    TIValidation validate(const CubeFamily& s, const CubeFamily& t) const;

    // All generators of the given dimension whose type has at most
    // `size_bound` top points; monotone in the bound and stable under reruns.
    std::vector<TIGenerator> enumerate(int dim, int size_bound);

    // Bounded enumeration of TI-morphisms (used by the generator scan and by
    // the test oracle).
    std::vector<CubeFamily> morphisms(int dim, int max_top);

    const Presentation& presentation() const { return pres_; }

private:
    std::vector<TIGenerator> enumerate_locked(int dim, int size_bound);
    Presentation pres_;  // grows as generators materialize
    std::vector<TIGenerator> gens_;
    std::map<std::pair<int, int>, std::vector<int>> memo_;  // (dim, bound) -> gen ids
    mutable std::shared_mutex mu_;
};

// The result of freely adjoining an invertible generator: the base
// presentation extended by the materialized coherence generators, plus the
// master attachment family used to translate TI-morphisms.
class LazyGroupoidPresentation {
public:
    // Adjoins g (invertibly) between m-morphisms x and y of `base`,
    // materializing TI-derived generators of TI-dimension <= depth (sizes of
    // deeper TI stages bounded by ti_size_bound).
    LazyGroupoidPresentation(Presentation base, const CubeFamily& x, const CubeFamily& y,
                             const std::string& g, int depth, int ti_size_bound,
                             std::shared_ptr<TiOracle> oracle);

    const Presentation& presentation() const { return pres_; }
    // Names of the generators materialized for this adjunction, by TI dim.
    const std::vector<std::pair<int, std::string>>& materialized() const { return mat_; }
    // Translation of a TI-morphism into the extended presentation.
    CubeFamily inv(const CubeFamily& ti_morphism) const;
    // Demand-driven types for deeper coherence generators: extends the
    // materialization (thread-safe, deterministic).
    CubeFamily demand_type(const CubeFamily& s, const CubeFamily& t);

    int generator_grade(int ti_dim) const { return m_ + ti_dim; }

private:
    void materialize(const TIGenerator& gen);
    std::shared_ptr<TiOracle> oracle_;
    Presentation pres_;
    std::string g_;
    int m_ = 0;      // dimension of x, y
    int depth_ = 0;
    int ti_bound_ = 0;
    // Master attachment family over the reduced TI labelling poset: the
    // "objects" are TI names, each carrying its m-cube attachment; stored
    // unpacked as a cube family.
    CubeFamily master_;
    std::map<std::string, std::string> ti_to_local_;  // TI name -> adjoined name
    std::vector<std::pair<int, std::string>> mat_;
    mutable std::mutex mu_;
};

struct GroupoidCell {
    std::string name;
    int dim = 0;
    // boundaries as morphisms of the stage-(dim-1) presentation; empty for 0-cells
    std::optional<CubeFamily> source, target;
};

struct GroupoidBuild {
    std::vector<Presentation> stages;
    Presentation result;
};
// Iterated invertible adjunction per grade; stage inclusions are valid
// presentation maps.
GroupoidBuild build_groupoid(const std::vector<GroupoidCell>& cells, int depth,
                             int ti_size_bound, std::shared_ptr<TiOracle> oracle);

}  // namespace cubecat

#endif
