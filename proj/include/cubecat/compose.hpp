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

#ifndef CUBECAT_COMPOSE_HPP
#define CUBECAT_COMPOSE_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubecat/globe.hpp"

namespace cubecat {

// Level-k labelling precomposed with the source/target section: the two sides
// of the cube facing direction k, as an (n-k)-cube family over G^{k-1}.
CubeFamily cubical_src(const CubeFamily& a, int k);
CubeFamily cubical_tgt(const CubeFamily& a, int k);

// k-level stacking A .k B: towers agree strictly below k and
// cubical_tgt(A,k) = cubical_src(B,k); level k is the fiberwise ordered sum,
// everything above is glued along the shared section.
CubeFamily k_stack(const CubeFamily& a, const CubeFamily& b, int k);
// The canonical stacking embeddings recovering A and B.
struct StackEmbeddings {
    Embedding in1, in2;
};
StackEmbeddings stack_embeddings(const CubeFamily& a, const CubeFamily& b, int k);
inline CubeFamily stack(const CubeFamily& a, const CubeFamily& b) { return k_stack(a, b, 1); }

// k-level whiskering of globes over the point. post: tgt^k(A) = src(B);
// pre: src^k(A) = tgt(B). B has dimension dim(A) - k + 1.
CubeFamily whisker(const CubeFamily& a, const CubeFamily& b, int k, bool post);

// --- composition trees --------------------------------------------------------

// Label bookkeeping for El(S)^op-labelled globes.
struct GlobularContext {
    GlobularSet s;
    CategoryRef el;
    std::vector<int> obj_grade;  // per El object
    std::vector<int> obj_index;  // index within its grade

    int grade_of_label(int el_obj) const { return obj_grade[el_obj]; }
    int el_object(int grade, int index) const;
};
GlobularContext make_context(const GlobularSet& s);
// Realisation of a generator: the terminal globe relabelled along the
// classifying map of the element.
CubeFamily leaf_realisation(const GlobularContext& ctx, int grade, int index);

struct CTree;
using CTreeRef = std::shared_ptr<const CTree>;

struct CTree {
    enum class Kind { Leaf, Whisker, Ident, Homotopy };
    Kind kind = Kind::Leaf;
    // Leaf
    int grade = 0, index = 0;
    // Whisker (post: realise A |> B!; pre: realise B! |> A at level k)
    CTreeRef t1, t2;
    int k = 0;
    bool post = true;
    // Homotopy: witness cube
    CubeFamily witness;

    int height = 0, dim = 0;
    CubeFamily real;  // cached realisation
};

CTreeRef tree_leaf(const GlobularContext& ctx, int grade, int index);
CTreeRef tree_whisker(const GlobularContext& ctx, CTreeRef t1, CTreeRef t2, int k, bool post);
CTreeRef tree_ident(const GlobularContext& ctx, CTreeRef t);
CTreeRef tree_homotopy(const GlobularContext& ctx, CTreeRef t1, CTreeRef t2, const CubeFamily& d);

CTreeRef tree_src(const GlobularContext& ctx, const CTreeRef& t);
CTreeRef tree_tgt(const GlobularContext& ctx, const CTreeRef& t);

// Transport a tree along a map of globular sets.
CTreeRef relabel_tree(const GlobularContext& from, const GlobularContext& to,
                      const GlobularMap& alpha, const CTreeRef& t);

// Homotopy recognition: d is an (n+1)-globe over the point, globular and
// normalized; every top point's label has grade <= n and the minimal
// neighbourhood normalizes to the iterated identity of the label's leaf
// realisation. one_step additionally requires the underlying interval D1.
struct HomotopyVerdict {
    bool ok = false;
    bool one_step = false;
    int witness_point = -1;
    std::string why;
};
HomotopyVerdict is_homotopy(const GlobularContext& ctx, const CubeFamily& d);

// Finite-instance checker for the associativity laws: M maps realisations
// (looked up by the caller-supplied key) to generators of S.
struct LawReport {
    struct Item {
        std::string law;   // unit | whiskering | identity | homotopy
        std::string desc;
        bool ok = false;
        bool undefined = false;  // M missing where a law requires a value
    };
    std::vector<Item> items;
    bool all_ok() const;
};
using ShapeLookup = std::function<std::optional<std::pair<int, int>>(const CubeFamily&)>;
LawReport check_anc_laws(const GlobularContext& ctx, const ShapeLookup& m,
                         const std::vector<CTreeRef>& trees, int truncation);

}  // namespace cubecat

#endif
