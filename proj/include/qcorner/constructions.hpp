#pragma once
#include <set>

#include "qcorner/engine.hpp"
#include "qcorner/graded.hpp"
#include "qcorner/quiver.hpp"

namespace qcorner {

// McKay quiver of the cyclic diagonal action: vertices Z/r, and for each
// target vertex i and generator j one arrow x_j : (i - a_j) mod r -> i.
Quiver mckay_quiver(const DiagonalAction& act, const std::vector<std::string>& generator_names);

// Presentation of the skew group algebra A*G on the McKay quiver. Each
// weight-homogeneous relation f instantiates at every end vertex i as the
// path whose final arrow is the copy of the last letter ending at i.
// Requires the relations to be invariant under the action.
QuiverPresentation skew_group_presentation(const QuadraticAlgebra& A, const DiagonalAction& act,
                                           const QuiverOptions& opts = {});

// Quotient by the two-sided ideal of the trivial-character idempotent:
// removes the vertex labeled 0, all incident arrows, and every relation term
// whose path touches that vertex.
QuiverPresentation remove_trivial_vertex(const QuiverPresentation& p,
                                         const QuiverOptions& opts = {});

// Layered (Beilinson) presentation on vertices 0..ell-1: one arrow per
// generator between consecutive layers, relations repeated at each layer
// where a quadratic relation fits.
QuiverPresentation beilinson_presentation(const QuadraticAlgebra& A, int ell,
                                          const QuiverOptions& opts = {});

// Skew group algebra of a layered presentation by a diagonal action on its
// arrow names: vertices split into (layer, character), an arrow of weight w
// maps (i, c) -> (i+1, (c + sign*w) mod r). sign=+1 is the default lift.
QuiverPresentation skew_layered_presentation(const QuiverPresentation& p,
                                             const std::vector<std::string>& generator_names,
                                             const DiagonalAction& act, int lift_sign = +1,
                                             const QuiverOptions& opts = {});

struct CornerOptions {
    std::optional<int> degree_bound;  // explicit top grade for non-layered inputs
    int findim_bound = 32;
    std::int64_t column_limit = std::int64_t{1} << 22;
};

// Corner algebra e B e for e the sum of the kept vertex idempotents, with B
// finite dimensional. Generators are extracted grade by grade as the
// lexicographically first transversal paths not reachable by products of
// lower-grade corner elements; each becomes an arrow carrying its ambient
// grade and the concatenated ambient arrow names. Relations are the kernel of
// the resulting surjection, new ones per grade.
QuiverPresentation corner_presentation(const QuiverPresentation& p,
                                       const std::set<VertexLabel>& kept,
                                       const CornerOptions& copts = {},
                                       const QuiverOptions& opts = {});

struct PipelineOptions {
    int hilbert_degree = 6;      // N for Hilbert/invariant/Koszul checks
    int max_degree = 8;
    int findim_bound = 32;
    bool hdet_inverse = false;
    int lift_sign = +1;
    bool force = false;          // emit the corner algebra even if a gate fails
};

struct GateResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct PipelineReport {
    bool all_gates_passed = false;
    std::vector<GateResult> gates;

    std::vector<std::pair<int, Cyc>> hdet_values;  // power p -> hdet(g^p)
    bool hsl = false;

    FiniteDimReport findim;
    FrobeniusReport frobenius;
    KoszulCheckReport koszul;

    QuiverPresentation skew;
    QuiverPresentation skew_mod_e;
    QuadraticAlgebra dual;
    DiagonalAction dual_act;
    QuiverPresentation beilinson;
    QuiverPresentation skew_beilinson;
    std::optional<QuiverPresentation> gamma;  // withheld when gates fail (unless forced)
    std::string gamma_withheld_reason;

    std::vector<int> hilbert_a;
    std::vector<int> hilbert_dual;
    std::vector<int> hilbert_invariants;
};

// Runs the whole chain: action check, Koszul proxies, homological determinant
// over the group, skew presentation, vertex-0 quotient and its finite
// dimensionality, quadratic dual, Frobenius pairing, Beilinson layering, the
// skew layered algebra, and the corner algebra on the nontrivial-character
// vertices.
PipelineReport stable_cm_pipeline(const QuadraticAlgebra& A, const DiagonalAction& act,
                                  const PipelineOptions& popts = {});

}  // namespace qcorner
