#pragma once
#include <optional>
#include <string>
#include <vector>

#include "qcorner/linalg.hpp"
#include "qcorner/words.hpp"

namespace qcorner {

// Cyclic group of order r acting diagonally: g.x_j = zeta_r^(a_j) x_j,
// with weights normalized to 0 < a_j <= r.
struct DiagonalAction {
    unsigned r = 1;
    std::vector<int> weights;

    DiagonalAction() = default;
    DiagonalAction(unsigned r_, std::vector<int> w);

    // Action of g^p.
    DiagonalAction power(int p) const;
    int word_weight(const FreeWord& w) const;  // in [0, r)
    bool is_trivial() const;
};

// weights' = (-a_j mod r), normalized into (0, r]. This is the action carried
// by the quadratic dual.
DiagonalAction dual_action(const DiagonalAction& act);

// Quadratic presentation T(V)/(R), R a canonical subspace of V⊗V in the
// descending-lex coordinates of WordSpace(n, 2).
struct QuadraticAlgebra {
    std::vector<std::string> generator_names;
    unsigned order = 1;  // coefficient field Q(zeta_order)
    Subspace relations;  // ambient n^2
    std::optional<int> claimed_global_dim;

    int num_generators() const { return static_cast<int>(generator_names.size()); }

    // Validates that all polynomials are homogeneous of degree 2 and spans them.
    static QuadraticAlgebra from_relations(std::vector<std::string> names, unsigned order,
                                           const std::vector<NcPolynomial>& rels,
                                           std::optional<int> claimed_global_dim = {});
};

// Relation rows in (two-letter word, coefficient) form, one per basis vector.
std::vector<std::vector<std::pair<FreeWord, Cyc>>> relation_rows(const QuadraticAlgebra& A);

}  // namespace qcorner
