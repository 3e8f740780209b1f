#pragma once
#include <optional>
#include <vector>

#include "qcorner/quadratic.hpp"

namespace qcorner {

struct GradedOptions {
    int max_degree = 8;  // computations beyond this are refused, not truncated

    // When set and the action stabilizes the relations, ideal-span rows are
    // grouped by character weight and the blocks are reduced independently in
    // parallel. The result is identical to the unblocked computation; rows of
    // different weights have disjoint support.
    std::optional<DiagonalAction> block_action;
};

// Degree-m component A_m = V^{⊗m} / Σ_i V^{⊗i} ⊗ R ⊗ V^{⊗(m-2-i)}.
struct GradedComponent {
    int degree = 0;
    std::int64_t ambient = 1;          // n^m
    int dim = 0;                       // ambient - dim(ideal_span)
    Subspace ideal_span;               // canonical, in WordSpace(n, m) coordinates
    std::vector<FreeWord> transversal; // standard monomials, ascending lex
};

GradedComponent graded_component(const QuadraticAlgebra& A, int m, const GradedOptions& opts = {});

// [dim A_0, ..., dim A_N]
std::vector<int> hilbert_function(const QuadraticAlgebra& A, int N, const GradedOptions& opts = {});

// K^i_i = ∩_{s+t+2=i} V^{⊗s} ⊗ R ⊗ V^{⊗t}, with K^0_0 = k and K^1_1 = V.
// Computed by the nesting identity K^{i+1} = (K^i ⊗ V) ∩ (V ⊗ K^i).
Subspace koszul_syzygy_space(const QuadraticAlgebra& A, int i, const GradedOptions& opts = {});

// T(V*)/(R^⊥) under the pairing <ξ⊗η, v⊗w> = ξ(v)η(w); generator names gain
// a trailing '*'.
QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& A);

struct ActionCheckResult {
    bool ok = false;
    // weight -> dimension of the weight block of R (present when ok)
    std::vector<std::pair<int, int>> weight_blocks;
    // a weight component of a relation that escapes R (present when !ok)
    std::optional<SparseVec> violating;
};

// True iff R is setwise invariant under the diagonal action on V⊗V,
// equivalently R splits into weight blocks.
ActionCheckResult action_check(const QuadraticAlgebra& A, const DiagonalAction& act);

// Weight-homogeneous basis of R: canonical rows per weight block, ascending
// weight. Requires action_check to pass.
std::vector<std::pair<int, std::vector<SparseVec>>> weight_split_relations(
    const QuadraticAlgebra& A, const DiagonalAction& act);

// Homological determinant of the diagonal automorphism, read off as the
// g-weight on the one-dimensional socle syzygy space K^d_d. The inverse flag
// flips the convention (see README).
Cyc hdet_diagonal(const QuadraticAlgebra& A, const DiagonalAction& act, int d,
                  bool inverse_convention = false, const GradedOptions& opts = {});

struct FrobeniusDegreeReport {
    int degree = 0;
    int dim_low = 0;
    int dim_high = 0;
    int pairing_rank = 0;
    bool pass = false;
};

struct FrobeniusReport {
    bool ok = false;
    bool top_degree_ok = false;    // dim A_ell == 1 and A_{ell+1} == 0
    std::string failure;           // empty when ok
    std::vector<FrobeniusDegreeReport> degrees;
};

// Checks that the multiplication pairing A_i x A_{ell-i} -> A_ell ≅ k is a
// perfect pairing in every degree.
FrobeniusReport frobenius_pairing_check(const QuadraticAlgebra& A_dual, int ell,
                                        const GradedOptions& opts = {});

// dim (A^G)_m = (1/r) Σ_p tr(g^p | A_m) for m = 0..N, computed exactly from
// the weight decomposition of the transversal basis.
std::vector<int> invariant_hilbert_function(const QuadraticAlgebra& A, const DiagonalAction& act,
                                            int N, const GradedOptions& opts = {});

struct KoszulCheckReport {
    bool ok = false;
    std::vector<int> syzygy_dims;      // dim K^i_i, i = 0..N
    std::vector<int> dual_dims;        // dim (A^!)_i, i = 0..N
    std::vector<bool> dims_match;      // per i
    std::vector<bool> euler_ok;        // per m = 1..N
};

// Numerical necessary conditions for Koszulity: dim K^i_i = dim (A^!)_i and
// the alternating Euler sums of the would-be linear resolution vanish.
KoszulCheckReport koszul_numeric_check(const QuadraticAlgebra& A, int N,
                                       const GradedOptions& opts = {});

// Residue of a word modulo the degree-|w| ideal span: canonical coordinates of
// the class of w in A_{|w|} over the transversal basis.
SparseVec reduce_word(const GradedComponent& comp, const WordSpace& ws, const FreeWord& w,
                      unsigned order);

}  // namespace qcorner
