#pragma once
#include <random>
#include <vector>

#include "qcorner/constructions.hpp"
#include "qcorner/graded.hpp"

namespace qcorner::testing {

inline NcPolynomial poly(std::vector<std::pair<FreeWord, long>> terms) {
    NcPolynomial p;
    for (auto& [w, c] : terms) p.terms.emplace(std::move(w), Cyc(Rational(c), 1));
    return p;
}

inline std::vector<std::string> var_names(int n) {
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

// k<x1..x4> with the six quadratic relations of the running example; a
// noetherian Koszul algebra of global dimension 4.
inline QuadraticAlgebra example_s() {
    std::vector<NcPolynomial> rels = {
        poly({{{0, 0}, 1}, {{1, 1}, 1}}),  // x1^2 + x2^2
        poly({{{0, 2}, 1}, {{2, 0}, 1}}),  // x1 x3 + x3 x1
        poly({{{0, 3}, 1}, {{3, 0}, 1}}),  // x1 x4 + x4 x1
        poly({{{1, 2}, 1}, {{2, 1}, 1}}),  // x2 x3 + x3 x2
        poly({{{1, 3}, 1}, {{3, 1}, 1}}),  // x2 x4 + x4 x2
        poly({{{2, 3}, 1}, {{3, 2}, 1}}),  // x3 x4 + x4 x3
    };
    return QuadraticAlgebra::from_relations(var_names(4), 1, rels, 4);
}

inline DiagonalAction example_s_action() { return DiagonalAction(2, {2, 1, 1, 1}); }

// The ten quadratic-dual relations of the running example, written out by hand.
inline std::vector<NcPolynomial> example_s_dual_relations() {
    return {
        poly({{{1, 1}, 1}, {{0, 0}, -1}}),  // x2^2 - x1^2
        poly({{{2, 0}, 1}, {{0, 2}, -1}}),  // x3 x1 - x1 x3
        poly({{{3, 0}, 1}, {{0, 3}, -1}}),  // x4 x1 - x1 x4
        poly({{{1, 0}, 1}}),                // x2 x1
        poly({{{0, 1}, 1}}),                // x1 x2
        poly({{{2, 1}, 1}, {{1, 2}, -1}}),  // x3 x2 - x2 x3
        poly({{{3, 1}, 1}, {{1, 3}, -1}}),  // x4 x2 - x2 x4
        poly({{{3, 2}, 1}, {{2, 3}, -1}}),  // x4 x3 - x3 x4
        poly({{{2, 2}, 1}}),                // x3^2
        poly({{{3, 3}, 1}}),                // x4^2
    };
}

inline QuadraticAlgebra commutative_algebra(int n, std::optional<int> dim = {}) {
    std::vector<NcPolynomial> rels;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) rels.push_back(poly({{{i, j}, 1}, {{j, i}, -1}}));
    auto A = QuadraticAlgebra::from_relations(var_names(n), 1, rels, dim ? dim : n);
    return A;
}

inline QuadraticAlgebra exterior_algebra(int n) {
    std::vector<NcPolynomial> rels;
    for (int i = 0; i < n; ++i) {
        rels.push_back(poly({{{i, i}, 1}}));
        for (int j = i + 1; j < n; ++j) rels.push_back(poly({{{i, j}, 1}, {{j, i}, 1}}));
    }
    return QuadraticAlgebra::from_relations(var_names(n), 1, rels, {});
}

inline QuadraticAlgebra free_algebra(int n) {
    return QuadraticAlgebra::from_relations(var_names(n), 1, {}, {});
}

// ---- randomized inputs ----------------------------------------------------

inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    Rational q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

inline Cyc random_scalar(std::mt19937& rng, unsigned order) {
    Cyc out = Cyc::zero(order);
    for (unsigned i = 0; i < cyclotomic_degree(order); ++i)
        out += Cyc(random_rational(rng), order) * root_of_unity(order, i);
    return out;
}

inline SparseVec random_vector(std::mt19937& rng, int ambient, unsigned order) {
    SparseVec v;
    std::uniform_int_distribution<int> coin(0, 2);
    for (int i = 0; i < ambient; ++i)
        if (coin(rng) == 0) {
            Cyc c = random_scalar(rng, order);
            if (!c.is_zero()) v.emplace_back(i, std::move(c));
        }
    return v;
}

inline Subspace random_subspace(std::mt19937& rng, int ambient, int spanning, unsigned order) {
    std::vector<SparseVec> rows;
    for (int i = 0; i < spanning; ++i) rows.push_back(random_vector(rng, ambient, order));
    return Subspace::from_spanning(ambient, std::move(rows));
}

inline QuadraticAlgebra random_quadratic_algebra(std::mt19937& rng, int n, int num_rels) {
    std::uniform_int_distribution<int> letter(0, n - 1);
    std::uniform_int_distribution<int> nterms(1, 3);
    std::vector<NcPolynomial> rels;
    for (int k = 0; k < num_rels; ++k) {
        NcPolynomial p;
        int t = nterms(rng);
        for (int i = 0; i < t; ++i) {
            FreeWord w{letter(rng), letter(rng)};
            Rational c = random_rational(rng);
            if (c == 0) c = 1;
            p.terms[w] = Cyc(c, 1);
        }
        rels.push_back(std::move(p));
    }
    return QuadraticAlgebra::from_relations(var_names(n), 1, rels, {});
}

// Random algebra whose relation span is invariant under a random action:
// relations are taken to be weight components of random quadratic polynomials.
inline std::pair<QuadraticAlgebra, DiagonalAction> random_equivariant_algebra(std::mt19937& rng,
                                                                              int n, unsigned r,
                                                                              int num_rels) {
    std::uniform_int_distribution<int> wdist(1, static_cast<int>(r));
    std::vector<int> weights;
    for (int j = 0; j < n; ++j) weights.push_back(wdist(rng));
    DiagonalAction act(r, weights);
    QuadraticAlgebra raw = random_quadratic_algebra(rng, n, num_rels);
    WordSpace ws2(n, 2);
    std::vector<NcPolynomial> split;
    for (const auto& row : raw.relations.basis) {
        std::map<int, NcPolynomial> by_weight;
        for (const auto& [col, c] : row) {
            FreeWord w = ws2.word_of(col);
            by_weight[act.word_weight(w)].terms.emplace(std::move(w), c);
        }
        for (auto& [weight, p] : by_weight) split.push_back(std::move(p));
    }
    return {QuadraticAlgebra::from_relations(var_names(n), 1, split, {}), act};
}

// Random finite-type presentation: the layered algebra of a random quadratic
// algebra, optionally skewed; always finite dimensional.
inline QuiverPresentation random_layered_presentation(std::mt19937& rng) {
    std::uniform_int_distribution<int> nd(2, 3), rd(1, 3), ld(2, 4), kd(0, 4);
    int n = nd(rng);
    auto [A, act] = random_equivariant_algebra(rng, n, static_cast<unsigned>(rd(rng)), kd(rng));
    QuiverPresentation layered = beilinson_presentation(A, ld(rng));
    return skew_layered_presentation(layered, A.generator_names, act);
}

}  // namespace qcorner::testing
