#include <doctest.h>

#include <random>

#include "qcorner/errors.hpp"
#include "qcorner/graded.hpp"
#include "support.hpp"

using namespace qcorner;
using namespace qcorner::testing;

TEST_CASE("graded components of basic algebras") {
    QuadraticAlgebra comm2 = commutative_algebra(2);
    CHECK(graded_component(comm2, 2).dim == 3);  // symmetric square

    QuadraticAlgebra s = example_s();
    CHECK(graded_component(s, 0).dim == 1);
    CHECK(graded_component(s, 1).dim == 4);
    CHECK(graded_component(s, 2).dim == 10);
    CHECK(graded_component(s, 3).dim == 20);

    QuadraticAlgebra ext2 = exterior_algebra(2);
    CHECK(graded_component(ext2, 3).dim == 0);  // top degree 2
}

TEST_CASE("transversals are standard monomials") {
    QuadraticAlgebra comm2 = commutative_algebra(2);
    auto c2 = graded_component(comm2, 2);
    CHECK(c2.transversal == std::vector<FreeWord>{{0, 0}, {0, 1}, {1, 1}});
}

TEST_CASE("hilbert functions") {
    CHECK(hilbert_function(example_s(), 4) == std::vector<int>{1, 4, 10, 20, 35});

    QuadraticAlgebra dual = QuadraticAlgebra::from_relations(var_names(4), 1,
                                                             example_s_dual_relations());
    CHECK(hilbert_function(dual, 4) == std::vector<int>{1, 4, 6, 4, 1});

    CHECK(hilbert_function(free_algebra(2), 3) == std::vector<int>{1, 2, 4, 8});
}

TEST_CASE("degree cap is enforced") {
    GradedOptions opts;
    opts.max_degree = 3;
    CHECK_THROWS_AS(graded_component(example_s(), 4, opts), DegreeCapError);
}

TEST_CASE("koszul syzygy spaces") {
    QuadraticAlgebra comm2 = commutative_algebra(2);
    Subspace k2 = koszul_syzygy_space(comm2, 2);
    CHECK(k2.dim() == 1);
    CHECK(k2 == comm2.relations);  // K^2_2 = R

    QuadraticAlgebra s = example_s();
    CHECK(koszul_syzygy_space(s, 4).dim() == 1);
    CHECK(koszul_syzygy_space(s, 5).dim() == 0);

    // nesting: K^{i+1} subset (K^i ⊗ V) ∩ (V ⊗ K^i) holds by construction;
    // spot-check dims against the dual Hilbert function
    QuadraticAlgebra dual = quadratic_dual(s);
    for (int i = 0; i <= 5; ++i)
        CHECK(koszul_syzygy_space(s, i).dim() == graded_component(dual, i).dim);
}

TEST_CASE("quadratic dual") {
    // commutative pair: dual of the polynomial algebra is the exterior algebra
    QuadraticAlgebra comm2 = commutative_algebra(2);
    QuadraticAlgebra dual = quadratic_dual(comm2);
    CHECK(dual.relations == exterior_algebra(2).relations);
    CHECK(dual.generator_names == std::vector<std::string>{"x1*", "x2*"});

    // the example: ten dual relations, matched as a subspace
    QuadraticAlgebra s = example_s();
    QuadraticAlgebra s_dual = quadratic_dual(s);
    QuadraticAlgebra expected = QuadraticAlgebra::from_relations(var_names(4), 1,
                                                                 example_s_dual_relations());
    CHECK(s_dual.relations.dim() == 10);
    CHECK(s_dual.relations == expected.relations);

    // involution and the dimension identity on random algebras
    std::mt19937 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + static_cast<int>(rng() % 2);
        QuadraticAlgebra A = random_quadratic_algebra(rng, n, static_cast<int>(rng() % 5));
        QuadraticAlgebra dd = quadratic_dual(quadratic_dual(A));
        CHECK(dd.relations == A.relations);
        CHECK(dd.generator_names == A.generator_names);
        CHECK(quadratic_dual(A).relations.dim() + A.relations.dim() == n * n);
    }
}

TEST_CASE("action check") {
    QuadraticAlgebra s = example_s();
    CHECK(action_check(s, example_s_action()).ok);

    // trivial action always passes
    CHECK(action_check(s, DiagonalAction(2, {2, 2, 2, 2})).ok);

    // x^2 + xy with weights (1,2) mod 3 splits into distinct weights
    QuadraticAlgebra bad = QuadraticAlgebra::from_relations(
        var_names(2), 1, {poly({{{0, 0}, 1}, {{0, 1}, 1}})});
    auto res = action_check(bad, DiagonalAction(3, {1, 2}));
    CHECK_FALSE(res.ok);
    CHECK(res.violating.has_value());
}

TEST_CASE("dual action") {
    DiagonalAction a = dual_action(example_s_action());
    CHECK(a.weights == std::vector<int>{2, 1, 1, 1});
    CHECK(dual_action(DiagonalAction(3, {1, 2})).weights == std::vector<int>{2, 1});
    CHECK(dual_action(DiagonalAction(1, {1, 1})).weights == std::vector<int>{1, 1});
}

TEST_CASE("homological determinant") {
    QuadraticAlgebra s = example_s();
    DiagonalAction g = example_s_action();
    CHECK(hdet_diagonal(s, g, 4).is_one());  // det g = -1 but hdet g = 1

    // commutative anchor: hdet = zeta^{sum of weights} = det g
    std::mt19937 rng(9);
    for (unsigned r = 1; r <= 6; ++r) {
        for (int d = 2; d <= 3; ++d) {
            std::vector<int> w;
            for (int j = 0; j < d; ++j) w.push_back(1 + static_cast<int>(rng() % r));
            DiagonalAction act(r, w);
            long total = 0;
            for (int x : w) total += x;
            CHECK(hdet_diagonal(commutative_algebra(d), act, d) == root_of_unity(r, total));
        }
    }

    // identity element
    CHECK(hdet_diagonal(s, DiagonalAction(2, {2, 2, 2, 2}), 4).is_one());

    // multiplicativity on powers
    DiagonalAction act(4, {1, 3, 2});
    QuadraticAlgebra c3 = commutative_algebra(3);
    Cyc h1 = hdet_diagonal(c3, act, 3);
    for (int p = 1; p <= 4; ++p)
        CHECK(hdet_diagonal(c3, act.power(p), 3) == h1.pow(p));

    // socle must be one-dimensional
    CHECK_THROWS_WITH_AS(hdet_diagonal(free_algebra(2), DiagonalAction(2, {1, 1}), 2),
                         doctest::Contains("socle not one-dimensional"), Error);
}

TEST_CASE("frobenius pairing check") {
    // one variable, relation x^2: top degree 1, pairing 1*x
    QuadraticAlgebra nil = QuadraticAlgebra::from_relations({"x"}, 1, {poly({{{0, 0}, 1}})});
    CHECK(frobenius_pairing_check(nil, 1).ok);

    // the dual of the example is Frobenius with ell = 4
    FrobeniusReport rep = frobenius_pairing_check(quadratic_dual(example_s()), 4);
    CHECK(rep.ok);
    for (const auto& d : rep.degrees) CHECK(d.pass);

    // dropping everything in degree 2 breaks the top degree
    QuadraticAlgebra degenerate = QuadraticAlgebra::from_relations(
        var_names(2), 1,
        {poly({{{0, 0}, 1}}), poly({{{0, 1}, 1}}), poly({{{1, 0}, 1}}), poly({{{1, 1}, 1}})});
    FrobeniusReport bad = frobenius_pairing_check(degenerate, 1);
    CHECK_FALSE(bad.ok);
    CHECK_FALSE(bad.top_degree_ok);
    CHECK(bad.failure == "top degree dimension is 2, expected 1");
}

TEST_CASE("invariant hilbert function") {
    QuadraticAlgebra s = example_s();
    DiagonalAction g = example_s_action();
    auto inv = invariant_hilbert_function(s, g, 3);
    CHECK(inv[0] == 1);  // constants
    CHECK(inv[1] == 1);  // only x1 is invariant: (4 + (1-1-1-1))/2
    // values bounded by the plain dimensions
    auto dims = hilbert_function(s, 3);
    for (size_t m = 0; m < inv.size(); ++m) {
        CHECK(inv[m] >= 0);
        CHECK(inv[m] <= dims[m]);
    }

    // trivial action reproduces the Hilbert function
    CHECK(invariant_hilbert_function(s, DiagonalAction(2, {2, 2, 2, 2}), 3) == dims);

    // classical commutative anchors: invariants of -id on k[x,y] are the
    // even-degree polynomials
    CHECK(invariant_hilbert_function(commutative_algebra(2), DiagonalAction(2, {1, 1}), 4) ==
          std::vector<int>{1, 0, 3, 0, 5});
    // k[x,y,z] with g = diag(1,-1,-1): monomials x^a y^b z^c with b+c even
    CHECK(invariant_hilbert_function(commutative_algebra(3), DiagonalAction(2, {2, 1, 1}), 4) ==
          std::vector<int>{1, 1, 4, 4, 9});
    // k[x,y] with g = diag(zeta_3, zeta_3^2): weights (1,2) mod 3
    CHECK(invariant_hilbert_function(commutative_algebra(2), DiagonalAction(3, {1, 2}), 6) ==
          std::vector<int>{1, 0, 1, 2, 1, 2, 3});
}

TEST_CASE("weight-blocked reduction reproduces the unblocked result") {
    std::mt19937 rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        auto [A, act] = random_equivariant_algebra(rng, 2 + static_cast<int>(rng() % 2),
                                                   2 + rng() % 3, 1 + static_cast<int>(rng() % 4));
        GradedOptions plain;
        GradedOptions blocked;
        blocked.block_action = act;
        for (int m = 2; m <= 4; ++m) {
            GradedComponent a = graded_component(A, m, plain);
            GradedComponent b = graded_component(A, m, blocked);
            CHECK(a.dim == b.dim);
            CHECK(a.ideal_span == b.ideal_span);
            CHECK(a.transversal == b.transversal);
        }
    }
    // an action that fails the check falls back to the unblocked path
    QuadraticAlgebra bad = QuadraticAlgebra::from_relations(
        var_names(2), 1, {poly({{{0, 0}, 1}, {{0, 1}, 1}})});
    GradedOptions opts;
    opts.block_action = DiagonalAction(3, {1, 2});
    CHECK(graded_component(bad, 2, opts).dim == graded_component(bad, 2).dim);
}

TEST_CASE("weight blocks split the dimension exactly") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        auto [A, act] = random_equivariant_algebra(rng, 2 + static_cast<int>(rng() % 2),
                                                   1 + rng() % 4, 1 + static_cast<int>(rng() % 4));
        for (int m = 0; m <= 3; ++m) {
            auto comp = graded_component(A, m);
            std::map<int, int> blocks;
            for (const auto& w : comp.transversal) ++blocks[act.word_weight(w)];
            int total = 0;
            for (auto& [w, d] : blocks) total += d;
            CHECK(total == comp.dim);
        }
    }
}

TEST_CASE("invariant dimensions agree with direct weight counting") {
    // two routes: the exact character sum over Q(zeta_r) vs counting the
    // weight-0 transversal words degree by degree
    std::mt19937 rng(83);
    for (int trial = 0; trial < 30; ++trial) {
        auto [A, act] = random_equivariant_algebra(rng, 2 + static_cast<int>(rng() % 2),
                                                   1 + rng() % 5, 1 + static_cast<int>(rng() % 4));
        auto inv = invariant_hilbert_function(A, act, 4);
        for (int m = 0; m <= 4; ++m) {
            int count = 0;
            for (const auto& w : graded_component(A, m).transversal)
                if (act.word_weight(w) == 0) ++count;
            CHECK(inv[static_cast<size_t>(m)] == count);
        }
    }
}

TEST_CASE("koszul numeric check") {
    KoszulCheckReport c2 = koszul_numeric_check(commutative_algebra(2), 4);
    CHECK(c2.ok);
    CHECK(c2.syzygy_dims == std::vector<int>{1, 2, 1, 0, 0});

    KoszulCheckReport s = koszul_numeric_check(example_s(), 5);
    CHECK(s.ok);
    CHECK(s.syzygy_dims == std::vector<int>{1, 4, 6, 4, 1, 0});

    KoszulCheckReport f = koszul_numeric_check(free_algebra(2), 3);
    CHECK(f.ok);
    CHECK(f.syzygy_dims == std::vector<int>{1, 2, 0, 0});
}
