// Timing comparison of the exact-linear-algebra kernels:
//   - batched row reduction, serial vs OpenMP
//   - full path-space dimension computation vs the iterative quotient engine
// Results are checked for agreement while timing.
#include <chrono>
#include <cstdio>

#include "qcorner/constructions.hpp"
#include "qcorner/engine.hpp"
#include "qcorner/exec.hpp"
#include "qcorner/graded.hpp"

using namespace qcorner;
using h_clock = std::chrono::steady_clock;

namespace {

QuadraticAlgebra example_algebra() {
    auto poly = [](std::vector<std::pair<FreeWord, long>> terms) {
        NcPolynomial p;
        for (auto& [w, c] : terms) p.terms.emplace(std::move(w), Cyc(Rational(c), 1));
        return p;
    };
    std::vector<NcPolynomial> rels = {
        poly({{{0, 0}, 1}, {{1, 1}, 1}}), poly({{{0, 2}, 1}, {{2, 0}, 1}}),
        poly({{{0, 3}, 1}, {{3, 0}, 1}}), poly({{{1, 2}, 1}, {{2, 1}, 1}}),
        poly({{{1, 3}, 1}, {{3, 1}, 1}}), poly({{{2, 3}, 1}, {{3, 2}, 1}}),
    };
    return QuadraticAlgebra::from_relations({"x1", "x2", "x3", "x4"}, 1, rels, 4);
}

double time_once(const std::function<void()>& f) {
    auto t0 = h_clock::now();
    f();
    return std::chrono::duration<double>(h_clock::now() - t0).count();
}

}  // namespace

int main() {
    QuadraticAlgebra A = example_algebra();
    DiagonalAction act(2, {2, 1, 1, 1});
    GradedOptions gopts;

    std::printf("%-44s %10s %10s %8s\n", "kernel", "serial(s)", "parallel", "speedup");

    GradedOptions blocked = gopts;
    blocked.block_action = act;
    for (int m = 5; m <= 6; ++m) {
        int dim_serial = 0, dim_parallel = 0;
        exec::set_max_threads(1);
        double ts = time_once([&] { dim_serial = graded_component(A, m, gopts).dim; });
        exec::set_max_threads(0);  // runtime default
        double tp = time_once([&] { dim_parallel = graded_component(A, m, blocked).dim; });
        if (dim_serial != dim_parallel) {
            std::printf("MISMATCH at degree %d: %d vs %d\n", m, dim_serial, dim_parallel);
            return 1;
        }
        char label[64];
        std::snprintf(label, sizeof label,
                      "graded component deg %d, plain vs blocked", m);
        std::printf("%-44s %10.3f %10.3f %7.2fx\n", label, ts, tp, ts / tp);
    }

    // full path-space reference vs the iterative engine on the skew algebra
    QuiverPresentation skew = skew_group_presentation(A, act);
    QuiverOptions qopts;
    for (int m = 4; m <= 6; ++m) {
        qopts.max_degree = m;
        int dim_full = 0, dim_engine = 0;
        double tf = time_once([&] { dim_full = graded_dimension(skew, m, qopts).dim; });
        double te = time_once([&] {
            DimensionEngine engine(skew);
            dim_engine = engine.dim(m);
        });
        if (dim_full != dim_engine) {
            std::printf("MISMATCH at grade %d: %d vs %d\n", m, dim_full, dim_engine);
            return 1;
        }
        char label[64];
        std::snprintf(label, sizeof label, "skew algebra grade %d: full vs engine (dim %d)", m,
                      dim_full);
        std::printf("%-44s %10.3f %10.3f %7.2fx\n", label, tf, te, tf / te);
    }
    return 0;
}
