#include "qcorner/graded.hpp"

#include <algorithm>
#include <map>

#include "qcorner/errors.hpp"
#include "qcorner/exec.hpp"

namespace qcorner {

namespace {

std::int64_t ipow(int base, int exp) {
    std::int64_t v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

void check_cap(int m, const GradedOptions& opts) {
    if (m > opts.max_degree)
        throw DegreeCapError("degree " + std::to_string(m) + " exceeds the configured cap of " +
                             std::to_string(opts.max_degree));
}

}  // namespace

namespace {

// Word weights for all lex ranks of a fixed length, reduced mod r. Built
// length by length so every letter, including leading x_0's, contributes.
std::vector<int> rank_weights(int n, int len, const DiagonalAction& act) {
    const int r = static_cast<int>(act.r);
    std::vector<int> cur{0};
    for (int l = 0; l < len; ++l) {
        std::vector<int> next(cur.size() * static_cast<size_t>(n));
        for (size_t p = 0; p < cur.size(); ++p)
            for (int j = 0; j < n; ++j)
                next[p * static_cast<size_t>(n) + static_cast<size_t>(j)] =
                    (cur[p] + act.weights[static_cast<size_t>(j)]) % r;
        cur = std::move(next);
    }
    return cur;
}

}  // namespace

GradedComponent graded_component(const QuadraticAlgebra& A, int m, const GradedOptions& opts) {
    if (m < 0) throw UsageError("graded_component: degree must be nonnegative");
    check_cap(m, opts);
    const int n = A.num_generators();
    WordSpace ws(n, m);

    GradedComponent out;
    out.degree = m;
    out.ambient = ws.size;

    // Optional weight blocking: rows of different weights never share columns,
    // so reducing each block separately yields the same canonical span.
    std::optional<DiagonalAction> act;
    if (opts.block_action && opts.block_action->r > 1 &&
        static_cast<int>(opts.block_action->weights.size()) == n &&
        action_check(A, *opts.block_action).ok)
        act = opts.block_action;
    const int num_blocks = act ? static_cast<int>(act->r) : 1;

    // Relation rows with their weights; the unblocked path puts everything at 0.
    WordSpace ws2(n, 2);
    std::vector<std::pair<std::vector<std::pair<FreeWord, Cyc>>, int>> rels;
    std::vector<std::vector<int>> wl_by_pos, wr_by_pos;
    if (m >= 2) {
        if (act) {
            for (const auto& [weight, rows] : weight_split_relations(A, *act))
                for (const auto& row : rows) {
                    std::vector<std::pair<FreeWord, Cyc>> terms;
                    for (const auto& [col, c] : row) terms.emplace_back(ws2.word_of(col), c);
                    rels.emplace_back(std::move(terms), weight);
                }
            for (int i = 0; i + 2 <= m; ++i) {
                wl_by_pos.push_back(rank_weights(n, i, *act));
                wr_by_pos.push_back(rank_weights(n, m - 2 - i, *act));
            }
        } else {
            for (auto& terms : relation_rows(A)) rels.emplace_back(std::move(terms), 0);
        }
    }

    // Each block worker generates and reduces its own rows; allocations stay
    // thread-local.
    std::vector<RrefBuilder> builders;
    builders.reserve(static_cast<size_t>(num_blocks));
    for (int b = 0; b < num_blocks; ++b) builders.emplace_back(static_cast<int>(ws.size));
    exec::parallel_for(num_blocks, 2, [&](std::int64_t b) {
        RrefBuilder& builder = builders[static_cast<size_t>(b)];
        for (int i = 0; i + 2 <= m; ++i) {
            const std::int64_t left = ipow(n, i);
            const std::int64_t right = ipow(n, m - 2 - i);
            std::vector<SparseVec> batch;
            for (const auto& [rel, base_weight] : rels) {
                for (std::int64_t u = 0; u < left; ++u) {
                    for (std::int64_t w = 0; w < right; ++w) {
                        if (act &&
                            (base_weight + wl_by_pos[static_cast<size_t>(i)][static_cast<size_t>(u)] +
                             wr_by_pos[static_cast<size_t>(i)][static_cast<size_t>(w)]) %
                                    num_blocks !=
                                b)
                            continue;
                        SparseVec row;
                        row.reserve(rel.size());
                        for (const auto& [word2, c] : rel) {
                            std::int64_t rank = (u * ws2.size + ws2.lex_rank(word2)) * right + w;
                            row.emplace_back(static_cast<int>(ws.size - 1 - rank), c);
                        }
                        batch.push_back(sparse_normalize(std::move(row)));
                    }
                }
            }
            builder.insert_batch(std::move(batch));
        }
    });

    // Blocks have disjoint pivot columns, so the union of their reduced rows,
    // sorted by pivot, is already the canonical basis.
    std::vector<std::pair<int, SparseVec>> merged;
    for (auto& b : builders) {
        auto rows = b.sorted_rows();
        auto pivots = b.pivots();
        for (size_t i = 0; i < rows.size(); ++i)
            merged.emplace_back(pivots[i], std::move(rows[i]));
    }
    std::sort(merged.begin(), merged.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    out.ideal_span.ambient_dim = static_cast<int>(ws.size);
    for (auto& [pivot, row] : merged) {
        out.ideal_span.pivots.push_back(pivot);
        out.ideal_span.basis.push_back(std::move(row));
    }
    out.dim = static_cast<int>(ws.size) - out.ideal_span.dim();
    // Non-pivot columns, visited in descending column order = ascending lex.
    std::vector<bool> is_pivot(static_cast<size_t>(ws.size), false);
    for (int p : out.ideal_span.pivots) is_pivot[static_cast<size_t>(p)] = true;
    out.transversal.reserve(static_cast<size_t>(out.dim));
    for (std::int64_t col = ws.size - 1; col >= 0; --col)
        if (!is_pivot[static_cast<size_t>(col)])
            out.transversal.push_back(ws.word_of(static_cast<int>(col)));
    return out;
}

std::vector<int> hilbert_function(const QuadraticAlgebra& A, int N, const GradedOptions& opts) {
    if (N < 0) throw UsageError("hilbert_function: N must be nonnegative");
    std::vector<int> dims;
    dims.reserve(static_cast<size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) dims.push_back(graded_component(A, m, opts).dim);
    return dims;
}

namespace {

// U ⊗ V and V ⊗ U as coordinate reindexings; RREF structure is preserved,
// rows are re-sorted by their new pivots.
Subspace tensor_right(const Subspace& u, int n, int new_ambient) {
    const std::int64_t old_size = u.ambient_dim;
    std::vector<SparseVec> rows;
    rows.reserve(u.basis.size() * static_cast<size_t>(n));
    for (const auto& b : u.basis) {
        for (int l = 0; l < n; ++l) {
            SparseVec row;
            row.reserve(b.size());
            for (const auto& [col, c] : b) {
                std::int64_t rank = (old_size - 1 - col) * n + l;
                row.emplace_back(static_cast<int>(new_ambient - 1 - rank), c);
            }
            rows.push_back(sparse_normalize(std::move(row)));
        }
    }
    return Subspace::from_spanning(new_ambient, std::move(rows));
}

Subspace tensor_left(const Subspace& u, int n, int new_ambient) {
    const std::int64_t old_size = u.ambient_dim;
    std::vector<SparseVec> rows;
    rows.reserve(u.basis.size() * static_cast<size_t>(n));
    for (int l = 0; l < n; ++l) {
        for (const auto& b : u.basis) {
            SparseVec row;
            row.reserve(b.size());
            for (const auto& [col, c] : b) {
                std::int64_t rank = l * old_size + (old_size - 1 - col);
                row.emplace_back(static_cast<int>(new_ambient - 1 - rank), c);
            }
            rows.push_back(sparse_normalize(std::move(row)));
        }
    }
    return Subspace::from_spanning(new_ambient, std::move(rows));
}

}  // namespace

Subspace koszul_syzygy_space(const QuadraticAlgebra& A, int i, const GradedOptions& opts) {
    if (i < 0) throw UsageError("koszul_syzygy_space: index must be nonnegative");
    check_cap(i, opts);
    const int n = A.num_generators();
    if (i == 0) return Subspace::full(1, A.order);
    if (i == 1) return Subspace::full(n, A.order);
    Subspace k = A.relations;
    for (int j = 3; j <= i; ++j) {
        WordSpace ws(n, j);
        const int ambient = static_cast<int>(ws.size);
        Subspace kv = tensor_right(k, n, ambient);
        Subspace vk = tensor_left(k, n, ambient);
        k = intersect(kv, vk);
        if (k.dim() == 0 && j < i) {
            // stays zero from here on
            WordSpace top(n, i);
            return Subspace::zero(static_cast<int>(top.size));
        }
    }
    return k;
}

QuadraticAlgebra quadratic_dual(const QuadraticAlgebra& A) {
    const int n = A.num_generators();
    WordSpace ws2(n, 2);
    Matrix m;
    m.cols = static_cast<int>(ws2.size);
    m.data = A.relations.basis;
    m.rows = static_cast<int>(m.data.size());
    Subspace perp = kernel(m);
    QuadraticAlgebra dual;
    dual.generator_names.reserve(A.generator_names.size());
    for (const auto& name : A.generator_names) {
        if (!name.empty() && name.back() == '*')
            dual.generator_names.push_back(name.substr(0, name.size() - 1));
        else
            dual.generator_names.push_back(name + "*");
    }
    dual.order = A.order;
    dual.relations = std::move(perp);
    return dual;
}

namespace {

// Splits a relation row into its weight-homogeneous components.
std::map<int, SparseVec> split_row_by_weight(const SparseVec& row, const WordSpace& ws2,
                                             const DiagonalAction& act) {
    std::map<int, SparseVec> comps;
    for (const auto& [col, c] : row)
        comps[act.word_weight(ws2.word_of(col))].emplace_back(col, c);
    return comps;
}

}  // namespace

ActionCheckResult action_check(const QuadraticAlgebra& A, const DiagonalAction& act) {
    const int n = A.num_generators();
    if (static_cast<int>(act.weights.size()) != n)
        throw UsageError("action_check: weight count does not match generator count");
    WordSpace ws2(n, 2);
    ActionCheckResult res;
    std::map<int, RrefBuilder> blocks;
    for (const auto& row : A.relations.basis) {
        auto comps = split_row_by_weight(row, ws2, act);
        if (comps.size() > 1) {
            for (auto& [w, comp] : comps) {
                if (!A.relations.contains(comp)) {
                    res.ok = false;
                    res.violating = std::move(comp);
                    return res;
                }
            }
        }
        for (auto& [w, comp] : comps) {
            auto it = blocks.find(w);
            if (it == blocks.end())
                it = blocks.emplace(w, RrefBuilder(static_cast<int>(ws2.size))).first;
            it->second.insert(std::move(comp));
        }
    }
    res.ok = true;
    for (const auto& [w, b] : blocks) res.weight_blocks.emplace_back(w, b.rank());
    return res;
}

std::vector<std::pair<int, std::vector<SparseVec>>> weight_split_relations(
    const QuadraticAlgebra& A, const DiagonalAction& act) {
    auto check = action_check(A, act);
    if (!check.ok)
        throw UsageError("weight_split_relations: relations are not invariant under the action");
    const int n = A.num_generators();
    WordSpace ws2(n, 2);
    std::map<int, RrefBuilder> blocks;
    for (const auto& row : A.relations.basis)
        for (auto& [w, comp] : split_row_by_weight(row, ws2, act)) {
            auto it = blocks.find(w);
            if (it == blocks.end())
                it = blocks.emplace(w, RrefBuilder(static_cast<int>(ws2.size))).first;
            it->second.insert(std::move(comp));
        }
    std::vector<std::pair<int, std::vector<SparseVec>>> out;
    out.reserve(blocks.size());
    for (const auto& [w, b] : blocks) out.emplace_back(w, b.sorted_rows());
    return out;
}

Cyc hdet_diagonal(const QuadraticAlgebra& A, const DiagonalAction& act, int d,
                  bool inverse_convention, const GradedOptions& opts) {
    if (static_cast<int>(act.weights.size()) != A.num_generators())
        throw UsageError("hdet_diagonal: weight count does not match generator count");
    Subspace socle = koszul_syzygy_space(A, d, opts);
    if (socle.dim() != 1)
        throw Error("hdet: socle not one-dimensional (dim K^" + std::to_string(d) + "_" +
                    std::to_string(d) + " = " + std::to_string(socle.dim()) + ")");
    Subspace beyond = koszul_syzygy_space(A, d + 1, opts);
    if (beyond.dim() != 0)
        throw Error("hdet: K^" + std::to_string(d + 1) + "_" + std::to_string(d + 1) +
                    " is nonzero, so the claimed global dimension is not " + std::to_string(d));
    WordSpace ws(A.num_generators(), d);
    const SparseVec& row = socle.basis.front();
    int w = -1;
    for (const auto& [col, c] : row) {
        int cw = act.word_weight(ws.word_of(col));
        if (w == -1)
            w = cw;
        else if (w != cw)
            throw Error("hdet: socle is not weight-homogeneous under the action");
    }
    if (inverse_convention) w = (static_cast<int>(act.r) - w) % static_cast<int>(act.r);
    return root_of_unity(act.r, w);
}

FrobeniusReport frobenius_pairing_check(const QuadraticAlgebra& A_dual, int ell,
                                        const GradedOptions& opts) {
    FrobeniusReport rep;
    if (ell < 0) throw UsageError("frobenius_pairing_check: ell must be nonnegative");
    std::vector<GradedComponent> comps;
    comps.reserve(static_cast<size_t>(ell) + 2);
    for (int i = 0; i <= ell + 1; ++i) comps.push_back(graded_component(A_dual, i, opts));
    if (comps[static_cast<size_t>(ell) + 1].dim != 0) {
        rep.top_degree_ok = false;
        rep.failure = "algebra extends beyond degree " + std::to_string(ell);
        return rep;
    }
    if (comps[static_cast<size_t>(ell)].dim != 1) {
        rep.top_degree_ok = false;
        rep.failure = "top degree dimension is " +
                      std::to_string(comps[static_cast<size_t>(ell)].dim) + ", expected 1";
        return rep;
    }
    rep.top_degree_ok = true;
    const int n = A_dual.num_generators();
    WordSpace ws_top(n, ell);
    const int top_col = ws_top.col_of(comps[static_cast<size_t>(ell)].transversal.front());
    bool all_pass = true;
    for (int i = 0; i <= ell; ++i) {
        const auto& lo = comps[static_cast<size_t>(i)];
        const auto& hi = comps[static_cast<size_t>(ell - i)];
        std::vector<SparseVec> pairing_rows;
        pairing_rows.reserve(static_cast<size_t>(lo.dim));
        for (const auto& a : lo.transversal) {
            SparseVec row;
            for (int bj = 0; bj < hi.dim; ++bj) {
                FreeWord prod = a;
                const FreeWord& b = hi.transversal[static_cast<size_t>(bj)];
                prod.insert(prod.end(), b.begin(), b.end());
                SparseVec residue =
                    reduce_word(comps[static_cast<size_t>(ell)], ws_top, prod, A_dual.order);
                const Cyc* c = sparse_at(residue, top_col);
                if (c && !c->is_zero()) row.emplace_back(bj, *c);
            }
            pairing_rows.push_back(sparse_normalize(std::move(row)));
        }
        RrefBuilder b(hi.dim);
        b.insert_batch(std::move(pairing_rows));
        FrobeniusDegreeReport dr;
        dr.degree = i;
        dr.dim_low = lo.dim;
        dr.dim_high = hi.dim;
        dr.pairing_rank = b.rank();
        dr.pass = (lo.dim == hi.dim) && (b.rank() == lo.dim);
        all_pass = all_pass && dr.pass;
        rep.degrees.push_back(dr);
    }
    rep.ok = all_pass;
    if (!rep.ok) rep.failure = "pairing degenerate in some degree";
    return rep;
}

std::vector<int> invariant_hilbert_function(const QuadraticAlgebra& A, const DiagonalAction& act,
                                            int N, const GradedOptions& opts) {
    if (static_cast<int>(act.weights.size()) != A.num_generators())
        throw UsageError("invariant_hilbert_function: weight count mismatch");
    if (!action_check(A, act).ok)
        throw UsageError(
            "invariant_hilbert_function: the action does not stabilize the relations, so it "
            "does not act on the graded components");
    const unsigned r = act.r;
    GradedOptions blocked = opts;
    blocked.block_action = act;
    std::vector<int> out;
    out.reserve(static_cast<size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
        GradedComponent comp = graded_component(A, m, blocked);
        std::map<int, int> block_dims;  // weight -> dimension
        for (const auto& w : comp.transversal) ++block_dims[act.word_weight(w)];
        // (1/r) sum_p tr(g^p | A_m) with tr(g^p) = sum_w zeta^(p*w) dim_w
        Cyc total = Cyc::zero(r);
        for (unsigned p = 0; p < r; ++p)
            for (const auto& [w, d] : block_dims)
                total += Cyc(Rational(d), r) * root_of_unity(r, static_cast<long>(p) * w);
        if (!total.is_rational())
            throw Error("invariant_hilbert_function: non-rational character sum");
        Rational value = total.rational_part() / Rational(static_cast<long>(r));
        if (value.get_den() != 1 || value < 0)
            throw Error("invariant_hilbert_function: non-integer invariant dimension");
        out.push_back(static_cast<int>(value.get_num().get_si()));
    }
    return out;
}

KoszulCheckReport koszul_numeric_check(const QuadraticAlgebra& A, int N,
                                       const GradedOptions& opts) {
    if (N < 2) throw UsageError("koszul_numeric_check: N must be at least 2");
    KoszulCheckReport rep;
    QuadraticAlgebra dual = quadratic_dual(A);
    GradedOptions dual_opts = opts;
    if (opts.block_action) dual_opts.block_action = dual_action(*opts.block_action);
    std::vector<int> a_dims = hilbert_function(A, N, opts);
    for (int i = 0; i <= N; ++i) {
        rep.syzygy_dims.push_back(koszul_syzygy_space(A, i, opts).dim());
        rep.dual_dims.push_back(graded_component(dual, i, dual_opts).dim);
        rep.dims_match.push_back(rep.syzygy_dims.back() == rep.dual_dims.back());
    }
    for (int m = 1; m <= N; ++m) {
        long long euler = 0;
        for (int i = 0; i <= m; ++i) {
            long long term = static_cast<long long>(rep.syzygy_dims[static_cast<size_t>(i)]) *
                             a_dims[static_cast<size_t>(m - i)];
            euler += (i % 2 == 0) ? term : -term;
        }
        rep.euler_ok.push_back(euler == 0);
    }
    rep.ok = std::all_of(rep.dims_match.begin(), rep.dims_match.end(), [](bool b) { return b; }) &&
             std::all_of(rep.euler_ok.begin(), rep.euler_ok.end(), [](bool b) { return b; });
    return rep;
}

SparseVec reduce_word(const GradedComponent& comp, const WordSpace& ws, const FreeWord& w,
                      unsigned order) {
    SparseVec v{{ws.col_of(w), Cyc::one(order)}};
    return coordinates_in_quotient(v, comp.ideal_span);
}

}  // namespace qcorner
