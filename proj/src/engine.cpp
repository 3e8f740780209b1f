#include "qcorner/engine.hpp"

#include <algorithm>

#include "qcorner/errors.hpp"

namespace qcorner {

DimensionEngine::DimensionEngine(QuiverPresentation p, std::int64_t column_limit)
    : pres_(std::move(p)), column_limit_(column_limit) {
    pres_.quiver.validate();
    for (const auto& rel : pres_.relations)
        for (const auto& [path, c] : rel.terms) order_ = lcm_order(order_, c.order());
}

int DimensionEngine::dim(int m) {
    compute_up_to(m);
    return static_cast<int>(stages_[static_cast<size_t>(m)].transversal.size());
}

const std::vector<Path>& DimensionEngine::transversal(int m) {
    compute_up_to(m);
    return stages_[static_cast<size_t>(m)].transversal;
}

void DimensionEngine::compute_up_to(int m) {
    if (m < 0) throw UsageError("DimensionEngine: negative grade");
    while (static_cast<int>(stages_.size()) <= m)
        compute_stage(static_cast<int>(stages_.size()));
}

SparseVec DimensionEngine::extend(int m0, SparseVec coords, std::span<const int> arrows) {
    int m = m0;
    for (int arrow_id : arrows) {
        const Arrow& a = pres_.quiver.arrow(arrow_id);
        const int m1 = m + a.grade;
        compute_up_to(m1);
        const Stage& next = stages_[static_cast<size_t>(m1)];
        SparseVec out;
        for (const auto& [t_idx, c] : coords) {
            auto it = next.step.find({t_idx, arrow_id});
            if (it == next.step.end()) continue;  // path does not compose: zero
            sparse_axpy(out, c, it->second);
        }
        coords = std::move(out);
        m = m1;
    }
    return coords;
}

SparseVec DimensionEngine::path_class(const Path& p) {
    compute_up_to(0);
    SparseVec start{{p.source, Cyc::one(order_)}};
    return extend(0, std::move(start), std::span<const int>(p.arrows));
}

FiniteDimReport finite_dimensionality(const QuiverPresentation& p, int bound,
                                      const QuiverOptions& opts) {
    int gmax = 1;
    for (const Arrow& a : p.quiver.arrows) gmax = std::max(gmax, a.grade);
    FiniteDimReport rep;
    rep.bound_used = bound;
    DimensionEngine engine(p, opts.path_limit);
    std::vector<int> dims;
    int zero_run = 0;
    for (int m = 0; m <= bound; ++m) {
        int d = engine.dim(m);
        dims.push_back(d);
        zero_run = (d == 0) ? zero_run + 1 : 0;
        // A zero window of length gmax forces all later degrees to vanish:
        // any longer path has a prefix whose grade lands inside the window.
        if (zero_run >= gmax) {
            rep.status = FiniteDimReport::Status::Finite;
            while (!dims.empty() && dims.back() == 0) dims.pop_back();
            rep.dims = std::move(dims);
            rep.total = 0;
            for (int x : rep.dims) rep.total += x;
            return rep;
        }
    }
    rep.status = FiniteDimReport::Status::UnknownAtBound;
    rep.dims = std::move(dims);
    rep.total = 0;
    for (int x : rep.dims) rep.total += x;
    return rep;
}

void DimensionEngine::compute_stage(int m) {
    const Quiver& q = pres_.quiver;
    Stage stage;
    if (m == 0) {
        for (int v = 0; v < q.num_vertices(); ++v) {
            Path e;
            e.source = v;
            stage.transversal.push_back(e);
            stage.index.emplace(std::move(e), v);
        }
        stages_.push_back(std::move(stage));
        return;
    }

    // Columns: (lower transversal path t, arrow a) with target(t) = source(a)
    // and grade(t) + grade(a) = m, bucketed by (source(t), target(a)).
    struct Column {
        Path path;       // t extended by a
        int t_idx;       // index in transversal(m - grade(a))
        int arrow_id;
    };
    std::map<std::pair<int, int>, std::vector<Column>> buckets;
    std::int64_t total_cols = 0;
    for (const Arrow& a : q.arrows) {
        if (a.grade > m) continue;
        const Stage& lower = stages_[static_cast<size_t>(m - a.grade)];
        for (size_t ti = 0; ti < lower.transversal.size(); ++ti) {
            const Path& t = lower.transversal[ti];
            if (path_target(q, t) != a.source) continue;
            Column col;
            col.path = t;
            col.path.arrows.push_back(a.id);
            col.t_idx = static_cast<int>(ti);
            col.arrow_id = a.id;
            buckets[{t.source, a.target}].push_back(std::move(col));
            if (++total_cols > column_limit_)
                throw DegreeCapError("dimension engine exceeds the column limit at grade " +
                                     std::to_string(m));
        }
    }
    for (auto& [key, cols] : buckets)
        std::sort(cols.begin(), cols.end(),
                  [](const Column& a, const Column& b) { return a.path < b.path; });

    // Rows: reductions of t · rho for relations rho of grade <= m. The first
    // arrows of each term are pushed through lower stages; the last arrow
    // lands in this stage's column coordinates.
    std::map<std::pair<int, int>, std::vector<SparseVec>> rows;
    std::map<std::pair<int, int>, std::map<std::pair<int, int>, int>> col_pos;
    for (auto& [key, cols] : buckets) {
        auto& index = col_pos[key];
        for (size_t i = 0; i < cols.size(); ++i)
            index.emplace(std::make_pair(cols[i].t_idx, cols[i].arrow_id), static_cast<int>(i));
    }
    for (const PathPolynomial& rel : pres_.relations) {
        if (rel.empty()) continue;
        const Path& first = rel.terms.begin()->first;
        const int g = path_grade(q, first);
        if (g > m || g < 1) continue;
        const Stage& lower = stages_[static_cast<size_t>(m - g)];
        for (size_t ti = 0; ti < lower.transversal.size(); ++ti) {
            const Path& t = lower.transversal[ti];
            if (path_target(q, t) != first.source) continue;
            const int bucket_tgt = path_target(q, first);
            auto& index = col_pos[{t.source, bucket_tgt}];
            const auto& cols = buckets[{t.source, bucket_tgt}];
            const int ncols = static_cast<int>(cols.size());
            SparseVec row;
            for (const auto& [term_path, c] : rel.terms) {
                // push t through all but the last arrow of the term
                std::span<const int> ids(term_path.arrows);
                SparseVec mid{{static_cast<int>(ti), c}};
                if (ids.size() > 1) mid = extend(m - g, std::move(mid), ids.first(ids.size() - 1));
                const int last = ids.back();
                const Arrow& la = q.arrow(last);
                for (const auto& [t2_idx, c2] : mid) {
                    // (t2, last) must be a column of this bucket
                    auto it = index.find({t2_idx, last});
                    if (it == index.end()) {
                        // t2's target must match; otherwise the term vanished
                        const Stage& l2 = stages_[static_cast<size_t>(m - la.grade)];
                        if (path_target(q, l2.transversal[static_cast<size_t>(t2_idx)]) !=
                            la.source)
                            continue;
                        throw Error("internal: missing engine column");
                    }
                    row.emplace_back(ncols - 1 - it->second, c2);
                }
            }
            rows[{t.source, bucket_tgt}].push_back(sparse_normalize(std::move(row)));
        }
    }

    // Reduce each bucket; non-pivot columns survive as the stage transversal.
    std::vector<std::pair<Path, std::pair<int, int>>> survivors;  // path, (t_idx, arrow)
    std::map<std::pair<int, int>, std::vector<std::pair<SparseVec, int>>> pivot_rows;
    for (auto& [key, cols] : buckets) {
        const int ncols = static_cast<int>(cols.size());
        RrefBuilder builder(ncols);
        auto it = rows.find(key);
        if (it != rows.end()) builder.insert_batch(std::move(it->second));
        std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
        for (int p : builder.pivots()) is_pivot[static_cast<size_t>(p)] = true;
        for (int col = ncols - 1; col >= 0; --col) {
            if (is_pivot[static_cast<size_t>(col)]) continue;
            const Column& c = cols[static_cast<size_t>(ncols - 1 - col)];
            survivors.emplace_back(c.path, std::make_pair(c.t_idx, c.arrow_id));
        }
        auto sorted = builder.sorted_rows();
        auto pivots = builder.pivots();
        for (size_t i = 0; i < sorted.size(); ++i)
            pivot_rows[key].emplace_back(std::move(sorted[i]), pivots[i]);
    }
    std::sort(survivors.begin(), survivors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < survivors.size(); ++i) {
        stage.transversal.push_back(survivors[i].first);
        stage.index.emplace(survivors[i].first, static_cast<int>(i));
        stage.step[survivors[i].second] = {{static_cast<int>(i), Cyc::one(order_)}};
    }
    // Pivot columns reduce to minus the non-pivot tail of their RREF row.
    for (auto& [key, prows] : pivot_rows) {
        const auto& cols = buckets[key];
        const int ncols = static_cast<int>(cols.size());
        for (auto& [row, pivot] : prows) {
            const Column& pc = cols[static_cast<size_t>(ncols - 1 - pivot)];
            SparseVec red;
            for (const auto& [col, c] : row) {
                if (col == pivot) continue;
                const Column& nc = cols[static_cast<size_t>(ncols - 1 - col)];
                red.emplace_back(stage.index.at(nc.path), -c);
            }
            stage.step[{pc.t_idx, pc.arrow_id}] = sparse_normalize(std::move(red));
        }
    }
    stages_.push_back(std::move(stage));
}

}  // namespace qcorner
