#include "qcorner/linalg.hpp"

#include <algorithm>

#include "qcorner/errors.hpp"
#include "qcorner/exec.hpp"

namespace qcorner {

SparseVec sparse_normalize(SparseVec v) {
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.reserve(v.size());
    for (auto& e : v) {
        if (!out.empty() && out.back().first == e.first)
            out.back().second += e.second;
        else
            out.push_back(std::move(e));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const auto& e) { return e.second.is_zero(); }),
              out.end());
    return out;
}

void sparse_axpy(SparseVec& v, const Cyc& c, const SparseVec& w) {
    if (c.is_zero() || w.empty()) return;
    SparseVec out;
    out.reserve(v.size() + w.size());
    size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
        if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
            out.push_back(std::move(v[i++]));
        } else if (i == v.size() || w[j].first < v[i].first) {
            out.emplace_back(w[j].first, c * w[j].second);
            if (out.back().second.is_zero()) out.pop_back();
            ++j;
        } else {
            Cyc s = v[i].second + c * w[j].second;
            if (!s.is_zero()) out.emplace_back(v[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    v = std::move(out);
}

const Cyc* sparse_at(const SparseVec& v, int col) {
    auto it = std::lower_bound(v.begin(), v.end(), col,
                               [](const auto& e, int c) { return e.first < c; });
    if (it != v.end() && it->first == col) return &it->second;
    return nullptr;
}

SparseVec sparse_scale(SparseVec v, const Cyc& c) {
    if (c.is_zero()) return {};
    for (auto& e : v) e.second *= c;
    return v;
}

Matrix Matrix::from_rows(int cols, std::vector<SparseVec> rows) {
    Matrix m;
    m.cols = cols;
    m.rows = static_cast<int>(rows.size());
    m.data.reserve(rows.size());
    for (auto& r : rows) m.data.push_back(sparse_normalize(std::move(r)));
    return m;
}

SparseVec RrefBuilder::reduce(SparseVec v) const {
    SparseVec out = std::move(v);
    // Eliminating a pivot column only introduces strictly larger columns, so
    // the left-to-right sweep terminates; the residue carries no pivot columns
    // and is canonical whether or not back-substitution has run.
    size_t i = 0;
    while (i < out.size()) {
        auto it = pivot_row_.find(out[i].first);
        if (it == pivot_row_.end()) {
            ++i;
            continue;
        }
        Cyc c = -out[i].second;
        sparse_axpy(out, c, rows_[it->second]);
        // out changed; re-scan from the same ordinal position.
    }
    return out;
}

bool RrefBuilder::insert(SparseVec v) {
    v = reduce(std::move(v));
    if (v.empty()) return false;
    const int p = v.front().first;
    Cyc inv = v.front().second.inverse();
    v = sparse_scale(std::move(v), inv);
    const int my_index = static_cast<int>(rows_.size());
    rows_.push_back(std::move(v));
    pivot_row_.emplace(p, my_index);
    normalized_ = false;
    return true;
}

void RrefBuilder::insert_batch(std::vector<SparseVec> batch) {
    const std::int64_t n = static_cast<std::int64_t>(batch.size());
    exec::parallel_for(n, 128, [&](std::int64_t i) { batch[i] = reduce(std::move(batch[i])); });
    for (auto& row : batch) insert(std::move(row));
}

void RrefBuilder::back_substitute() const {
    if (normalized_) return;
    // In decreasing pivot order every pivot column appearing in a tail belongs
    // to an already-finalized row, so one pass suffices.
    for (auto it = pivot_row_.rbegin(); it != pivot_row_.rend(); ++it) {
        SparseVec& row = rows_[static_cast<size_t>(it->second)];
        size_t i = 1;  // entry 0 is the row's own pivot
        while (i < row.size()) {
            auto hit = pivot_row_.find(row[i].first);
            if (hit == pivot_row_.end()) {
                ++i;
                continue;
            }
            Cyc c = -row[i].second;
            sparse_axpy(row, c, rows_[static_cast<size_t>(hit->second)]);
        }
    }
    normalized_ = true;
}

std::vector<SparseVec> RrefBuilder::sorted_rows() const {
    back_substitute();
    std::vector<SparseVec> out;
    out.reserve(pivot_row_.size());
    for (const auto& [col, idx] : pivot_row_) out.push_back(rows_[idx]);
    return out;
}

std::vector<int> RrefBuilder::pivots() const {
    std::vector<int> out;
    out.reserve(pivot_row_.size());
    for (const auto& [col, idx] : pivot_row_) out.push_back(col);
    return out;
}

bool Subspace::contains(const SparseVec& v) const {
    SparseVec r = coordinates_in_quotient(v, *this);
    return r.empty();
}

Subspace Subspace::zero(int ambient) {
    Subspace s;
    s.ambient_dim = ambient;
    return s;
}

Subspace Subspace::full(int ambient, unsigned order) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis.reserve(ambient);
    s.pivots.reserve(ambient);
    for (int i = 0; i < ambient; ++i) {
        s.basis.push_back({{i, Cyc::one(order)}});
        s.pivots.push_back(i);
    }
    return s;
}

Subspace Subspace::from_spanning(int ambient, std::vector<SparseVec> rows) {
    RrefBuilder b(ambient);
    b.insert_batch(std::move(rows));
    return from_builder(ambient, b);
}

Subspace Subspace::from_builder(int ambient, const RrefBuilder& b) {
    Subspace s;
    s.ambient_dim = ambient;
    s.basis = b.sorted_rows();
    s.pivots = b.pivots();
    return s;
}

RrefResult rref(const Matrix& m) {
    RrefBuilder b(m.cols);
    b.insert_batch(m.data);
    RrefResult out;
    out.reduced.cols = m.cols;
    out.reduced.data = b.sorted_rows();
    out.reduced.rows = static_cast<int>(out.reduced.data.size());
    out.rank = b.rank();
    out.pivots = b.pivots();
    return out;
}

RrefResult rref_reference(const Matrix& m) {
    std::vector<SparseVec> rows = m.data;
    std::vector<SparseVec> done;
    std::vector<int> pivots;
    for (;;) {
        // Find the smallest leading column among the remaining rows.
        int best = -1;
        for (const auto& r : rows)
            if (!r.empty() && (best == -1 || r.front().first < best)) best = r.front().first;
        if (best == -1) break;
        size_t pick = 0;
        while (rows[pick].empty() || rows[pick].front().first != best) ++pick;
        Cyc lead_inv = rows[pick].front().second.inverse();
        SparseVec piv = sparse_scale(std::move(rows[pick]), lead_inv);
        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pick));
        for (auto& r : rows) {
            const Cyc* hit = sparse_at(r, best);
            if (hit) {
                Cyc c = -*hit;
                sparse_axpy(r, c, piv);
            }
        }
        for (auto& r : done) {
            const Cyc* hit = sparse_at(r, best);
            if (hit) {
                Cyc c = -*hit;
                sparse_axpy(r, c, piv);
            }
        }
        done.push_back(std::move(piv));
        pivots.push_back(best);
    }
    std::vector<size_t> order(done.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    RrefResult out;
    out.reduced.cols = m.cols;
    for (size_t i : order) {
        out.reduced.data.push_back(std::move(done[i]));
        out.pivots.push_back(pivots[i]);
    }
    out.reduced.rows = static_cast<int>(out.reduced.data.size());
    out.rank = out.reduced.rows;
    return out;
}

Subspace kernel(const Matrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int p : r.pivots) is_pivot[p] = true;
    std::vector<SparseVec> gens;
    unsigned order = 1;
    for (const auto& row : r.reduced.data)
        for (const auto& e : row) order = lcm_order(order, e.second.order());
    for (int f = 0; f < m.cols; ++f) {
        if (is_pivot[f]) continue;
        SparseVec v;
        v.emplace_back(f, Cyc::one(order));
        for (size_t i = 0; i < r.reduced.data.size(); ++i) {
            const Cyc* a = sparse_at(r.reduced.data[i], f);
            if (a) v.emplace_back(r.pivots[i], -(a->embedded(order)));
        }
        gens.push_back(sparse_normalize(std::move(v)));
    }
    return Subspace::from_spanning(m.cols, std::move(gens));
}

Subspace intersect(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim != v.ambient_dim)
        throw UsageError("intersect: ambient dimension mismatch");
    const int n = u.ambient_dim;
    // Zassenhaus: rows [x | x] for x in U, [y | 0] for y in V; kernel-side rows
    // with zero left half have right halves spanning U ∩ V.
    std::vector<SparseVec> rows;
    rows.reserve(u.basis.size() + v.basis.size());
    for (const auto& x : u.basis) {
        SparseVec r = x;
        for (const auto& e : x) r.emplace_back(e.first + n, e.second);
        rows.push_back(sparse_normalize(std::move(r)));
    }
    for (const auto& y : v.basis) rows.push_back(y);
    RrefBuilder b(2 * n);
    b.insert_batch(std::move(rows));
    std::vector<SparseVec> inter;
    for (const auto& row : b.sorted_rows()) {
        if (row.empty() || row.front().first < n) continue;
        SparseVec shifted;
        shifted.reserve(row.size());
        for (const auto& e : row) shifted.emplace_back(e.first - n, e.second);
        inter.push_back(std::move(shifted));
    }
    return Subspace::from_spanning(n, std::move(inter));
}

Subspace sum(const Subspace& u, const Subspace& v) {
    if (u.ambient_dim != v.ambient_dim) throw UsageError("sum: ambient dimension mismatch");
    std::vector<SparseVec> rows = u.basis;
    rows.insert(rows.end(), v.basis.begin(), v.basis.end());
    return Subspace::from_spanning(u.ambient_dim, std::move(rows));
}

int quotient_dim(const Subspace& ambient, const Subspace& w) {
    if (ambient.ambient_dim != w.ambient_dim)
        throw UsageError("quotient_dim: ambient dimension mismatch");
    return ambient.dim() - intersect(w, ambient).dim();
}

int quotient_dim_full(int ambient_dim, const Subspace& w) {
    if (ambient_dim != w.ambient_dim)
        throw UsageError("quotient_dim: ambient dimension mismatch");
    return ambient_dim - w.dim();
}

SparseVec coordinates_in_quotient(const SparseVec& v, const Subspace& w) {
    SparseVec out = sparse_normalize(v);
    size_t i = 0;
    while (i < out.size()) {
        auto it = std::lower_bound(w.pivots.begin(), w.pivots.end(), out[i].first);
        if (it == w.pivots.end() || *it != out[i].first) {
            ++i;
            continue;
        }
        const size_t row = static_cast<size_t>(it - w.pivots.begin());
        Cyc c = -out[i].second;
        sparse_axpy(out, c, w.basis[row]);
    }
    return out;
}

}  // namespace qcorner
