#pragma once
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qcorner/cyclotomic.hpp"

namespace qcorner {

// Sparse vector: (column, nonzero value) pairs sorted by column.
using SparseVec = std::vector<std::pair<int, Cyc>>;

SparseVec sparse_normalize(SparseVec v);  // sort, merge duplicates, drop zeros
// v += c * w
void sparse_axpy(SparseVec& v, const Cyc& c, const SparseVec& w);
const Cyc* sparse_at(const SparseVec& v, int col);
SparseVec sparse_scale(SparseVec v, const Cyc& c);

struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<SparseVec> data;  // one sparse row per row index

    static Matrix from_rows(int cols, std::vector<SparseVec> rows);
};

// Incrementally maintained row echelon form with deferred back-substitution.
// Inserted rows are forward-reduced immediately (their leading columns are
// fresh pivots); tails are cleaned of pivot columns lazily, in one pass over
// rows in decreasing pivot order, when the canonical basis is requested.
// The final basis does not depend on insertion order.
class RrefBuilder {
   public:
    explicit RrefBuilder(int cols) : cols_(cols) {}

    // Canonical residue of v against the row space; empty means membership.
    // Valid regardless of whether back-substitution has run.
    SparseVec reduce(SparseVec v) const;

    // Reduce and, if nonzero, add as a new pivot row. Returns true if rank grew.
    bool insert(SparseVec v);

    // Bulk insertion; pre-reduces the batch against the current rows in
    // parallel, then fixes up serially.
    void insert_batch(std::vector<SparseVec> batch);

    int rank() const { return static_cast<int>(pivot_row_.size()); }
    int cols() const { return cols_; }
    bool has_pivot(int col) const { return pivot_row_.count(col) != 0; }

    // Fully reduced rows sorted by pivot column, with their pivot columns.
    std::vector<SparseVec> sorted_rows() const;
    std::vector<int> pivots() const;

   private:
    void back_substitute() const;

    int cols_;
    mutable bool normalized_ = true;
    mutable std::vector<SparseVec> rows_;
    std::map<int, int> pivot_row_;  // pivot column -> index into rows_
};

// Canonical subspace of k^ambient_dim: basis in RREF, rows sorted by pivot.
struct Subspace {
    int ambient_dim = 0;
    std::vector<SparseVec> basis;
    std::vector<int> pivots;

    int dim() const { return static_cast<int>(basis.size()); }
    bool contains(const SparseVec& v) const;
    bool operator==(const Subspace& o) const {
        return ambient_dim == o.ambient_dim && pivots == o.pivots && basis == o.basis;
    }

    static Subspace zero(int ambient);
    static Subspace full(int ambient, unsigned order);
    static Subspace from_spanning(int ambient, std::vector<SparseVec> rows);
    static Subspace from_builder(int ambient, const RrefBuilder& b);
};

struct RrefResult {
    Matrix reduced;
    int rank = 0;
    std::vector<int> pivots;
};

// Gauss-Jordan over the exact field; pivot = first nonzero entry in column
// order. Deterministic and canonical.
RrefResult rref(const Matrix& m);

// Textbook serial elimination, kept as the reference implementation for the
// batched/parallel builder. Same canonical output.
RrefResult rref_reference(const Matrix& m);

// Right null space as a subspace of k^cols.
Subspace kernel(const Matrix& m);

Subspace intersect(const Subspace& u, const Subspace& v);
Subspace sum(const Subspace& u, const Subspace& v);

// dim(ambient) - dim(w ∩ ambient)
int quotient_dim(const Subspace& ambient, const Subspace& w);
int quotient_dim_full(int ambient_dim, const Subspace& w);

// Canonical representative of v + W: v reduced against W's RREF basis.
SparseVec coordinates_in_quotient(const SparseVec& v, const Subspace& w);

}  // namespace qcorner
