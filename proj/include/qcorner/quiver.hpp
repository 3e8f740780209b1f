#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcorner/linalg.hpp"

namespace qcorner {

// Structured vertex label: [i] for a plain integer vertex, [i, c] for a
// (layer, character) pair. Compared lexicographically.
using VertexLabel = std::vector<int>;
std::string label_str(const VertexLabel& v);

struct Arrow {
    int id = 0;
    int source = 0;  // vertex index
    int target = 0;  // vertex index
    std::string name;
    int grade = 1;
};

struct Quiver {
    std::vector<VertexLabel> vertices;
    std::vector<Arrow> arrows;

    int num_vertices() const { return static_cast<int>(vertices.size()); }
    std::optional<int> vertex_index(const VertexLabel& v) const;
    const Arrow& arrow(int id) const;
    void validate() const;  // endpoints exist, ids are 0..k-1 in order, grades >= 1
};

// A path is traversed left to right: arrows[0] first. p·q composes when
// target(p) = source(q). The empty path at a vertex is that vertex idempotent.
struct Path {
    int source = 0;  // vertex index; meaningful for empty paths
    std::vector<int> arrows;

    bool operator==(const Path& o) const { return source == o.source && arrows == o.arrows; }
    bool operator<(const Path& o) const {
        if (source != o.source) return source < o.source;
        return arrows < o.arrows;
    }
};

int path_target(const Quiver& q, const Path& p);
int path_grade(const Quiver& q, const Path& p);
std::string path_str(const Quiver& q, const Path& p);

// Homogeneous combination of parallel paths of one grade.
struct PathPolynomial {
    std::map<Path, Cyc> terms;

    bool empty() const { return terms.empty(); }
    int source() const { return terms.begin()->first.source; }
};

// Validates parallelism and grade homogeneity; drops zero coefficients.
PathPolynomial make_path_polynomial(const Quiver& q, std::vector<std::pair<Path, Cyc>> terms);

struct QuiverPresentation {
    Quiver quiver;
    std::vector<PathPolynomial> relations;
};

struct QuiverOptions {
    int max_degree = 8;
    std::int64_t path_limit = std::int64_t{1} << 22;  // refuse blowups, not truncate
};

// All paths of total grade m, optionally endpoint-filtered, ordered by
// (source index, arrow id sequence).
std::vector<Path> path_basis(const Quiver& q, int m, std::optional<int> source = {},
                             std::optional<int> target = {},
                             std::int64_t path_limit = std::int64_t{1} << 22);

struct QuiverGradedComponent {
    int degree = 0;
    std::int64_t num_paths = 0;
    int dim = 0;
    Subspace ideal_span;            // over the grade-m path coordinates (descending layout)
    std::vector<Path> paths;        // ascending path order
    std::vector<Path> transversal;  // non-pivot paths, ascending path order
};

// Reference implementation: materializes the full path basis and the ideal
// span rows a·rho·b, then row reduces per (source, target) bucket. The
// iterative engine in engine.hpp computes the same dimensions and transversals.
QuiverGradedComponent graded_dimension(const QuiverPresentation& p, int m,
                                       const QuiverOptions& opts = {});

struct FiniteDimReport {
    enum class Status { Finite, UnknownAtBound };
    Status status = Status::UnknownAtBound;
    std::vector<int> dims;  // degrees 0..(last nonzero)
    long long total = 0;    // meaningful when Finite
    int bound_used = 0;
};

// Scans graded dimensions until they provably vanish (a window of zeros of
// length max arrow grade) or the bound is hit.
FiniteDimReport finite_dimensionality(const QuiverPresentation& p, int bound = 32,
                                      const QuiverOptions& opts = {});

// Canonical form: per (source, target, grade) bucket, relations are re-spanned
// in RREF over the path basis; leading coefficients 1; zero relations dropped.
QuiverPresentation normalize(const QuiverPresentation& p, const QuiverOptions& opts = {});

// True iff p1, relabeled along the given bijections, equals p2 after
// normalization. Arrow names are not part of the comparison.
bool equal_after_relabel(const QuiverPresentation& p1, const QuiverPresentation& p2,
                         const std::map<VertexLabel, VertexLabel>& vertex_map,
                         const std::map<int, int>& arrow_map, const QuiverOptions& opts = {});

std::string dot_export(const QuiverPresentation& p);

// Relation rendered in equation style, e.g. "x2 x2 = -1 x1 x1" or "x1 x2 = 0".
std::string relation_str(const Quiver& q, const PathPolynomial& rel);

}  // namespace qcorner
