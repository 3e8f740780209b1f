#include "qcorner/quiver.hpp"

#include <algorithm>
#include <sstream>

#include "qcorner/errors.hpp"

namespace qcorner {

std::string label_str(const VertexLabel& v) {
    if (v.size() == 1) return std::to_string(v[0]);
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::optional<int> Quiver::vertex_index(const VertexLabel& v) const {
    for (size_t i = 0; i < vertices.size(); ++i)
        if (vertices[i] == v) return static_cast<int>(i);
    return std::nullopt;
}

const Arrow& Quiver::arrow(int id) const {
    if (id < 0 || id >= static_cast<int>(arrows.size()))
        throw UsageError("arrow id out of range");
    return arrows[static_cast<size_t>(id)];
}

void Quiver::validate() const {
    for (size_t i = 0; i < arrows.size(); ++i) {
        const Arrow& a = arrows[i];
        if (a.id != static_cast<int>(i)) throw UsageError("arrow ids must be 0..k-1 in order");
        if (a.source < 0 || a.source >= num_vertices() || a.target < 0 ||
            a.target >= num_vertices())
            throw UsageError("arrow endpoints reference missing vertices");
        if (a.grade < 1) throw UsageError("arrow grades must be positive");
    }
    for (size_t i = 0; i < vertices.size(); ++i)
        for (size_t j = i + 1; j < vertices.size(); ++j)
            if (vertices[i] == vertices[j]) throw UsageError("duplicate vertex label");
}

int path_target(const Quiver& q, const Path& p) {
    int v = p.source;
    for (int id : p.arrows) {
        const Arrow& a = q.arrow(id);
        if (a.source != v) throw UsageError("path arrows do not compose");
        v = a.target;
    }
    return v;
}

int path_grade(const Quiver& q, const Path& p) {
    int g = 0;
    for (int id : p.arrows) g += q.arrow(id).grade;
    return g;
}

std::string path_str(const Quiver& q, const Path& p) {
    if (p.arrows.empty()) return "e_" + label_str(q.vertices[static_cast<size_t>(p.source)]);
    std::string s;
    for (size_t i = 0; i < p.arrows.size(); ++i) {
        if (i) s += " ";
        s += q.arrow(p.arrows[i]).name;
    }
    return s;
}

PathPolynomial make_path_polynomial(const Quiver& q, std::vector<std::pair<Path, Cyc>> terms) {
    PathPolynomial poly;
    int src = -1, tgt = -1, grade = -1;
    for (auto& [path, coeff] : terms) {
        if (coeff.is_zero()) continue;
        int t = path_target(q, path);
        int g = path_grade(q, path);
        if (src == -1) {
            src = path.source;
            tgt = t;
            grade = g;
        } else if (src != path.source || tgt != t || grade != g) {
            throw UsageError("relation terms must be parallel paths of equal grade");
        }
        auto [it, inserted] = poly.terms.emplace(std::move(path), coeff);
        if (!inserted) it->second += coeff;
    }
    for (auto it = poly.terms.begin(); it != poly.terms.end();)
        it = it->second.is_zero() ? poly.terms.erase(it) : std::next(it);
    return poly;
}

std::vector<Path> path_basis(const Quiver& q, int m, std::optional<int> source,
                             std::optional<int> target, std::int64_t path_limit) {
    if (m < 0) throw UsageError("path_basis: grade must be nonnegative");
    std::vector<Path> out;
    // arrows out of each vertex, in id order
    std::vector<std::vector<int>> outgoing(static_cast<size_t>(q.num_vertices()));
    for (const Arrow& a : q.arrows) outgoing[static_cast<size_t>(a.source)].push_back(a.id);

    std::vector<int> stack;
    int start = 0;
    auto dfs = [&](auto&& self, int at, int grade_left) -> void {
        if (grade_left == 0) {
            if (!target || *target == at) {
                if (static_cast<std::int64_t>(out.size()) >= path_limit)
                    throw DegreeCapError("path enumeration exceeds the configured limit");
                Path p;
                p.source = start;
                p.arrows = stack;
                out.push_back(std::move(p));
            }
            return;
        }
        for (int id : outgoing[static_cast<size_t>(at)]) {
            const Arrow& a = q.arrow(id);
            if (a.grade > grade_left) continue;
            stack.push_back(id);
            self(self, a.target, grade_left - a.grade);
            stack.pop_back();
        }
    };

    for (int v = 0; v < q.num_vertices(); ++v) {
        if (source && *source != v) continue;
        start = v;
        dfs(dfs, v, m);
    }
    return out;
}

namespace {

struct Bucket {
    std::vector<Path> paths;           // ascending path order
    std::map<Path, int> index;         // path -> position
};

// Groups grade-m paths by (source, target); bucket order is (source, target).
std::map<std::pair<int, int>, Bucket> bucket_paths(const Quiver& q, const std::vector<Path>& all) {
    std::map<std::pair<int, int>, Bucket> buckets;
    for (const Path& p : all) buckets[{p.source, path_target(q, p)}].paths.push_back(p);
    for (auto& [key, b] : buckets)
        for (size_t i = 0; i < b.paths.size(); ++i) b.index.emplace(b.paths[i], static_cast<int>(i));
    return buckets;
}

// Descending column layout within a bucket, matching the word-space convention.
int bucket_col(const Bucket& b, const Path& p) {
    auto it = b.index.find(p);
    if (it == b.index.end()) throw Error("internal: path missing from its bucket");
    return static_cast<int>(b.paths.size()) - 1 - it->second;
}

}  // namespace

QuiverGradedComponent graded_dimension(const QuiverPresentation& p, int m,
                                       const QuiverOptions& opts) {
    if (m < 0) throw UsageError("graded_dimension: grade must be nonnegative");
    if (m > opts.max_degree)
        throw DegreeCapError("grade " + std::to_string(m) + " exceeds the configured cap of " +
                             std::to_string(opts.max_degree));
    const Quiver& q = p.quiver;
    QuiverGradedComponent out;
    out.degree = m;
    out.paths = path_basis(q, m, {}, {}, opts.path_limit);
    out.num_paths = static_cast<std::int64_t>(out.paths.size());

    auto buckets = bucket_paths(q, out.paths);

    // Ideal rows: a · rho · b with matching endpoints and grades summing to m.
    std::map<std::pair<int, int>, std::vector<SparseVec>> rows_by_bucket;
    for (const PathPolynomial& rel : p.relations) {
        if (rel.empty()) continue;
        const Path& first = rel.terms.begin()->first;
        const int rel_src = first.source;
        const int rel_tgt = path_target(q, first);
        const int rel_grade = path_grade(q, first);
        if (rel_grade > m) continue;
        for (int ga = 0; ga + rel_grade <= m; ++ga) {
            const int gb = m - rel_grade - ga;
            auto lefts = path_basis(q, ga, {}, rel_src, opts.path_limit);
            auto rights = path_basis(q, gb, rel_tgt, {}, opts.path_limit);
            for (const Path& a : lefts) {
                for (const Path& b : rights) {
                    const int tgt = path_target(q, b);
                    const Bucket& bucket = buckets.at({a.source, tgt});
                    SparseVec row;
                    row.reserve(rel.terms.size());
                    for (const auto& [mid, c] : rel.terms) {
                        Path full;
                        full.source = a.source;
                        full.arrows = a.arrows;
                        full.arrows.insert(full.arrows.end(), mid.arrows.begin(),
                                           mid.arrows.end());
                        full.arrows.insert(full.arrows.end(), b.arrows.begin(), b.arrows.end());
                        row.emplace_back(bucket_col(bucket, full), c);
                    }
                    rows_by_bucket[{a.source, tgt}].push_back(sparse_normalize(std::move(row)));
                }
            }
        }
    }

    // Reduce each bucket independently, then stitch into global coordinates.
    // Global column of a path = descending position in the global path list.
    std::map<Path, int> global_index;
    for (size_t i = 0; i < out.paths.size(); ++i)
        global_index.emplace(out.paths[i], static_cast<int>(out.paths.size()) - 1 -
                                               static_cast<int>(i));
    std::vector<SparseVec> global_rows;
    std::map<Path, bool> pivot_path;
    for (auto& [key, bucket] : buckets) {
        auto it = rows_by_bucket.find(key);
        if (it == rows_by_bucket.end()) continue;
        RrefBuilder builder(static_cast<int>(bucket.paths.size()));
        builder.insert_batch(std::move(it->second));
        for (const auto& row : builder.sorted_rows()) {
            SparseVec g;
            g.reserve(row.size());
            for (const auto& [col, c] : row) {
                const Path& path =
                    bucket.paths[static_cast<size_t>(static_cast<int>(bucket.paths.size()) - 1 -
                                                     col)];
                g.emplace_back(global_index.at(path), c);
            }
            global_rows.push_back(sparse_normalize(std::move(g)));
        }
        for (int col : builder.pivots())
            pivot_path[bucket.paths[static_cast<size_t>(static_cast<int>(bucket.paths.size()) -
                                                        1 - col)]] = true;
    }
    out.ideal_span = Subspace::from_spanning(static_cast<int>(out.paths.size()),
                                             std::move(global_rows));
    out.dim = static_cast<int>(out.paths.size()) - out.ideal_span.dim();
    for (const Path& path : out.paths)
        if (!pivot_path.count(path)) out.transversal.push_back(path);
    return out;
}

QuiverPresentation normalize(const QuiverPresentation& p, const QuiverOptions& opts) {
    const Quiver& q = p.quiver;
    // Bucket relations by (grade, source, target).
    std::map<std::tuple<int, int, int>, std::vector<const PathPolynomial*>> groups;
    for (const PathPolynomial& rel : p.relations) {
        if (rel.empty()) continue;
        const Path& first = rel.terms.begin()->first;
        groups[{path_grade(q, first), first.source, path_target(q, first)}].push_back(&rel);
    }
    QuiverPresentation out;
    out.quiver = q;
    for (const auto& [key, rels] : groups) {
        const auto [grade, src, tgt] = key;
        auto paths = path_basis(q, grade, src, tgt, opts.path_limit);
        std::map<Path, int> index;
        for (size_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], static_cast<int>(i));
        const int cols = static_cast<int>(paths.size());
        RrefBuilder builder(cols);
        for (const PathPolynomial* rel : rels) {
            SparseVec row;
            row.reserve(rel->terms.size());
            for (const auto& [path, c] : rel->terms)
                row.emplace_back(cols - 1 - index.at(path), c);
            builder.insert(sparse_normalize(std::move(row)));
        }
        for (const auto& row : builder.sorted_rows()) {
            std::vector<std::pair<Path, Cyc>> terms;
            terms.reserve(row.size());
            for (const auto& [col, c] : row)
                terms.emplace_back(paths[static_cast<size_t>(cols - 1 - col)], c);
            out.relations.push_back(make_path_polynomial(q, std::move(terms)));
        }
    }
    return out;
}

bool equal_after_relabel(const QuiverPresentation& p1, const QuiverPresentation& p2,
                         const std::map<VertexLabel, VertexLabel>& vertex_map,
                         const std::map<int, int>& arrow_map, const QuiverOptions& opts) {
    const Quiver& q1 = p1.quiver;
    const Quiver& q2 = p2.quiver;
    if (q1.num_vertices() != q2.num_vertices() || q1.arrows.size() != q2.arrows.size())
        return false;
    // Bijectivity checks.
    if (vertex_map.size() != q1.vertices.size() || arrow_map.size() != q1.arrows.size())
        throw UsageError("equal_after_relabel: maps must cover all vertices and arrows");
    {
        std::map<VertexLabel, int> seen;
        for (const auto& [a, b] : vertex_map)
            if (++seen[b] > 1) throw UsageError("equal_after_relabel: vertex map not injective");
        std::map<int, int> seen2;
        for (const auto& [a, b] : arrow_map)
            if (++seen2[b] > 1) throw UsageError("equal_after_relabel: arrow map not injective");
    }
    // Vertex translation q1 index -> q2 index.
    std::vector<int> vmap(static_cast<size_t>(q1.num_vertices()), -1);
    for (int v = 0; v < q1.num_vertices(); ++v) {
        auto it = vertex_map.find(q1.vertices[static_cast<size_t>(v)]);
        if (it == vertex_map.end())
            throw UsageError("equal_after_relabel: vertex map misses a vertex");
        auto idx = q2.vertex_index(it->second);
        if (!idx) return false;
        vmap[static_cast<size_t>(v)] = *idx;
    }
    // Arrow translation and structural agreement (names ignored).
    std::vector<int> amap(q1.arrows.size(), -1);
    for (const Arrow& a : q1.arrows) {
        auto it = arrow_map.find(a.id);
        if (it == arrow_map.end())
            throw UsageError("equal_after_relabel: arrow map misses an arrow");
        if (it->second < 0 || it->second >= static_cast<int>(q2.arrows.size())) return false;
        const Arrow& b = q2.arrow(it->second);
        if (vmap[static_cast<size_t>(a.source)] != b.source ||
            vmap[static_cast<size_t>(a.target)] != b.target || a.grade != b.grade)
            return false;
        amap[static_cast<size_t>(a.id)] = it->second;
    }
    // Translate p1's relations into q2 and compare canonical forms.
    QuiverPresentation translated;
    translated.quiver = q2;
    for (const PathPolynomial& rel : p1.relations) {
        std::vector<std::pair<Path, Cyc>> terms;
        for (const auto& [path, c] : rel.terms) {
            Path moved;
            moved.source = vmap[static_cast<size_t>(path.source)];
            moved.arrows.reserve(path.arrows.size());
            for (int id : path.arrows) moved.arrows.push_back(amap[static_cast<size_t>(id)]);
            terms.emplace_back(std::move(moved), c);
        }
        translated.relations.push_back(make_path_polynomial(q2, std::move(terms)));
    }
    QuiverPresentation lhs = normalize(translated, opts);
    QuiverPresentation rhs = normalize(p2, opts);
    if (lhs.relations.size() != rhs.relations.size()) return false;
    for (size_t i = 0; i < lhs.relations.size(); ++i)
        if (lhs.relations[i].terms != rhs.relations[i].terms) return false;
    return true;
}

std::string relation_str(const Quiver& q, const PathPolynomial& rel) {
    if (rel.empty()) return "0 = 0";
    std::ostringstream os;
    // leading (pivot) term first: the lex-largest path, normalized to 1
    auto it = rel.terms.rbegin();
    if (!it->second.is_one()) os << "(" << it->second.str() << ") ";
    os << path_str(q, it->first);
    ++it;
    if (it == rel.terms.rend()) {
        os << " = 0";
        return os.str();
    }
    os << " =";
    for (bool first = true; it != rel.terms.rend(); ++it, first = false) {
        Cyc c = -it->second;
        if (c.is_one()) {
            os << (first ? " " : " + ");
        } else if (c.is_rational() && c.rational_part() < 0) {
            Cyc pos = -c;
            os << " - ";
            if (!pos.is_one()) os << pos.str() << " ";
        } else if (c.is_rational()) {
            os << (first ? " " : " + ") << c.str() << " ";
        } else {
            os << (first ? " " : " + ") << "(" << c.str() << ") ";
        }
        os << path_str(q, it->first);
    }
    return os.str();
}

std::string dot_export(const QuiverPresentation& p) {
    std::ostringstream os;
    os << "digraph {\n";
    for (const auto& v : p.quiver.vertices) os << "  \"" << label_str(v) << "\";\n";
    for (const Arrow& a : p.quiver.arrows) {
        os << "  \"" << label_str(p.quiver.vertices[static_cast<size_t>(a.source)]) << "\" -> \""
           << label_str(p.quiver.vertices[static_cast<size_t>(a.target)]) << "\" [label=\""
           << a.name << "\"";
        if (a.grade != 1) os << " grade=" << a.grade;
        os << "];\n";
    }
    if (!p.relations.empty()) {
        os << "  // relations:\n";
        for (const PathPolynomial& rel : p.relations)
            os << "  //   " << relation_str(p.quiver, rel) << "\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace qcorner
