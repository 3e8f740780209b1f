#include "qcorner/constructions.hpp"

#include <algorithm>

#include "qcorner/errors.hpp"

namespace qcorner {

Quiver mckay_quiver(const DiagonalAction& act, const std::vector<std::string>& generator_names) {
    const int r = static_cast<int>(act.r);
    const int n = static_cast<int>(generator_names.size());
    if (static_cast<int>(act.weights.size()) != n)
        throw UsageError("mckay_quiver: weight count does not match generator count");
    Quiver q;
    q.vertices.reserve(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) q.vertices.push_back({i});
    q.arrows.reserve(static_cast<size_t>(r) * n);
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < n; ++j) {
            Arrow a;
            a.id = i * n + j;
            a.source = ((i - act.weights[static_cast<size_t>(j)]) % r + r) % r;
            a.target = i;
            a.name = generator_names[static_cast<size_t>(j)];
            q.arrows.push_back(std::move(a));
        }
    }
    q.validate();
    return q;
}

namespace {

// Arrow copy of generator j whose target is vertex i.
int mckay_arrow(int n, int target, int j) { return target * n + j; }

}  // namespace

QuiverPresentation skew_group_presentation(const QuadraticAlgebra& A, const DiagonalAction& act,
                                           const QuiverOptions& opts) {
    auto check = action_check(A, act);
    if (!check.ok)
        throw UsageError(
            "skew_group_presentation: relations are not invariant under the action");
    const int n = A.num_generators();
    const int r = static_cast<int>(act.r);
    QuiverPresentation pres;
    pres.quiver = mckay_quiver(act, A.generator_names);
    WordSpace ws2(n, 2);
    // Weight-homogeneous relation basis; every term of a block row has the
    // same total weight, so its instances are parallel paths.
    for (const auto& [weight, rows] : weight_split_relations(A, act)) {
        for (const auto& row : rows) {
            for (int end = 0; end < r; ++end) {
                std::vector<std::pair<Path, Cyc>> terms;
                terms.reserve(row.size());
                for (const auto& [col, c] : row) {
                    FreeWord w = ws2.word_of(col);
                    // word s1 s2 ending at vertex `end`: the s2 copy targets
                    // `end`, the s1 copy targets end - a_{s2}.
                    const int mid = ((end - act.weights[static_cast<size_t>(w[1])]) % r + r) % r;
                    Path path;
                    path.arrows = {mckay_arrow(n, mid, w[0]), mckay_arrow(n, end, w[1])};
                    path.source = pres.quiver.arrow(path.arrows[0]).source;
                    terms.emplace_back(std::move(path), c);
                }
                pres.relations.push_back(make_path_polynomial(pres.quiver, std::move(terms)));
            }
        }
    }
    return normalize(pres, opts);
}

QuiverPresentation remove_trivial_vertex(const QuiverPresentation& p, const QuiverOptions& opts) {
    auto removed = p.quiver.vertex_index({0});
    if (!removed) throw UsageError("remove_trivial_vertex: no vertex labeled 0");
    QuiverPresentation out;
    std::vector<int> vmap(static_cast<size_t>(p.quiver.num_vertices()), -1);
    for (int v = 0; v < p.quiver.num_vertices(); ++v) {
        if (v == *removed) continue;
        vmap[static_cast<size_t>(v)] = out.quiver.num_vertices();
        out.quiver.vertices.push_back(p.quiver.vertices[static_cast<size_t>(v)]);
    }
    std::vector<int> amap(p.quiver.arrows.size(), -1);
    for (const Arrow& a : p.quiver.arrows) {
        if (a.source == *removed || a.target == *removed) continue;
        Arrow b = a;
        b.id = static_cast<int>(out.quiver.arrows.size());
        b.source = vmap[static_cast<size_t>(a.source)];
        b.target = vmap[static_cast<size_t>(a.target)];
        amap[static_cast<size_t>(a.id)] = b.id;
        out.quiver.arrows.push_back(std::move(b));
    }
    for (const PathPolynomial& rel : p.relations) {
        std::vector<std::pair<Path, Cyc>> kept_terms;
        for (const auto& [path, c] : rel.terms) {
            // Drop the term if the path touches the removed vertex anywhere.
            bool touches = (path.source == *removed);
            for (int id : path.arrows)
                if (p.quiver.arrow(id).target == *removed) touches = true;
            if (touches) continue;
            Path moved;
            moved.source = vmap[static_cast<size_t>(path.source)];
            moved.arrows.reserve(path.arrows.size());
            for (int id : path.arrows) moved.arrows.push_back(amap[static_cast<size_t>(id)]);
            kept_terms.emplace_back(std::move(moved), c);
        }
        if (!kept_terms.empty())
            out.relations.push_back(make_path_polynomial(out.quiver, std::move(kept_terms)));
    }
    return normalize(out, opts);
}

QuiverPresentation beilinson_presentation(const QuadraticAlgebra& A, int ell,
                                          const QuiverOptions& opts) {
    if (ell < 1) throw UsageError("beilinson_presentation: ell must be at least 1");
    const int n = A.num_generators();
    QuiverPresentation pres;
    for (int i = 0; i < ell; ++i) pres.quiver.vertices.push_back({i});
    for (int i = 0; i + 1 < ell; ++i) {
        for (int j = 0; j < n; ++j) {
            Arrow a;
            a.id = i * n + j;
            a.source = i;
            a.target = i + 1;
            a.name = A.generator_names[static_cast<size_t>(j)];
            pres.quiver.arrows.push_back(std::move(a));
        }
    }
    WordSpace ws2(n, 2);
    for (const auto& row : A.relations.basis) {
        for (int layer = 0; layer + 2 < ell; ++layer) {
            std::vector<std::pair<Path, Cyc>> terms;
            terms.reserve(row.size());
            for (const auto& [col, c] : row) {
                FreeWord w = ws2.word_of(col);
                Path path;
                path.source = layer;
                path.arrows = {layer * n + w[0], (layer + 1) * n + w[1]};
                terms.emplace_back(std::move(path), c);
            }
            pres.relations.push_back(make_path_polynomial(pres.quiver, std::move(terms)));
        }
    }
    return normalize(pres, opts);
}

QuiverPresentation skew_layered_presentation(const QuiverPresentation& p,
                                             const std::vector<std::string>& generator_names,
                                             const DiagonalAction& act, int lift_sign,
                                             const QuiverOptions& opts) {
    if (act.r == 1) return p;
    if (lift_sign != 1 && lift_sign != -1)
        throw UsageError("skew_layered_presentation: lift sign must be +1 or -1");
    const int r = static_cast<int>(act.r);
    auto weight_of_name = [&](const std::string& name) -> int {
        for (size_t j = 0; j < generator_names.size(); ++j)
            if (generator_names[j] == name) return act.weights[j];
        throw UsageError("skew_layered_presentation: arrow name '" + name +
                         "' does not match any generator");
    };

    QuiverPresentation out;
    // vertex (v, c) at index v*r + c
    for (const auto& label : p.quiver.vertices)
        for (int c = 0; c < r; ++c) {
            VertexLabel lifted = label;
            lifted.push_back(c);
            out.quiver.vertices.push_back(std::move(lifted));
        }
    auto lifted_vertex = [&](int v, int c) { return v * r + ((c % r + r) % r); };
    // arrow copies: id = a.id * r + source character
    for (const Arrow& a : p.quiver.arrows) {
        const int w = weight_of_name(a.name);
        for (int c = 0; c < r; ++c) {
            Arrow b;
            b.id = a.id * r + c;
            b.source = lifted_vertex(a.source, c);
            b.target = lifted_vertex(a.target, c + lift_sign * w);
            b.name = a.name;
            b.grade = a.grade;
            out.quiver.arrows.push_back(std::move(b));
        }
    }
    out.quiver.validate();
    for (const PathPolynomial& rel : p.relations) {
        for (int c = 0; c < r; ++c) {
            std::vector<std::pair<Path, Cyc>> terms;
            for (const auto& [path, coeff] : rel.terms) {
                Path lifted;
                lifted.source = lifted_vertex(path.source, c);
                int cur = c;
                for (int id : path.arrows) {
                    lifted.arrows.push_back(id * r + ((cur % r + r) % r));
                    cur = (cur + lift_sign * weight_of_name(p.quiver.arrow(id).name)) % r;
                }
                terms.emplace_back(std::move(lifted), coeff);
            }
            out.relations.push_back(make_path_polynomial(out.quiver, std::move(terms)));
        }
    }
    return normalize(out, opts);
}

QuiverPresentation corner_presentation(const QuiverPresentation& p,
                                       const std::set<VertexLabel>& kept,
                                       const CornerOptions& copts, const QuiverOptions& opts) {
    const Quiver& q = p.quiver;
    for (const auto& label : kept)
        if (!q.vertex_index(label))
            throw UsageError("corner_presentation: kept vertex " + label_str(label) +
                             " does not exist");

    // Establish the top nonzero grade of the ambient algebra.
    int top;
    if (copts.degree_bound) {
        top = *copts.degree_bound;
    } else {
        FiniteDimReport fd = finite_dimensionality(p, copts.findim_bound, opts);
        if (fd.status != FiniteDimReport::Status::Finite)
            throw UsageError(
                "corner_presentation: ambient algebra not certified finite dimensional; "
                "pass an explicit degree bound");
        top = static_cast<int>(fd.dims.size()) - 1;
    }

    DimensionEngine engine(p, copts.column_limit);
    std::set<int> kept_idx;
    for (const auto& label : kept) kept_idx.insert(*q.vertex_index(label));

    // Corner transversal per grade: ambient transversal paths between kept
    // vertices. Their positions double as corner coordinates.
    std::vector<std::vector<Path>> corner_basis(static_cast<size_t>(top) + 1);
    std::vector<std::map<int, int>> ambient_to_corner(static_cast<size_t>(top) + 1);
    std::vector<std::map<Path, int>> ambient_index(static_cast<size_t>(top) + 1);
    for (int m = 0; m <= top; ++m) {
        const auto& tv = engine.transversal(m);
        for (size_t i = 0; i < tv.size(); ++i) {
            const Path& t = tv[i];
            ambient_index[static_cast<size_t>(m)].emplace(t, static_cast<int>(i));
            if (!kept_idx.count(t.source) || !kept_idx.count(path_target(q, t))) continue;
            ambient_to_corner[static_cast<size_t>(m)].emplace(
                static_cast<int>(i), static_cast<int>(corner_basis[static_cast<size_t>(m)].size()));
            corner_basis[static_cast<size_t>(m)].push_back(t);
        }
    }
    auto to_corner_coords = [&](int m, const SparseVec& ambient) {
        SparseVec out;
        out.reserve(ambient.size());
        const auto& trans = ambient_to_corner[static_cast<size_t>(m)];
        for (const auto& [idx, c] : ambient) {
            auto it = trans.find(idx);
            if (it == trans.end())
                throw Error("internal: corner class escaped the kept transversal");
            out.emplace_back(it->second, c);
        }
        return sparse_normalize(std::move(out));
    };

    // Build the corner quiver: vertices are the kept ones in ambient order.
    QuiverPresentation gamma;
    std::map<int, int> vmap;  // ambient vertex index -> corner vertex index
    std::vector<int> corner_to_ambient_vertex;
    for (int v = 0; v < q.num_vertices(); ++v)
        if (kept_idx.count(v)) {
            vmap.emplace(v, gamma.quiver.num_vertices());
            corner_to_ambient_vertex.push_back(v);
            gamma.quiver.vertices.push_back(q.vertices[static_cast<size_t>(v)]);
        }

    // Generator extraction, grade by grade.
    struct GammaArrow {
        Path image;  // ambient transversal path
    };
    std::vector<GammaArrow> images;
    for (int m = 1; m <= top; ++m) {
        const auto& basis = corner_basis[static_cast<size_t>(m)];
        if (basis.empty()) continue;
        RrefBuilder products(static_cast<int>(basis.size()));
        for (int lo = 1; lo < m; ++lo) {
            const int hi = m - lo;
            for (const Path& t1 : corner_basis[static_cast<size_t>(lo)]) {
                const int t1_target = path_target(q, t1);
                const int t1_idx = ambient_index[static_cast<size_t>(lo)].at(t1);
                for (const Path& t2 : corner_basis[static_cast<size_t>(hi)]) {
                    if (t2.source != t1_target) continue;
                    SparseVec prod =
                        engine.extend(lo, SparseVec{{t1_idx, Cyc::one(engine.scalar_order())}},
                                      std::span<const int>(t2.arrows));
                    products.insert(to_corner_coords(m, prod));
                }
            }
        }
        for (size_t i = 0; i < basis.size(); ++i) {
            SparseVec unit{{static_cast<int>(i), Cyc::one(engine.scalar_order())}};
            if (!products.insert(unit)) continue;  // already a product of lower grades
            Arrow a;
            a.id = static_cast<int>(gamma.quiver.arrows.size());
            a.source = vmap.at(basis[i].source);
            a.target = vmap.at(path_target(q, basis[i]));
            a.grade = m;
            for (int id : basis[i].arrows) a.name += q.arrow(id).name;
            gamma.quiver.arrows.push_back(std::move(a));
            images.push_back({basis[i]});
        }
    }
    gamma.quiver.validate();

    // Relations: kernel of the evaluation of corner paths in eBe, new per grade.
    for (int m = 2; m <= top; ++m) {
        auto gpaths = path_basis(gamma.quiver, m, {}, {}, opts.path_limit);
        if (gpaths.empty()) continue;
        // bucket corner paths by (source, target)
        std::map<std::pair<int, int>, std::vector<Path>> buckets;
        for (const Path& gp : gpaths)
            buckets[{gp.source, path_target(gamma.quiver, gp)}].push_back(gp);
        for (auto& [key, bucket] : buckets) {
            const int ncols = static_cast<int>(bucket.size());
            // Evaluate each corner path as an ambient class.
            std::vector<SparseVec> columns(static_cast<size_t>(ncols));
            for (int pi = 0; pi < ncols; ++pi) {
                const Path& gp = bucket[static_cast<size_t>(pi)];
                // chain the ambient images of the corner arrows, starting from
                // the idempotent of the ambient source vertex
                int cur_m = 0;
                SparseVec coords{{corner_to_ambient_vertex[static_cast<size_t>(gp.source)],
                                  Cyc::one(engine.scalar_order())}};
                for (int gid : gp.arrows) {
                    const Path& img = images[static_cast<size_t>(gid)].image;
                    coords = engine.extend(cur_m, std::move(coords),
                                           std::span<const int>(img.arrows));
                    cur_m += path_grade(q, img);
                }
                columns[static_cast<size_t>(pi)] = coords;
            }
            // kernel of the map span(paths) -> (eBe)_m: matrix with
            // rows indexed by ambient coordinates, columns by paths
            // (descending path layout to match the quiver convention).
            std::map<int, SparseVec> rows_by_coord;
            for (int pi = 0; pi < ncols; ++pi)
                for (const auto& [coord, c] : columns[static_cast<size_t>(pi)])
                    rows_by_coord[coord].emplace_back(ncols - 1 - pi, c);
            std::vector<SparseVec> mat_rows;
            mat_rows.reserve(rows_by_coord.size());
            for (auto& [coord, row] : rows_by_coord)
                mat_rows.push_back(sparse_normalize(std::move(row)));
            Matrix mat = Matrix::from_rows(ncols, std::move(mat_rows));
            Subspace ker = kernel(mat);

            // Subtract consequences of lower-grade relations.
            RrefBuilder ideal(ncols);
            {
                std::map<Path, int> pos;
                for (int pi = 0; pi < ncols; ++pi) pos.emplace(bucket[static_cast<size_t>(pi)], pi);
                for (const PathPolynomial& rel : gamma.relations) {
                    if (rel.empty()) continue;
                    const Path& first = rel.terms.begin()->first;
                    const int g = path_grade(gamma.quiver, first);
                    const int rel_src = first.source;
                    const int rel_tgt = path_target(gamma.quiver, first);
                    if (g > m) continue;
                    for (int ga = 0; ga + g <= m; ++ga) {
                        const int gb = m - g - ga;
                        auto lefts = path_basis(gamma.quiver, ga, key.first, rel_src,
                                                opts.path_limit);
                        auto rights =
                            path_basis(gamma.quiver, gb, rel_tgt, key.second, opts.path_limit);
                        for (const Path& a : lefts)
                            for (const Path& b : rights) {
                                SparseVec row;
                                row.reserve(rel.terms.size());
                                for (const auto& [mid, c] : rel.terms) {
                                    Path full;
                                    full.source = a.source;
                                    full.arrows = a.arrows;
                                    full.arrows.insert(full.arrows.end(), mid.arrows.begin(),
                                                       mid.arrows.end());
                                    full.arrows.insert(full.arrows.end(), b.arrows.begin(),
                                                       b.arrows.end());
                                    row.emplace_back(ncols - 1 - pos.at(full), c);
                                }
                                ideal.insert(sparse_normalize(std::move(row)));
                            }
                    }
                }
            }
            std::vector<SparseVec> fresh;
            for (const auto& kr : ker.basis) {
                SparseVec residue = ideal.reduce(kr);
                if (!residue.empty()) fresh.push_back(std::move(residue));
            }
            RrefBuilder fresh_rref(ncols);
            fresh_rref.insert_batch(std::move(fresh));
            for (const auto& row : fresh_rref.sorted_rows()) {
                std::vector<std::pair<Path, Cyc>> terms;
                terms.reserve(row.size());
                for (const auto& [col, c] : row)
                    terms.emplace_back(bucket[static_cast<size_t>(ncols - 1 - col)], c);
                gamma.relations.push_back(make_path_polynomial(gamma.quiver, std::move(terms)));
            }
        }
    }
    return normalize(gamma, opts);
}

PipelineReport stable_cm_pipeline(const QuadraticAlgebra& A, const DiagonalAction& act,
                                  const PipelineOptions& popts) {
    PipelineReport rep;
    GradedOptions gopts;
    gopts.max_degree = popts.max_degree;
    gopts.block_action = act;
    GradedOptions dual_gopts = gopts;
    dual_gopts.block_action = dual_action(act);
    QuiverOptions qopts;
    qopts.max_degree = popts.max_degree;

    if (!A.claimed_global_dim || *A.claimed_global_dim < 2)
        throw UsageError("pipeline: algebra must declare a global dimension d >= 2");
    const int d = *A.claimed_global_dim;

    auto gate = [&](const std::string& name, bool passed, std::string detail) {
        rep.gates.push_back({name, passed, std::move(detail)});
    };

    // Gate 1: the action must stabilize the relation space.
    ActionCheckResult ac = action_check(A, act);
    if (ac.ok) {
        std::string blocks;
        for (const auto& [w, dim] : ac.weight_blocks) {
            if (!blocks.empty()) blocks += ", ";
            blocks += "weight " + std::to_string(w) + ": dim " + std::to_string(dim);
        }
        gate("action_check", true, blocks);
    } else {
        gate("action_check", false, "a weight component of a relation escapes the span");
    }

    // Gate 2: numerical Koszul proxies.
    try {
        rep.koszul = koszul_numeric_check(A, popts.hilbert_degree, gopts);
        gate("koszul_numeric_check", rep.koszul.ok,
             rep.koszul.ok ? "" : "syzygy/dual dimension or Euler identity failure");
    } catch (const Error& e) {
        gate("koszul_numeric_check", false, e.what());
    }

    // Gate 3: homological determinant of every group element.
    bool hsl = true;
    try {
        for (int p = 1; p <= static_cast<int>(act.r); ++p) {
            Cyc value = hdet_diagonal(A, act.power(p), d, popts.hdet_inverse, gopts);
            hsl = hsl && value.is_one();
            rep.hdet_values.emplace_back(p, std::move(value));
        }
        rep.hsl = hsl;
        gate("hsl", hsl, hsl ? "hdet(g^p) = 1 for all p" : "some hdet(g^p) != 1");
    } catch (const Error& e) {
        rep.hsl = false;
        gate("hsl", false, e.what());
    }

    if (!ac.ok) {
        // Without invariance the skew construction is undefined; force cannot help.
        rep.gamma_withheld_reason = "action_check failed";
        rep.all_gates_passed = false;
        return rep;
    }

    // Stages that only need a stable action.
    rep.skew = skew_group_presentation(A, act, qopts);
    rep.skew_mod_e = remove_trivial_vertex(rep.skew, qopts);

    // Gate 4: isolated-singularity proxy, S*G/(e) finite dimensional.
    try {
        rep.findim = finite_dimensionality(rep.skew_mod_e, popts.findim_bound, qopts);
        const bool findim_ok = rep.findim.status == FiniteDimReport::Status::Finite;
        gate("finite_dimensionality", findim_ok,
             findim_ok ? "total dim " + std::to_string(rep.findim.total)
                       : "unknown at bound " + std::to_string(rep.findim.bound_used));
    } catch (const Error& e) {
        // dimension growth can blow the scan's resource limits; that is a
        // gate failure, not a crash
        gate("finite_dimensionality", false, e.what());
    }

    rep.dual = quadratic_dual(A);
    rep.dual.claimed_global_dim = d;
    rep.dual_act = dual_action(act);

    rep.frobenius = frobenius_pairing_check(rep.dual, d, dual_gopts);

    rep.beilinson = beilinson_presentation(rep.dual, d, qopts);
    rep.skew_beilinson = skew_layered_presentation(rep.beilinson, rep.dual.generator_names,
                                                   rep.dual_act, popts.lift_sign, qopts);

    rep.all_gates_passed = true;
    for (const auto& g : rep.gates) rep.all_gates_passed = rep.all_gates_passed && g.passed;

    if (rep.all_gates_passed || popts.force) {
        std::set<VertexLabel> kept;
        for (const auto& label : rep.skew_beilinson.quiver.vertices)
            if (label.size() >= 2 && label.back() != 0) kept.insert(label);
        CornerOptions copts;
        copts.findim_bound = popts.findim_bound;
        try {
            rep.gamma = corner_presentation(rep.skew_beilinson, kept, copts, qopts);
            if (!rep.all_gates_passed)
                rep.gamma_withheld_reason = "gates failed; corner emitted due to force flag";
        } catch (const Error& e) {
            rep.gamma_withheld_reason = std::string("corner computation failed: ") + e.what();
        }
    } else {
        for (const auto& g : rep.gates)
            if (!g.passed) {
                if (!rep.gamma_withheld_reason.empty()) rep.gamma_withheld_reason += "; ";
                rep.gamma_withheld_reason += g.name + " failed";
            }
    }

    rep.hilbert_a = hilbert_function(A, popts.hilbert_degree, gopts);
    rep.hilbert_dual =
        hilbert_function(rep.dual, std::min(popts.hilbert_degree, d + 1), dual_gopts);
    rep.hilbert_invariants = invariant_hilbert_function(A, act, popts.hilbert_degree, gopts);
    return rep;
}

}  // namespace qcorner
