#include "qcorner/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qcorner/errors.hpp"

namespace qcorner {

Json scalar_to_json(const Cyc& c) {
    Json j;
    j["r"] = c.order();
    Json coeffs = Json::array();
    for (const auto& q : c.coeffs()) coeffs.push_back(to_string(q));
    j["c"] = coeffs;
    return j;
}

Cyc scalar_from_json(const Json& j) {
    if (j.is_number_integer()) return Cyc(Rational(j.get<long>()), 1);
    if (j.is_string()) return Cyc(rational_from_string(j.get<std::string>()), 1);
    if (!j.is_object() || !j.contains("r") || !j.contains("c"))
        throw ParseError("scalar must be an integer, a rational string, or {r, c}");
    const unsigned r = j.at("r").get<unsigned>();
    if (r == 0) throw ParseError("scalar order must be positive");
    const auto& arr = j.at("c");
    if (!arr.is_array()) throw ParseError("scalar field 'c' must be an array");
    if (arr.size() != cyclotomic_degree(r))
        throw ParseError("scalar coefficient count does not match deg Phi_r");
    Cyc out = Cyc::zero(r);
    for (size_t i = 0; i < arr.size(); ++i) {
        Rational q = arr[i].is_string() ? rational_from_string(arr[i].get<std::string>())
                                        : Rational(arr[i].get<long>());
        out += Cyc(q, r) * root_of_unity(r, static_cast<long>(i));
    }
    return out;
}

Json action_to_json(const DiagonalAction& a) {
    Json j;
    j["r"] = a.r;
    j["weights"] = a.weights;
    return j;
}

DiagonalAction action_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("r") || !j.contains("weights"))
        throw ParseError("action must be an object {r, weights}");
    unsigned r = j.at("r").get<unsigned>();
    std::vector<int> weights = j.at("weights").get<std::vector<int>>();
    try {
        return DiagonalAction(r, std::move(weights));
    } catch (const UsageError& e) {
        throw ParseError(e.what());
    }
}

Json algebra_to_json(const QuadraticAlgebra& A, const std::optional<DiagonalAction>& act) {
    Json j;
    j["generators"] = A.generator_names;
    Json rels = Json::array();
    for (const auto& row : relation_rows(A)) {
        Json rel = Json::array();
        for (const auto& [word, c] : row) {
            Json term;
            term["coeff"] = scalar_to_json(c);
            term["word"] = word;
            rel.push_back(std::move(term));
        }
        rels.push_back(std::move(rel));
    }
    j["relations"] = rels;
    if (act) j["action"] = action_to_json(*act);
    if (A.claimed_global_dim) j["dimension"] = *A.claimed_global_dim;
    return j;
}

ParsedAlgebra algebra_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("algebra file must contain a JSON object");
    if (!j.contains("generators")) throw ParseError("algebra is missing 'generators'");
    std::vector<std::string> names = j.at("generators").get<std::vector<std::string>>();
    if (names.empty()) throw ParseError("algebra needs at least one generator");

    std::vector<NcPolynomial> rels;
    unsigned order = 1;
    if (j.contains("relations")) {
        const auto& arr = j.at("relations");
        if (!arr.is_array()) throw ParseError("'relations' must be an array");
        for (size_t k = 0; k < arr.size(); ++k) {
            const auto& rj = arr[k];
            if (!rj.is_array())
                throw ParseError("relation " + std::to_string(k) + " must be an array of terms");
            NcPolynomial poly;
            for (const auto& term : rj) {
                if (!term.is_object() || !term.contains("coeff") || !term.contains("word"))
                    throw ParseError("relation " + std::to_string(k) +
                                     ": each term needs 'coeff' and 'word'");
                Cyc c = scalar_from_json(term.at("coeff"));
                FreeWord w = term.at("word").get<FreeWord>();
                order = lcm_order(order, c.order());
                auto [it, inserted] = poly.terms.emplace(std::move(w), c);
                if (!inserted) throw ParseError("relation " + std::to_string(k) +
                                                " repeats a word");
            }
            rels.push_back(std::move(poly));
        }
    }

    std::optional<DiagonalAction> act;
    if (j.contains("action") && !j.at("action").is_null()) {
        act = action_from_json(j.at("action"));
        if (act->weights.size() != names.size())
            throw ParseError("action weight count (" + std::to_string(act->weights.size()) +
                             ") does not match generator count (" +
                             std::to_string(names.size()) + ")");
    }
    std::optional<int> dim;
    if (j.contains("dimension") && !j.at("dimension").is_null())
        dim = j.at("dimension").get<int>();

    ParsedAlgebra out{QuadraticAlgebra::from_relations(std::move(names), order, rels, dim), act};
    if (out.action) {
        auto check = action_check(out.algebra, *out.action);
        if (!check.ok)
            throw ParseError("the declared action does not stabilize the relation span");
    }
    return out;
}

ParsedAlgebra parse_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return algebra_from_json(j);
}

namespace {

Json label_to_json(const VertexLabel& v) {
    if (v.size() == 1) return Json(v[0]);
    return Json(v);
}

VertexLabel label_from_json(const Json& j) {
    if (j.is_number_integer()) return {j.get<int>()};
    if (j.is_array()) {
        VertexLabel v = j.get<VertexLabel>();
        if (v.empty()) throw ParseError("vertex label array may not be empty");
        return v;
    }
    throw ParseError("vertex labels must be integers or arrays of integers");
}

}  // namespace

Json presentation_to_json(const QuiverPresentation& p) {
    Json j;
    Json verts = Json::array();
    for (const auto& v : p.quiver.vertices) verts.push_back(label_to_json(v));
    j["vertices"] = verts;
    Json arrows = Json::array();
    for (const Arrow& a : p.quiver.arrows) {
        Json aj;
        aj["id"] = a.id;
        aj["name"] = a.name;
        aj["source"] = label_to_json(p.quiver.vertices[static_cast<size_t>(a.source)]);
        aj["target"] = label_to_json(p.quiver.vertices[static_cast<size_t>(a.target)]);
        aj["grade"] = a.grade;
        arrows.push_back(std::move(aj));
    }
    j["arrows"] = arrows;
    Json rels = Json::array();
    for (const PathPolynomial& rel : p.relations) {
        Json rj = Json::array();
        for (const auto& [path, c] : rel.terms) {
            Json term;
            term["coeff"] = scalar_to_json(c);
            term["path"] = path.arrows;
            rj.push_back(std::move(term));
        }
        rels.push_back(std::move(rj));
    }
    j["relations"] = rels;
    return j;
}

QuiverPresentation presentation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("arrows"))
        throw ParseError("presentation needs 'vertices' and 'arrows'");
    QuiverPresentation p;
    for (const auto& vj : j.at("vertices")) p.quiver.vertices.push_back(label_from_json(vj));
    for (const auto& aj : j.at("arrows")) {
        Arrow a;
        a.id = aj.at("id").get<int>();
        a.name = aj.value("name", std::string("a") + std::to_string(a.id));
        VertexLabel src = label_from_json(aj.at("source"));
        VertexLabel tgt = label_from_json(aj.at("target"));
        auto si = p.quiver.vertex_index(src);
        auto ti = p.quiver.vertex_index(tgt);
        if (!si || !ti)
            throw ParseError("arrow " + std::to_string(a.id) + " references a missing vertex");
        a.source = *si;
        a.target = *ti;
        a.grade = aj.value("grade", 1);
        p.quiver.arrows.push_back(std::move(a));
    }
    std::sort(p.quiver.arrows.begin(), p.quiver.arrows.end(),
              [](const Arrow& a, const Arrow& b) { return a.id < b.id; });
    try {
        p.quiver.validate();
    } catch (const UsageError& e) {
        throw ParseError(e.what());
    }
    if (j.contains("relations")) {
        // normalize every coefficient into one cyclotomic field
        std::vector<std::vector<std::pair<Path, Cyc>>> parsed;
        unsigned order = 1;
        for (const auto& rj : j.at("relations")) {
            std::vector<std::pair<Path, Cyc>> terms;
            for (const auto& term : rj) {
                if (!term.is_object() || !term.contains("coeff") || !term.contains("path"))
                    throw ParseError("each relation term needs 'coeff' and 'path'");
                Cyc c = scalar_from_json(term.at("coeff"));
                order = lcm_order(order, c.order());
                std::vector<int> ids = term.at("path").get<std::vector<int>>();
                if (ids.empty()) throw ParseError("relation paths may not be empty");
                Path path;
                path.source = p.quiver.arrow(ids.front()).source;
                path.arrows = std::move(ids);
                terms.emplace_back(std::move(path), c);
            }
            parsed.push_back(std::move(terms));
        }
        for (auto& terms : parsed) {
            for (auto& [path, c] : terms) c = c.embedded(order);
            try {
                p.relations.push_back(make_path_polynomial(p.quiver, std::move(terms)));
            } catch (const UsageError& e) {
                throw ParseError(e.what());
            }
        }
    }
    return p;
}

QuiverPresentation parse_presentation_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON in '") + path + "': " + e.what());
    }
    return presentation_from_json(j);
}

Json graded_component_to_json(const GradedComponent& c) {
    Json j;
    j["degree"] = c.degree;
    j["dimension"] = c.dim;
    Json words = Json::array();
    for (const auto& w : c.transversal) words.push_back(w);
    j["transversal"] = words;
    return j;
}

Json finite_dim_report_to_json(const FiniteDimReport& r) {
    Json j;
    j["status"] = r.status == FiniteDimReport::Status::Finite ? "Finite" : "UnknownAtBound";
    j["dims"] = r.dims;
    if (r.status == FiniteDimReport::Status::Finite) j["total"] = r.total;
    j["bound"] = r.bound_used;
    return j;
}

Json frobenius_report_to_json(const FrobeniusReport& r) {
    Json j;
    j["ok"] = r.ok;
    if (!r.failure.empty()) j["failure"] = r.failure;
    Json degrees = Json::array();
    for (const auto& d : r.degrees) {
        Json dj;
        dj["degree"] = d.degree;
        dj["dims"] = {d.dim_low, d.dim_high};
        dj["rank"] = d.pairing_rank;
        dj["pass"] = d.pass;
        degrees.push_back(std::move(dj));
    }
    j["degrees"] = degrees;
    return j;
}

Json koszul_report_to_json(const KoszulCheckReport& r) {
    Json j;
    j["ok"] = r.ok;
    j["syzygy_dims"] = r.syzygy_dims;
    j["dual_dims"] = r.dual_dims;
    j["dims_match"] = r.dims_match;
    j["euler_ok"] = r.euler_ok;
    return j;
}

Json pipeline_report_to_json(const PipelineReport& r) {
    Json j;
    Json gates;
    for (const auto& g : r.gates) {
        Json gj;
        gj["passed"] = g.passed;
        if (!g.detail.empty()) gj["detail"] = g.detail;
        gates[g.name] = std::move(gj);
    }
    j["gates"] = gates;
    j["all_gates_passed"] = r.all_gates_passed;
    Json hdet = Json::array();
    for (const auto& [p, v] : r.hdet_values) {
        Json h;
        h["power"] = p;
        h["value"] = scalar_to_json(v);
        hdet.push_back(std::move(h));
    }
    j["hdet"] = hdet;
    j["hsl"] = r.hsl;
    j["findim"] = finite_dim_report_to_json(r.findim);
    j["frobenius"] = frobenius_report_to_json(r.frobenius);
    j["koszul_check"] = koszul_report_to_json(r.koszul);
    Json stages;
    stages["skew"] = presentation_to_json(r.skew);
    stages["skew_mod_e"] = presentation_to_json(r.skew_mod_e);
    stages["dual"] = algebra_to_json(r.dual, r.dual_act.weights.empty()
                                                 ? std::optional<DiagonalAction>{}
                                                 : std::optional<DiagonalAction>{r.dual_act});
    stages["beilinson"] = presentation_to_json(r.beilinson);
    stages["skew_beilinson"] = presentation_to_json(r.skew_beilinson);
    if (r.gamma)
        stages["gamma"] = presentation_to_json(*r.gamma);
    else
        stages["gamma"] = nullptr;
    if (!r.gamma_withheld_reason.empty()) stages["gamma_withheld"] = r.gamma_withheld_reason;
    j["stages"] = stages;
    Json hilbert;
    hilbert["algebra"] = r.hilbert_a;
    hilbert["dual"] = r.hilbert_dual;
    hilbert["invariants"] = r.hilbert_invariants;
    j["hilbert"] = hilbert;
    return j;
}

std::string presentation_text(const QuiverPresentation& p) {
    std::ostringstream os;
    os << "vertices (" << p.quiver.num_vertices() << "):";
    for (const auto& v : p.quiver.vertices) os << " " << label_str(v);
    os << "\narrows (" << p.quiver.arrows.size() << "):\n";
    for (const Arrow& a : p.quiver.arrows) {
        os << "  [" << a.id << "] " << a.name << " : "
           << label_str(p.quiver.vertices[static_cast<size_t>(a.source)]) << " -> "
           << label_str(p.quiver.vertices[static_cast<size_t>(a.target)]);
        if (a.grade != 1) os << "  (grade " << a.grade << ")";
        os << "\n";
    }
    os << "relations (" << p.relations.size() << "):\n";
    for (const PathPolynomial& rel : p.relations) {
        if (rel.empty()) continue;
        const Path& first = rel.terms.begin()->first;
        os << "  at " << label_str(p.quiver.vertices[static_cast<size_t>(first.source)]) << " -> "
           << label_str(
                  p.quiver.vertices[static_cast<size_t>(path_target(p.quiver, first))])
           << ": " << relation_str(p.quiver, rel) << "\n";
    }
    return os.str();
}

}  // namespace qcorner
