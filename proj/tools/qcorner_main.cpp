// Command-line front end: parse algebra/presentation files, run individual
// constructions or the whole pipeline, emit JSON, DOT, or text.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "qcorner/errors.hpp"
#include "qcorner/exec.hpp"
#include "qcorner/serialize.hpp"

using namespace qcorner;

namespace {

struct GlobalOpts {
    std::string out;
    std::string format = "json";
    int max_degree = 8;
    int findim_bound = 32;
    bool hdet_inverse = false;
    int lift_sign = +1;
    bool force = false;
    int threads = 0;
};

void write_output(const GlobalOpts& g, const std::string& payload) {
    if (g.out.empty()) {
        std::cout << payload;
        if (payload.empty() || payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw Error("cannot write to '" + g.out + "'");
    f << payload;
    if (payload.empty() || payload.back() != '\n') f << '\n';
}

void emit_presentation(const GlobalOpts& g, const QuiverPresentation& p) {
    if (g.format == "dot")
        write_output(g, dot_export(p));
    else if (g.format == "text")
        write_output(g, presentation_text(p));
    else
        write_output(g, presentation_to_json(p).dump(2));
}

DiagonalAction require_action(const ParsedAlgebra& parsed) {
    if (!parsed.action) throw ParseError("this command needs an 'action' in the algebra file");
    return *parsed.action;
}

int require_dimension(const ParsedAlgebra& parsed, int flag_value) {
    if (flag_value > 0) return flag_value;
    if (parsed.algebra.claimed_global_dim) return *parsed.algebra.claimed_global_dim;
    throw ParseError("this command needs 'dimension' in the file or --dim on the command line");
}

int parse_int(const std::string& s, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(std::string("malformed ") + what + ": '" + s + "'");
    }
}

std::set<VertexLabel> parse_keep(const std::string& spec) {
    std::set<VertexLabel> kept;
    std::string token;
    std::stringstream ss(spec);
    while (std::getline(ss, token, ';')) {
        if (token.empty()) continue;
        VertexLabel label;
        std::stringstream ts(token);
        std::string num;
        while (std::getline(ts, num, ',')) label.push_back(parse_int(num, "vertex label"));
        kept.insert(std::move(label));
    }
    return kept;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quiver presentations of corner algebras for cyclic quotient singularities"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOpts g;
    if (const char* env = std::getenv("QCORNER_MAX_DEGREE")) g.max_degree = std::atoi(env);
    app.add_option("--out", g.out, "write output to a file instead of stdout");
    app.add_option("--format", g.format, "output format: json, dot, or text")
        ->check(CLI::IsMember({"json", "dot", "text"}));
    app.add_option("--max-degree", g.max_degree, "degree cap for graded computations");
    app.add_option("--findim-bound", g.findim_bound, "scan bound for finite dimensionality");
    app.add_flag("--hdet-inverse", g.hdet_inverse, "flip the homological determinant convention");
    app.add_option("--lift-sign", g.lift_sign, "character lift direction, +1 or -1")
        ->check(CLI::IsMember({1, -1}));
    app.add_flag("--force", g.force, "emit the corner algebra even when a gate fails");
    app.add_option("--threads", g.threads, "thread budget for the parallel kernels");

    std::string input;
    int flag_r = 0, flag_ell = 0, flag_dim = 0, flag_degree = 4, flag_bound = 0;
    std::string flag_weights, flag_keep;
    bool flag_keep_nontrivial = false;

    auto* mckay = app.add_subcommand("mckay", "McKay quiver of a diagonal cyclic action");
    mckay->add_option("input", input, "algebra JSON with an action");
    mckay->add_option("--r", flag_r, "group order (alternative to an input file)");
    mckay->add_option("--weights", flag_weights, "comma-separated weights a_1,..,a_n");

    auto* skew = app.add_subcommand("skew", "skew group algebra presentation");
    skew->add_option("input", input)->required();

    auto* quotient = app.add_subcommand("quotient-e", "remove the trivial-character vertex");
    quotient->add_option("input", input, "presentation JSON")->required();

    auto* dual = app.add_subcommand("dual", "quadratic dual algebra");
    dual->add_option("input", input)->required();

    auto* beilinson = app.add_subcommand("beilinson", "layered (Beilinson) presentation");
    beilinson->add_option("input", input)->required();
    beilinson->add_option("--ell", flag_ell, "number of layers (defaults to 'dimension')");

    auto* skew_beilinson =
        app.add_subcommand("skew-beilinson", "skew group algebra of the layered presentation");
    skew_beilinson->add_option("input", input, "algebra JSON with its own action (e.g. dual output)")
        ->required();
    skew_beilinson->add_option("--ell", flag_ell, "number of layers (defaults to 'dimension')");

    auto* corner = app.add_subcommand("corner", "corner algebra of a finite presentation");
    corner->add_option("input", input, "presentation JSON")->required();
    corner->add_option("--keep", flag_keep, "kept vertices, e.g. \"0,1;1,1;2,1;3,1\"");
    corner->add_flag("--keep-nontrivial", flag_keep_nontrivial,
                     "keep every vertex whose character component is nonzero");
    corner->add_option("--bound", flag_bound, "explicit top grade for non-layered input");

    auto* hdet = app.add_subcommand("hdet", "homological determinant of the action generator");
    hdet->add_option("input", input)->required();
    hdet->add_option("--dim", flag_dim, "global dimension d (defaults to 'dimension')");

    auto* findim = app.add_subcommand("findim", "finite dimensionality of a presentation");
    findim->add_option("input", input, "presentation JSON")->required();

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert function of a quadratic algebra");
    hilbert->add_option("input", input)->required();
    hilbert->add_option("--degree", flag_degree, "top degree (default 4)");

    auto* invariants = app.add_subcommand("invariants", "Hilbert function of the invariant ring");
    invariants->add_option("input", input)->required();
    invariants->add_option("--degree", flag_degree, "top degree (default 4)");

    auto* koszul = app.add_subcommand("koszul-check", "numerical Koszulity proxies");
    koszul->add_option("input", input)->required();
    koszul->add_option("--degree", flag_degree, "top degree (default 4)");

    auto* pipeline = app.add_subcommand("pipeline", "run the whole construction chain");
    pipeline->add_option("input", input)->required();
    pipeline->add_option("--degree", flag_degree, "Hilbert/Koszul check degree (default 4)");

    CLI11_PARSE(app, argc, argv);

    if (g.threads > 0) exec::set_max_threads(g.threads);
    GradedOptions gopts;
    gopts.max_degree = g.max_degree;
    QuiverOptions qopts;
    qopts.max_degree = g.max_degree;

    try {
        if (mckay->parsed()) {
            DiagonalAction act(1, {});
            std::vector<std::string> names;
            if (!input.empty()) {
                ParsedAlgebra parsed = parse_algebra_file(input);
                act = require_action(parsed);
                names = parsed.algebra.generator_names;
            } else {
                if (flag_r <= 0 || flag_weights.empty())
                    throw ParseError("mckay needs an input file or both --r and --weights");
                std::vector<int> w;
                std::stringstream ss(flag_weights);
                std::string num;
                while (std::getline(ss, num, ',')) w.push_back(parse_int(num, "weight"));
                try {
                    act = DiagonalAction(static_cast<unsigned>(flag_r), w);
                } catch (const UsageError& e) {
                    throw ParseError(e.what());
                }
                for (size_t j = 1; j <= w.size(); ++j) names.push_back("x" + std::to_string(j));
            }
            QuiverPresentation p;
            p.quiver = mckay_quiver(act, names);
            emit_presentation(g, p);
        } else if (skew->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            emit_presentation(
                g, skew_group_presentation(parsed.algebra, require_action(parsed), qopts));
        } else if (quotient->parsed()) {
            emit_presentation(g, remove_trivial_vertex(parse_presentation_file(input), qopts));
        } else if (dual->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            QuadraticAlgebra d = quadratic_dual(parsed.algebra);
            d.claimed_global_dim = parsed.algebra.claimed_global_dim;
            std::optional<DiagonalAction> dact;
            if (parsed.action) dact = dual_action(*parsed.action);
            write_output(g, algebra_to_json(d, dact).dump(2));
        } else if (beilinson->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            int ell = flag_ell > 0 ? flag_ell : require_dimension(parsed, 0);
            emit_presentation(g, beilinson_presentation(parsed.algebra, ell, qopts));
        } else if (skew_beilinson->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            DiagonalAction act = require_action(parsed);
            int ell = flag_ell > 0 ? flag_ell : require_dimension(parsed, 0);
            QuiverPresentation layered = beilinson_presentation(parsed.algebra, ell, qopts);
            emit_presentation(g,
                              skew_layered_presentation(layered, parsed.algebra.generator_names,
                                                        act, g.lift_sign, qopts));
        } else if (corner->parsed()) {
            QuiverPresentation p = parse_presentation_file(input);
            std::set<VertexLabel> kept;
            if (flag_keep_nontrivial) {
                for (const auto& v : p.quiver.vertices)
                    if (v.size() >= 2 && v.back() != 0) kept.insert(v);
            } else if (!flag_keep.empty()) {
                kept = parse_keep(flag_keep);
            } else {
                throw ParseError("corner needs --keep or --keep-nontrivial");
            }
            CornerOptions copts;
            copts.findim_bound = g.findim_bound;
            if (flag_bound > 0) copts.degree_bound = flag_bound;
            emit_presentation(g, corner_presentation(p, kept, copts, qopts));
        } else if (hdet->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            DiagonalAction act = require_action(parsed);
            int d = require_dimension(parsed, flag_dim);
            Json j;
            Json values = Json::array();
            bool hsl = true;
            for (int p = 1; p <= static_cast<int>(act.r); ++p) {
                Cyc v = hdet_diagonal(parsed.algebra, act.power(p), d, g.hdet_inverse, gopts);
                hsl = hsl && v.is_one();
                Json h;
                h["power"] = p;
                h["value"] = scalar_to_json(v);
                h["pretty"] = v.str();
                values.push_back(std::move(h));
            }
            j["hdet"] = values;
            j["hsl"] = hsl;
            write_output(g, j.dump(2));
        } else if (findim->parsed()) {
            FiniteDimReport rep =
                finite_dimensionality(parse_presentation_file(input), g.findim_bound, qopts);
            if (g.format == "text") {
                std::string s = rep.status == FiniteDimReport::Status::Finite
                                    ? "Finite, total dim " + std::to_string(rep.total)
                                    : "UnknownAtBound " + std::to_string(rep.bound_used);
                write_output(g, s);
            } else {
                write_output(g, finite_dim_report_to_json(rep).dump(2));
            }
        } else if (hilbert->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            GradedOptions opts = gopts;
            opts.block_action = parsed.action;
            Json j;
            j["dims"] = hilbert_function(parsed.algebra, flag_degree, opts);
            write_output(g, j.dump(2));
        } else if (invariants->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            Json j;
            j["dims"] =
                invariant_hilbert_function(parsed.algebra, require_action(parsed), flag_degree,
                                           gopts);
            write_output(g, j.dump(2));
        } else if (koszul->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            GradedOptions opts = gopts;
            opts.block_action = parsed.action;
            write_output(
                g, koszul_report_to_json(koszul_numeric_check(parsed.algebra, flag_degree, opts))
                       .dump(2));
        } else if (pipeline->parsed()) {
            ParsedAlgebra parsed = parse_algebra_file(input);
            PipelineOptions popts;
            popts.hilbert_degree = flag_degree;
            popts.max_degree = g.max_degree;
            popts.findim_bound = g.findim_bound;
            popts.hdet_inverse = g.hdet_inverse;
            popts.lift_sign = g.lift_sign;
            popts.force = g.force;
            PipelineReport rep =
                stable_cm_pipeline(parsed.algebra, require_action(parsed), popts);
            write_output(g, pipeline_report_to_json(rep).dump(2));
            if (!rep.all_gates_passed) return 1;
        }
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
