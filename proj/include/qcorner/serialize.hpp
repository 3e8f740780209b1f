#pragma once
#include <json.hpp>
#include <string>

#include "qcorner/constructions.hpp"

namespace qcorner {

// Insertion-ordered JSON so that identical inputs serialize byte-identically.
using Json = nlohmann::ordered_json;

// Scalar: { "r": order, "c": ["p/q", ...] }
Json scalar_to_json(const Cyc& c);
Cyc scalar_from_json(const Json& j);

Json action_to_json(const DiagonalAction& a);
DiagonalAction action_from_json(const Json& j);

// Algebra: { "generators": [...], "relations": [[{"coeff":.., "word":[..]},..],..],
//            "action": {...}?, "dimension": int? }
Json algebra_to_json(const QuadraticAlgebra& A, const std::optional<DiagonalAction>& act);
struct ParsedAlgebra {
    QuadraticAlgebra algebra;
    std::optional<DiagonalAction> action;
};
ParsedAlgebra algebra_from_json(const Json& j);
ParsedAlgebra parse_algebra_file(const std::string& path);

// Presentation: { "vertices": [label,..], "arrows": [{id,name,source,target,grade},..],
//                 "relations": [[{"coeff":.., "path":[arrow ids]},..],..] }
// Vertex labels are an integer or an array of integers; arrow endpoints are labels.
Json presentation_to_json(const QuiverPresentation& p);
QuiverPresentation presentation_from_json(const Json& j);
QuiverPresentation parse_presentation_file(const std::string& path);

Json graded_component_to_json(const GradedComponent& c);
Json finite_dim_report_to_json(const FiniteDimReport& r);
Json frobenius_report_to_json(const FrobeniusReport& r);
Json koszul_report_to_json(const KoszulCheckReport& r);
Json pipeline_report_to_json(const PipelineReport& r);

std::string presentation_text(const QuiverPresentation& p);

}  // namespace qcorner
