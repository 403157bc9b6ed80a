#pragma once

#include <json.hpp>

#include "diffalg/algebra.hpp"
#include "diffalg/graded.hpp"
#include "diffalg/riemann.hpp"

namespace diffalg {

using Json = nlohmann::ordered_json;

/// Parsed algebra description document. Exactly one of the payloads is
/// active, matching the "kind" field.
struct AlgebraDoc {
    FieldSpec field;
    std::string kind;  // structure_constants | polynomial | quotient | graded_structure_constants

    // structure_constants / graded_structure_constants
    AlgebraPtr fin;
    GradedAlgebraPtr graded;

    // polynomial / quotient
    std::optional<PolyAlgebra> poly;
    std::vector<MPoly> relations;
};

/// Schema-validated parse; unknown keys are rejected with their path.
AlgebraDoc parse_algebra_doc(const Json& j);

/// Metric/tensor input {"n", "coords", "tau"}; expression grammar: integer
/// literals, coordinate names, + - * / ^ with integer exponents, parentheses.
CovariantTensor2 parse_tensor_doc(const Json& j);

Scalar parse_scalar(const Json& j, FieldSpec f);
Json scalar_json(const Scalar& s);
Json vec_json(const Vec& v);
Json mat_json(const Mat& m);

/// The convention ledger embedded in every report.
Json conventions_json(int truncation);

/// Report skeleton with deterministic field order.
Json make_report(const std::string& operation, const Json& inputs, const Json& configuration,
                 const Json& results, const std::string& status, const std::string& summary);

struct CliOptions {
    int order = 1;
    int degree = 1;
    std::vector<int> signature;
    std::optional<Vec> point_values;  // parsed against the doc's field
    std::string point_raw;
    std::string format = "json";  // json | text
    long budget = 1000000;
    unsigned long long seed = 20240101;
    std::string op_expr;     // operator expression for symbol/localize/flow
    std::string f_expr, g_expr;
    long t_value = 1;
    bool right = false;
    std::string only;        // gallery filter
};

/// Dispatch a subcommand on a loaded document. Throws input_error /
/// budget_error / invariant_error; the caller maps these to exit codes
/// 1 / 2 / 3.
Json run_subcommand(const std::string& name, const std::optional<Json>& doc,
                    const CliOptions& opt);

/// Render a report as human-readable text (a view of the JSON, never an
/// alternative data source).
std::string render_text(const Json& report);

}  // namespace diffalg
