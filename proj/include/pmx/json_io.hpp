#pragma once

#include <nlohmann/json_fwd.hpp>

#include "pmx/loewner.hpp"
#include "pmx/pmatrix.hpp"
#include "pmx/series.hpp"
#include "pmx/witt.hpp"

namespace pmx {

/// Raised when input does not match the interchange schemas (malformed
/// input, distinct from domain errors).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

using Json = nlohmann::json;

// Series:  {"center":"zero"|"infinity","leading_index":int,"order":int,
//           "coeffs":[[re,im],...]}  coefficients run from the leading index
//           toward the truncation order; the zero series has empty coeffs.
Json to_json(const FormalSeries& f);
FormalSeries series_from_json(const Json& j);

// Window:  {"center":...,"lo":int,"hi":int}
Json to_json(const Window& w);
Window window_from_json(const Json& j);

// Matrix:  {"window":...,"rows":[[[re,im],...],...]} row-major over the window.
Json to_json(const PowerMatrixBlock& m);
PowerMatrixBlock matrix_from_json(const Json& j);

// Infinitesimal block: window plus the generator (entries are derived).
Json to_json(const InfMatrixBlock& m);
InfMatrixBlock inf_matrix_from_json(const Json& j);

// Problem: {"kind":"pde"|"ode","generator":...,"initial":...,"a":real,
//           "window":...}
Json to_json(const LoewnerProblem& p);
LoewnerProblem problem_from_json(const Json& j);

Json to_json(const ApproxPlan& p);

Json parse_json_text(const std::string& text);

}  // namespace pmx
