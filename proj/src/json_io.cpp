#include "pmx/json_io.hpp"

#include <nlohmann/json.hpp>

namespace pmx {

namespace {

Json complex_to_json(const Complex& c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError("complex values are [re, im] pairs");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Center center_from_json(const Json& j) {
    if (j == "zero") return Center::Zero;
    if (j == "infinity") return Center::Infinity;
    throw ParseError("center must be \"zero\" or \"infinity\"");
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

long int_field(const Json& j, const char* key) {
    const Json& v = field(j, key);
    if (!v.is_number_integer()) throw ParseError(std::string(key) + " must be an integer");
    return v.get<long>();
}

}  // namespace

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("input is not valid JSON");
    return j;
}

Json to_json(const FormalSeries& f) {
    Json coeffs = Json::array();
    for (const Complex& c : f.coefficients()) coeffs.push_back(complex_to_json(c));
    return Json{{"center", center_name(f.center())},
                {"leading_index", f.is_zero() ? 0 : f.leading_index()},
                {"order", f.is_zero() ? 0 : f.order()},
                {"coeffs", std::move(coeffs)}};
}

FormalSeries series_from_json(const Json& j) {
    Center c = center_from_json(field(j, "center"));
    const Json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array()) throw ParseError("coeffs must be an array");
    std::vector<Complex> values;
    values.reserve(coeffs.size());
    for (const Json& v : coeffs) values.push_back(complex_from_json(v));
    if (values.empty()) return FormalSeries::zero(c);
    long p = int_field(j, "leading_index");
    long N = int_field(j, "order");
    return make_series(c, p, values, N);
}

Json to_json(const Window& w) {
    return Json{{"center", center_name(w.center)}, {"lo", w.lo}, {"hi", w.hi}};
}

Window window_from_json(const Json& j) {
    Window w{center_from_json(field(j, "center")), int_field(j, "lo"),
             int_field(j, "hi")};
    if (w.lo > w.hi) throw ParseError("window lo exceeds hi");
    return w;
}

Json to_json(const PowerMatrixBlock& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.entries().rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.entries().cols(); ++k)
            row.push_back(complex_to_json(m.entries()(i, k)));
        rows.push_back(std::move(row));
    }
    return Json{{"window", to_json(m.window())},
                {"source_p", m.source_p()},
                {"rows", std::move(rows)}};
}

PowerMatrixBlock matrix_from_json(const Json& j) {
    Window w = window_from_json(field(j, "window"));
    const Json& rows = field(j, "rows");
    long n = w.size();
    if (!rows.is_array() || static_cast<long>(rows.size()) != n)
        throw ParseError("rows must match the window size");
    Block entries(n, n);
    for (long i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != n)
            throw ParseError("rows must match the window size");
        for (long k = 0; k < n; ++k)
            entries(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    long p = j.is_object() && j.contains("source_p") ? int_field(j, "source_p") : 1;
    return PowerMatrixBlock(w, std::move(entries), p);
}

Json to_json(const InfMatrixBlock& m) {
    return Json{{"window", to_json(m.window())},
                {"generator", to_json(m.generator())}};
}

InfMatrixBlock inf_matrix_from_json(const Json& j) {
    Window w = window_from_json(field(j, "window"));
    FormalSeries h = series_from_json(field(j, "generator"));
    return infinitesimal_matrix(h, w);
}

Json to_json(const LoewnerProblem& p) {
    return Json{{"kind", kind_name(p.kind)},
                {"generator", to_json(p.generator)},
                {"initial", to_json(p.initial)},
                {"a", p.a},
                {"window", to_json(p.window)}};
}

LoewnerProblem problem_from_json(const Json& j) {
    const Json& kind = field(j, "kind");
    Kind k;
    if (kind == "pde")
        k = Kind::Pde;
    else if (kind == "ode")
        k = Kind::Ode;
    else
        throw ParseError("kind must be \"pde\" or \"ode\"");
    const Json& a = field(j, "a");
    if (!a.is_number()) throw ParseError("a must be a number");
    return make_problem(k, series_from_json(field(j, "generator")),
                        series_from_json(field(j, "initial")), a.get<double>(),
                        window_from_json(field(j, "window")));
}

Json to_json(const ApproxPlan& p) {
    return Json{{"q", p.q},
                {"T", p.horizon},
                {"eps", p.eps},
                {"bound_achieved", p.bound_achieved}};
}

}  // namespace pmx
