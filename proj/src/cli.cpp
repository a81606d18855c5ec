#include "pmx/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "pmx/json_io.hpp"

namespace pmx {

namespace {

struct Options {
    std::vector<std::string> inputs;
    long order = 0;
    bool has_order = false;
    double t = 1.0;
    std::optional<double> a;
    long branch = 0;
    std::optional<long> degree;
    std::optional<std::string> kind;
    double tol = 1e-9;
    std::string format = "json";
    std::optional<std::string> center;
};

std::string read_input(const std::string& arg, std::istream& in) {
    if (arg == "-") {
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    std::size_t first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
        return arg;
    std::ifstream file(arg);
    if (!file) throw ParseError("cannot open input file: " + arg);
    std::ostringstream buf;
    buf << file.rdbuf();
    return buf.str();
}

Json load_json(const Options& opt, std::size_t idx, std::istream& in) {
    if (idx >= opt.inputs.size()) throw ParseError("missing input operand");
    return parse_json_text(read_input(opt.inputs[idx], in));
}

void check_center(const Options& opt, Center c) {
    if (!opt.center) return;
    if (*opt.center != center_name(c))
        throw ParseError("input center does not match --center");
}

void print_series_table(const FormalSeries& f, std::ostream& out) {
    out << std::setprecision(12);
    if (f.is_zero()) {
        out << "zero series at " << center_name(f.center()) << "\n";
        return;
    }
    long d = direction(f.center());
    for (long i = 0; i < f.length(); ++i) {
        long e = f.leading_index() + d * i;
        Complex c = f.coefficients()[static_cast<std::size_t>(i)];
        out << "z^" << e << "\t" << c.real() << "\t" << c.imag() << "\n";
    }
}

void print_matrix_table(const PowerMatrixBlock& m, std::ostream& out) {
    out << std::setprecision(12);
    const Window& w = m.window();
    for (long i = 0; i < w.size(); ++i) {
        out << "row " << w.lo + i << ":";
        for (long j = 0; j < w.size(); ++j) {
            Complex c = m.entries()(i, j);
            out << "  " << c.real();
            if (c.imag() != 0.0) out << (c.imag() < 0 ? "-" : "+")
                                     << std::abs(c.imag()) << "i";
        }
        out << "\n";
    }
}

void emit_series(const FormalSeries& f, const Options& opt, std::ostream& out) {
    if (opt.format == "table")
        print_series_table(f, out);
    else
        out << to_json(f).dump() << "\n";
}

void emit_matrix(const PowerMatrixBlock& m, const Options& opt, std::ostream& out) {
    if (opt.format == "table")
        print_matrix_table(m, out);
    else
        out << to_json(m).dump() << "\n";
}

long required_order(const Options& opt) {
    if (!opt.has_order) throw ParseError("--order is required for this verb");
    if (opt.order < 2) throw ParseError("--order must be >= 2");
    return opt.order;
}

int dispatch(const std::string& verb, const Options& opt, std::istream& in,
             std::ostream& out) {
    Tolerance tol{opt.tol, opt.tol, 1e-15};
    if (verb == "exp") {
        FormalSeries h = series_from_json(load_json(opt, 0, in));
        check_center(opt, h.center());
        Window w = Window::principal(h.center(), required_order(opt));
        emit_matrix(mexp(infinitesimal_matrix(h, w), opt.t), opt, out);
    } else if (verb == "log") {
        PowerMatrixBlock m = matrix_from_json(load_json(opt, 0, in));
        check_center(opt, m.window().center);
        InfMatrixBlock l = mlog(m, tol);
        if (opt.format == "table")
            print_series_table(l.generator(), out);
        else
            out << to_json(l).dump() << "\n";
    } else if (verb == "exp-inverse") {
        PowerMatrixBlock m = matrix_from_json(load_json(opt, 0, in));
        check_center(opt, m.window().center);
        emit_series(exp_inverse(m, opt.branch), opt, out);
    } else if (verb == "compose") {
        FormalSeries g = series_from_json(load_json(opt, 0, in));
        FormalSeries f = series_from_json(load_json(opt, 1, in));
        check_center(opt, f.center());
        FormalSeries r = opt.has_order ? compose(g, f, opt.order) : compose(g, f);
        emit_series(r, opt, out);
    } else if (verb == "invert") {
        FormalSeries f = series_from_json(load_json(opt, 0, in));
        check_center(opt, f.center());
        FormalSeries r =
            opt.has_order ? comp_inverse(f, opt.order) : comp_inverse(f);
        emit_series(r, opt, out);
    } else if (verb == "bracket") {
        FormalSeries h1 = series_from_json(load_json(opt, 0, in));
        FormalSeries h2 = series_from_json(load_json(opt, 1, in));
        check_center(opt, h1.center());
        emit_series(bracket_series(h1, h2), opt, out);
    } else if (verb == "pmatrix") {
        FormalSeries f = series_from_json(load_json(opt, 0, in));
        check_center(opt, f.center());
        Window w = Window::principal(f.center(), required_order(opt));
        emit_matrix(power_matrix(f, w), opt, out);
    } else if (verb == "evolve") {
        LoewnerProblem prob = problem_from_json(load_json(opt, 0, in));
        check_center(opt, prob.window.center);
        if (opt.a) prob.a = *opt.a;
        if (opt.kind) prob.kind = *opt.kind == "pde" ? Kind::Pde : Kind::Ode;
        PowerMatrixBlock m =
            opt.degree ? evolve_truncated_polynomial(prob, opt.t, *opt.degree)
            : prob.kind == Kind::Pde ? evolve_pde_const(prob, opt.t)
                                     : evolve_ode_const(prob, opt.t);
        if (opt.format == "table") {
            print_matrix_table(m, out);
            print_series_table(first_row_series(m), out);
        } else {
            Json j{{"matrix", to_json(m)},
                   {"first_row", to_json(first_row_series(m))}};
            out << j.dump() << "\n";
        }
    } else if (verb == "plan") {
        FormalSeries h = series_from_json(load_json(opt, 0, in));
        check_center(opt, h.center());
        ApproxPlan plan =
            taylor_degree_for_tolerance(h, required_order(opt), opt.t, opt.tol);
        out << to_json(plan).dump() << "\n";
    } else if (verb == "verify") {
        PowerMatrixBlock m = matrix_from_json(load_json(opt, 0, in));
        check_center(opt, m.window().center);
        RowRelationReport rel = verify_row_relations(m, tol);
        bool sandwich_pass = true;
        long sandwich_rows = 0;
        std::string sandwich_note;
        try {
            FormalSeries g = first_row_series(m);
            const Window& w = m.window();
            FormalSeries f = FormalSeries::identity(w.center);
            FormalSeries h = FormalSeries::monomial(
                w.center, w.center == Center::Zero ? 2 : 0);
            for (long row = w.lo; row <= w.hi; ++row) {
                if (!sandwich_identity_check(g, h, f, row, w, tol))
                    sandwich_pass = false;
                ++sandwich_rows;
            }
        } catch (const DomainError& e) {
            sandwich_pass = false;
            sandwich_note = e.what();
        }
        bool pass = rel.pass && sandwich_pass;
        Json j{{"row_relations",
                {{"pass", rel.pass},
                 {"max_residual", rel.max_residual},
                 {"checked", rel.checked}}},
               {"sandwich",
                {{"pass", sandwich_pass}, {"rows_checked", sandwich_rows}}},
               {"pass", pass}};
        if (!sandwich_note.empty()) j["sandwich"]["error"] = sandwich_note;
        out << j.dump() << "\n";
        return pass ? 0 : 1;
    } else {
        throw ParseError("unknown verb: " + verb);
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in,
            std::ostream& out, std::ostream& err) {
    CLI::App app{"truncated power series and power matrix engine", "pmx"};
    app.require_subcommand(1);

    static const std::vector<std::string> verbs = {
        "exp",     "log",    "exp-inverse", "compose", "invert",
        "bracket", "pmatrix", "evolve",     "plan",    "verify"};
    static const std::map<std::string, std::string> help = {
        {"exp", "matrix exponential of a generator over a principal window"},
        {"log", "matrix logarithm of a unipotent block"},
        {"exp-inverse", "generator whose exponential is the given block"},
        {"compose", "composition g(f(z)) of two series"},
        {"invert", "compositional inverse of a series"},
        {"bracket", "bracket h1 h2' - h1' h2 of two generators"},
        {"pmatrix", "principal block of the power matrix of a series"},
        {"evolve", "coefficient evolution of a Loewner problem"},
        {"plan", "Taylor degree certified for a target tolerance"},
        {"verify", "row relations and sandwich identity of a block"}};

    Options opt;
    double a_val = 0.0;
    long degree_val = 0;
    std::string kind_val, center_val;
    for (const std::string& verb : verbs) {
        CLI::App* sub = app.add_subcommand(verb, help.at(verb));
        sub->add_option("inputs", opt.inputs,
                        "input file, '-' for stdin, or inline JSON");
        sub->add_option("--order", opt.order, "window size / truncation order");
        sub->add_option("--t", opt.t, "time (or horizon for plan)");
        sub->add_option("--a", a_val, "start time override");
        sub->add_option("--branch", opt.branch, "logarithm branch index");
        sub->add_option("--degree", degree_val, "Taylor degree");
        sub->add_option("--kind", kind_val, "problem kind override")
            ->check(CLI::IsMember({"pde", "ode"}));
        sub->add_option("--tol", opt.tol, "tolerance (eps for plan)");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--center", center_val, "expected input center")
            ->check(CLI::IsMember({"zero", "infinity"}));
    }

    std::string chosen;
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
        for (CLI::App* sub : app.get_subcommands()) {
            chosen = sub->get_name();
            opt.has_order = sub->count("--order") > 0;
            if (sub->count("--a") > 0) opt.a = a_val;
            if (sub->count("--degree") > 0) opt.degree = degree_val;
            if (sub->count("--kind") > 0) opt.kind = kind_val;
            if (sub->count("--center") > 0) opt.center = center_val;
        }
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        return dispatch(chosen, opt, in, out);
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pmx
