#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "pmx/cli.hpp"
#include "pmx/json_io.hpp"
#include "support.hpp"

using namespace pmx;
using namespace pmx::testing;

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
    std::istringstream in(stdin_text);
    std::ostringstream out, err;
    int status = run_cli(args, in, out, err);
    return {status, out.str(), err.str()};
}

std::string dump(const Json& j) { return j.dump(); }

}  // namespace

TEST_CASE("series JSON round trip") {
    Rng rng(401);
    for (int trial = 0; trial < 20; ++trial) {
        Center c = trial % 2 == 0 ? Center::Zero : Center::Infinity;
        FormalSeries f = rng.series(c, trial % 4 - 1, 1 + trial % 6);
        FormalSeries back = series_from_json(to_json(f));
        CHECK(back.center() == f.center());
        CHECK(back.leading_index() == f.leading_index());
        CHECK(max_coeff_distance(back, f) == 0.0);
    }
    FormalSeries zero = FormalSeries::zero(Center::Infinity);
    CHECK(series_from_json(to_json(zero)).is_zero());

    CHECK_THROWS_AS(series_from_json(parse_json_text("{\"center\":\"zero\"}")),
                    ParseError);
    CHECK_THROWS_AS(series_from_json(parse_json_text(
                        "{\"center\":\"middle\",\"leading_index\":1,"
                        "\"order\":1,\"coeffs\":[[1,0]]}")),
                    ParseError);
}

TEST_CASE("matrix and problem JSON round trips") {
    Rng rng(409);
    Window w{Center::Zero, 1, 5};
    PowerMatrixBlock m = power_matrix(rng.map(Center::Zero, 4), w);
    PowerMatrixBlock back = matrix_from_json(to_json(m));
    CHECK(back.window() == m.window());
    CHECK(block_distance(back.entries(), m.entries()) == 0.0);
    CHECK(back.source_p() == m.source_p());

    InfMatrixBlock a = infinitesimal_matrix(rng.generator(Center::Zero, 4), w);
    InfMatrixBlock ab = inf_matrix_from_json(to_json(a));
    CHECK(block_distance(ab.entries(), a.entries()) == 0.0);

    LoewnerProblem p = make_problem(Kind::Ode, rng.generator(Center::Zero, 4),
                                    rng.map(Center::Zero, 4), 0.25, w);
    LoewnerProblem pb = problem_from_json(to_json(p));
    CHECK(pb.kind == Kind::Ode);
    CHECK(pb.a == 0.25);
    CHECK(max_coeff_distance(pb.generator, p.generator) == 0.0);
    CHECK(max_coeff_distance(pb.initial, p.initial) == 0.0);
    CHECK(pb.window == w);
}

TEST_CASE("cli exp produces the z/(1-z) block") {
    std::string gen = dump(to_json(FormalSeries::monomial(Center::Zero, 2)));
    CliResult r = cli({"exp", gen, "--order", "6", "--t", "1"});
    REQUIRE(r.status == 0);
    Json j = parse_json_text(r.out);
    for (long k = 0; k < 6; ++k)
        CHECK(std::abs(j["rows"][0][k][0].get<double>() - 1.0) <= 1e-12);
    // matrix parses back and passes verification
    CliResult v = cli({"verify", r.out});
    CHECK(v.status == 0);
    Json rep = parse_json_text(v.out);
    CHECK(rep["pass"].get<bool>());
    CHECK(rep["row_relations"]["pass"].get<bool>());
}

TEST_CASE("cli compose echoes through the identity") {
    std::string g = dump(to_json(series0({1.0, 0.5, 0.25})));
    std::string z = dump(to_json(FormalSeries::identity(Center::Zero)));
    CliResult r = cli({"compose", g, z});
    REQUIRE(r.status == 0);
    FormalSeries back = series_from_json(parse_json_text(r.out));
    CHECK(max_coeff_distance(back, series0({1.0, 0.5, 0.25})) == 0.0);
}

TEST_CASE("cli log rejects non-unipotent input with exit 1") {
    Window w{Center::Zero, 1, 3};
    Block two = Block::Identity(3, 3);
    two(0, 0) = 2.0;
    std::string m = dump(to_json(PowerMatrixBlock(w, two, 1)));
    CliResult r = cli({"log", m});
    CHECK(r.status == 1);
    CHECK(r.err.find("NotUnipotent") != std::string::npos);

    // and accepts a unipotent one
    std::string u = dump(to_json(power_matrix(series0({1.0, 1.0}), w)));
    CliResult ok = cli({"log", u});
    REQUIRE(ok.status == 0);
    Json j = parse_json_text(ok.out);
    FormalSeries h = series_from_json(j["generator"]);
    CHECK(max_coeff_distance(h, series0({1.0, -1.0}, 2)) <= 1e-14);
}

TEST_CASE("cli exit codes for malformed input") {
    CHECK(cli({"exp", "{not json", "--order", "4"}).status == 2);
    CHECK(cli({"pmatrix", "{\"center\":\"zero\",\"leading_index\":1,"
               "\"order\":1,\"coeffs\":[[1,0]]}"}).status == 2);  // no --order
    CHECK(cli({"frobnicate"}).status == 2);
    CHECK(cli({"exp", "/nonexistent/path.json", "--order", "4"}).status == 2);
    // --center mismatch is malformed input
    std::string z = dump(to_json(FormalSeries::identity(Center::Zero)));
    CHECK(cli({"pmatrix", z, "--order", "4", "--center", "infinity"}).status == 2);
}

TEST_CASE("cli reads stdin and emits tables") {
    std::string z2 = dump(to_json(series0({1.0, 1.0})));
    CliResult r = cli({"pmatrix", "-", "--order", "3", "--format", "table"}, z2);
    REQUIRE(r.status == 0);
    CHECK(r.out.find("row 1:") != std::string::npos);
    CHECK(r.out.find("row 3:") != std::string::npos);

    CliResult s = cli({"invert", z2, "--order", "4", "--format", "table"});
    REQUIRE(s.status == 0);
    CHECK(s.out.find("z^4") != std::string::npos);
    CHECK(s.out.find("-5") != std::string::npos);
}

TEST_CASE("cli evolve, plan, bracket, exp-inverse") {
    LoewnerProblem p =
        make_problem(Kind::Pde, FormalSeries::monomial(Center::Zero, 2),
                     FormalSeries::identity(Center::Zero), 0.0,
                     Window::principal(Center::Zero, 6));
    std::string prob = dump(to_json(p));
    CliResult r = cli({"evolve", prob, "--t", "0.5"});
    REQUIRE(r.status == 0);
    Json j = parse_json_text(r.out);
    FormalSeries row = series_from_json(j["first_row"]);
    for (long k = 1; k <= 6; ++k)
        CHECK(std::abs(row.coeff(k) - std::pow(0.5, double(k - 1))) <= 1e-12);

    // kind override via flag
    CliResult ro = cli({"evolve", prob, "--t", "0.5", "--kind", "ode"});
    REQUIRE(ro.status == 0);
    FormalSeries wrow =
        series_from_json(parse_json_text(ro.out)["first_row"]);
    CHECK(std::abs(wrow.coeff(2) + 0.5) <= 1e-12);

    // degree-q truncated evolution matches the plan's certified error
    std::string gen = dump(to_json(FormalSeries::identity(Center::Zero)));
    CliResult pl = cli({"plan", gen, "--order", "6", "--t", "1", "--tol", "1e-8"});
    REQUIRE(pl.status == 0);
    Json plan = parse_json_text(pl.out);
    CHECK(plan["bound_achieved"].get<double>() <= 1e-8);
    CHECK(plan["q"].get<long>() > 0);

    std::string h1 = dump(to_json(FormalSeries::identity(Center::Zero)));
    std::string h2 = dump(to_json(FormalSeries::monomial(Center::Zero, 2)));
    CliResult br = cli({"bracket", h1, h2});
    REQUIRE(br.status == 0);
    CHECK(max_coeff_distance(series_from_json(parse_json_text(br.out)),
                             FormalSeries::monomial(Center::Zero, 2)) == 0.0);

    // exp-inverse round trip through the CLI
    CliResult ex = cli({"exp", h2, "--order", "5", "--t", "1"});
    REQUIRE(ex.status == 0);
    CliResult inv = cli({"exp-inverse", ex.out, "--branch", "0"});
    REQUIRE(inv.status == 0);
    FormalSeries hb = series_from_json(parse_json_text(inv.out));
    CHECK(max_coeff_distance(hb, FormalSeries::monomial(Center::Zero, 2)) <= 1e-10);
}
