#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/config.hpp"
#include "support.hpp"

using namespace bls;

TEST_CASE("canonical and verification specs pass every hypothesis")
{
    for (const auto& s : {test::canonical(), test::verification()}) {
        const HypothesisReport r = validate_structure(s, s.grid);
        for (const auto& f : r.flags) CHECK_MESSAGE(f.pass, f.name << ": " << f.witness);
        CHECK(r.overall);
    }
}

TEST_CASE("wrong d_D is named in the report")
{
    EquationSpec s = test::canonical();
    s.terms.back().d = 2;
    const HypothesisReport r = validate_structure(s, s.grid);
    CHECK_FALSE(r.overall);
    CHECK_FALSE(r.find(hyp::kdD)->pass);
}

TEST_CASE("delta_D = 1 and D = 1 are rejected")
{
    EquationSpec s = test::canonical();
    s.terms.back().delta = 1;
    const HypothesisReport r = validate_structure(s, s.grid);
    REQUIRE(r.find(hyp::kDeltaD2));
    CHECK_FALSE(r.find(hyp::kDeltaD2)->pass);
    s.terms = {OperatorTerm{0, 1, 0, Polynomial::constant(1)}};
    s.D = 1;
    const HypothesisReport one = validate_structure(s, s.grid);
    CHECK_FALSE(one.overall);
    CHECK_FALSE(one.find(hyp::kRanges)->pass);
}

TEST_CASE("Q vanishing on the grid is flagged")
{
    EquationSpec s = test::canonical();
    s.Q = Polynomial({cx(0), cx(0), cx(1)});
    CHECK_FALSE(validate_structure(s, s.grid).find(hyp::kQnonzero)->pass);
}

TEST_CASE("series bounds use the E_(beta,mu) norm")
{
    EquationSpec s = test::canonical();
    s.K0 = 1e-3;
    CHECK_FALSE(validate_structure(s, s.grid).find(hyp::kSeriesBounds)->pass);
}

TEST_CASE("quotient sector contains Q/R_D on the grid")
{
    const EquationSpec s = test::canonical();
    const SectorSpec S = quotient_sector(s, s.grid);
    for (int i = 0; i < s.grid.points; ++i) {
        const double m = s.grid.m(i);
        CHECK(S.contains(s.Q.symbol(m) / s.RD().symbol(m), 1e-12));
    }
}

TEST_CASE("config errors report line and field")
{
    const std::string text = "{\n  \"k\": 2,\n  \"terms\": [\n    {\"d\": 4, \"delta\": 1.5, \"Delta\": 1, \"R\": [1]}\n  ]\n}\n";
    try {
        parse_spec(text);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string w = e.what();
        CHECK(w.find("line 4") != std::string::npos);
        CHECK(w.find("terms[0].delta") != std::string::npos);
    }
    try {
        parse_spec("{\n  \"k\": 2,\n  \"terms\": [\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line") != std::string::npos);
    }
}

TEST_CASE("config hash depends on content, not formatting")
{
    CHECK(config_hash("{\"a\": 1}", "x") == config_hash("{ \"a\":1 }", "x"));
    CHECK(config_hash("{\"a\": 1}", "x") != config_hash("{\"a\": 2}", "x"));
    CHECK(config_hash("{\"a\": 1}", "x") != config_hash("{\"a\": 1}", "y"));
}
