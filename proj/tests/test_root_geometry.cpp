#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/roots.hpp"
#include "support.hpp"

using namespace bls;

TEST_CASE("roots of P_m for the canonical spec in closed form")
{
    // P_m = 2 Q(im) - 4 tau^2 with Q(im) = -(1 + m^2): q = +-i sqrt((1 + m^2)/2).
    const EquationSpec s = test::canonical();
    for (double m : {0.0, 0.7, -3.0}) {
        const auto q = roots_qlm(s, m);
        REQUIRE(q.size() == 2);
        const double a = std::sqrt((1 + m * m) / 2);
        for (const cx& r : q) {
            CHECK(std::abs(r.real()) < 1e-14);
            CHECK(std::abs(std::abs(r.imag()) - a) < 1e-14);
        }
        CHECK(std::abs(q[0] + q[1]) < 1e-14);
    }
}

TEST_CASE("root set residuals and counts")
{
    for (const auto& s : {test::canonical(), test::verification()}) {
        const RootSet rs = root_set(s, s.grid);
        CHECK(rs.max_residual < 1e-10);
        for (const auto& q : rs.q) CHECK(static_cast<int>(q.size()) == (s.deltaD() - 1) * s.k);
    }
}

TEST_CASE("direction through a root is not admissible")
{
    const EquationSpec s = test::canonical();
    const DirectionReport bad = direction_admissibility(s, kPi / 2, 0.2, s.rho, s.grid);
    CHECK_FALSE(bad.admissible);
    const DirectionReport good = direction_admissibility(s, 0, 0.2, s.rho, s.grid);
    CHECK(good.admissible);
    CHECK(good.M1 > 0);
    CHECK(good.M2 > 0);
}

TEST_CASE("good covering invariants")
{
    const EquationSpec s = test::canonical();
    for (int count : {5, 6}) {
        const CoveringPlan plan = build_good_covering(s, count, 1.0);
        CHECK(plan.count == count);
        const CoveringCheck c = verify_covering(s, plan, 4000);
        CHECK(c.pairwise_overlap);
        CHECK(c.no_triple);
        CHECK(c.covers);
        CHECK(c.containment);
        CHECK(c.directions_admissible);
    }
    CHECK_THROWS(build_good_covering(s, 3, 1.0));
    CHECK_THROWS(build_good_covering(s, 8, 1.0));
    // Four sectors force a direction arc through the roots on the imaginary axis.
    CHECK_THROWS(build_good_covering(s, 4, 1.0));
}
