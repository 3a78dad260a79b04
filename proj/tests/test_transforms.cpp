#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/roots.hpp"
#include "bls/transforms.hpp"
#include "support.hpp"

using namespace bls;

namespace {

TauMField borel_monomial(int n, int k, double gamma, const MGrid& g)
{
    const RayGrid ray = RayGrid::uniform(gamma, 12.0, 24, 12);
    TauMField w(ray, g);
    for (int i = 0; i < w.nr(); ++i) {
        const cx v = std::pow(ray.tau(i), n) / gamma_fn(double(n) / k);
        for (int m = 0; m < g.points; ++m) w.at(i, m) = v * double(m + 1);
    }
    return w;
}

}  // namespace

TEST_CASE("Laplace of tau^n / Gamma(n/k) is T^n with derivatives")
{
    const MGrid g(1, 3);
    for (int k = 1; k <= 3; ++k)
        for (int n = 1; n <= 6; ++n) {
            const TauMField w = borel_monomial(n, k, 0.1, g);
            for (cx T : {std::polar(0.2, 0.0), std::polar(0.15, 0.3 / k)}) {
                const auto U = laplace_mk(w, k, T, 2);
                for (int m = 0; m < g.points; ++m) {
                    const double s = m + 1;
                    CHECK(std::abs(U[0][m] - s * std::pow(T, n)) < 1e-9 * std::abs(std::pow(T, n)) * s);
                    CHECK(std::abs(U[1][m] - s * double(n) * std::pow(T, n - 1)) <
                          1e-9 * n * std::abs(std::pow(T, n - 1)) * s);
                    if (n >= 2)
                        CHECK(std::abs(U[2][m] - s * double(n * (n - 1)) * std::pow(T, n - 2)) <
                              1e-9 * n * n * std::abs(std::pow(T, n - 2)) * s);
                }
            }
        }
}

TEST_CASE("Laplace rejects rays outside the convergence sector")
{
    const TauMField w = borel_monomial(1, 2, 0.0, MGrid(1, 3));
    CHECK_THROWS_AS(laplace_mk(w, 2, std::polar(0.2, 1.0), 0), DirectionError);
    CHECK_THROWS(laplace_mk(w, 2, cx(0), 0));
}

TEST_CASE("Laplace tail bound is enforced")
{
    const RayGrid ray = RayGrid::uniform(0, 0.3, 4, 8);
    TauMField w(ray, MGrid(1, 3));
    for (int i = 0; i < w.nr(); ++i)
        for (int m = 0; m < 3; ++m) w.at(i, m) = ray.tau(i);
    CHECK_THROWS_AS(laplace_mk(w, 1, cx(0.3), 0), DirectionError);
}

TEST_CASE("direction choice stays in the sector and respects delta1")
{
    SectorSpec S;
    S.direction = 0.5;
    S.aperture = 0.4;
    CHECK(choose_direction(std::polar(1.0, 0.55), S, 2, 0.5) == doctest::Approx(0.55));
    CHECK(choose_direction(std::polar(1.0, 0.9), S, 2, 0.5) == doctest::Approx(0.7));
    CHECK_THROWS_AS(choose_direction(std::polar(1.0, 1.6), S, 2, 0.5), DirectionError);
}

TEST_CASE("sectorial solution domain checks")
{
    const EquationSpec s = test::canonical();
    const CoveringPlan plan = build_good_covering(s, 5, 1.0);
    CHECK_THROWS_AS(SectorSolution(s, plan, 0, std::polar(0.05, kPi), {}), DirectionError);
    const SectorSolution sol(s, plan, 0, cx(0.05));
    CHECK(sol.in_domain(cx(0.5 * sol.h_prime())));
    CHECK_FALSE(sol.in_domain(cx(2 * sol.h_prime())));
    CHECK_THROWS_AS(sol.eval(cx(0.1), cx(0, 2 * sol.beta_prime())), DirectionError);
    const cx u0 = sol.eval(cx(0.1), cx(0.2));
    CHECK(std::isfinite(std::abs(u0)));
}
