#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/formal.hpp"
#include "support.hpp"

using namespace bls;

namespace {

double max_rel(const FormalResidual& r)
{
    double w = 0;
    for (std::size_t n = 0; n < r.residual.size(); ++n) w = std::max(w, r.residual[n] / std::max(r.scale[n], 1e-300));
    return w;
}

}  // namespace

TEST_CASE("recursion output satisfies the coefficient identities")
{
    const EquationSpec s = test::canonical();
    for (double e : {0.03, 0.1}) {
        const FormalSeriesT f = solve_recursion(s, cx(e), 16);
        CHECK(max_rel(formal_residual(s, f, cx(e))) < 1e-10);
    }
}

TEST_CASE("lowest coefficients by hand")
{
    // U_1 = 0 and 2 Q U_2 = eps^{-1} F_1.
    const EquationSpec s = test::canonical();
    const cx eps(0.05);
    const FormalSeriesT f = solve_recursion(s, eps, 4);
    const GridFunction F1 = s.F(1);
    for (int i = 0; i < s.grid.points; ++i) {
        CHECK(std::abs(f.U(1)[i]) == doctest::Approx(0));
        const cx want = F1[i] / (eps * 2.0 * s.Q.symbol(s.grid.m(i)));
        CHECK(std::abs(f.U(2)[i] - want) <= 1e-13 * std::abs(want) + 1e-300);
    }
}

TEST_CASE("recursion is deterministic")
{
    const EquationSpec s = test::canonical();
    const FormalSeriesT a = solve_recursion(s, cx(0.05), 10), b = solve_recursion(s, cx(0.05), 10);
    for (int n = 0; n <= 10; ++n) CHECK(a.U(n).v == b.U(n).v);
}

TEST_CASE("superposition in the forcing without quadratic and C_0 terms")
{
    EquationSpec s = test::canonical();
    s.Q1 = Polynomial::constant(0);
    s.coeff_series = {GridFunction(s.grid)};
    std::mt19937 rng(5);
    EquationSpec a = s, b = s, ab = s;
    a.forcing_series = {test::random_profile(s.grid, rng), test::random_profile(s.grid, rng)};
    b.forcing_series = {test::random_profile(s.grid, rng), test::random_profile(s.grid, rng)};
    for (int n = 0; n < 2; ++n) ab.forcing_series[n] = a.forcing_series[n] + b.forcing_series[n];
    const cx eps(0.07);
    const auto fa = solve_recursion(a, eps, 12), fb = solve_recursion(b, eps, 12), fab = solve_recursion(ab, eps, 12);
    for (int n = 1; n <= 12; ++n)
        for (int i = 0; i < s.grid.points; ++i) {
            const cx sum = fa.U(n)[i] + fb.U(n)[i];
            CHECK(std::abs(fab.U(n)[i] - sum) <= 1e-12 * (std::abs(sum) + 1e-30));
        }
}

TEST_CASE("forcing enters with the eps^{-1} factor")
{
    EquationSpec s = test::canonical();
    s.Q1 = Polynomial::constant(0);
    s.coeff_series = {GridFunction(s.grid)};
    const auto f1 = solve_recursion(s, cx(0.1), 3), f2 = solve_recursion(s, cx(0.05), 3);
    for (int i = 0; i < s.grid.points; ++i)
        if (std::abs(f1.U(2)[i]) > 1e-200) CHECK(std::abs(f2.U(2)[i] / f1.U(2)[i] - 2.0) < 1e-13);
}

TEST_CASE("Gevrey rate of a synthetic Gevrey sequence")
{
    // |U_n| = Gamma(n/k) rho^{-n} gives rho_est = rho
    std::vector<double> norms(17, 0);
    for (int n = 1; n <= 16; ++n) norms[n] = gamma_fn(n / 2.0) * std::pow(0.3, -n);
    const GevreyFit g = gevrey_rate(norms, 2);
    CHECK(g.rho_est == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(g.divergence_detected);
}

TEST_CASE("convergent sequence shows an upward drift and no divergence")
{
    std::vector<double> norms(17, 0);
    for (int n = 1; n <= 16; ++n) norms[n] = std::pow(3.0, n);
    const GevreyFit g = gevrey_rate(norms, 2);
    CHECK(g.drift > 0);
    CHECK_FALSE(g.divergence_detected);
    std::vector<double> longer(33, 0);
    for (int n = 1; n <= 32; ++n) longer[n] = std::pow(3.0, n);
    CHECK(gevrey_rate(longer, 2).rho_est > g.rho_est);
}
