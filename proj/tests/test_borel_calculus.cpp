#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/borel.hpp"
#include "support.hpp"

using namespace bls;

namespace {

TSeries monomial(const MGrid& g, int n, const GridFunction& profile)
{
    TSeries s(g, n);
    s[n] = profile;
    return s;
}

}  // namespace

TEST_CASE("Borel coefficients divide by Gamma(n/k)")
{
    const MGrid g(4, 17);
    const GridFunction p = test::gaussian(g, 1);
    const BorelSeries b1 = mk_borel(monomial(g, 1, p), 2);
    const BorelSeries b2 = mk_borel(monomial(g, 2, p), 2);
    for (int i = 0; i < g.points; ++i) {
        CHECK(std::abs(b1.coeffs[1][i] - p[i] / std::sqrt(kPi)) < 1e-15);
        CHECK(std::abs(b2.coeffs[2][i] - p[i]) < 1e-15);
    }
}

TEST_CASE("Borel transform is linear")
{
    std::mt19937 rng(2);
    const MGrid g(4, 17);
    TSeries a = test::random_series(g, 6, rng), b = test::random_series(g, 6, rng);
    TSeries c = a.scaled(cx(2, -1));
    c += b;
    const BorelSeries ba = mk_borel(a, 3), bb = mk_borel(b, 3), bc = mk_borel(c, 3);
    for (int n = 1; n <= 6; ++n)
        for (int i = 0; i < g.points; ++i)
            CHECK(std::abs(bc.coeffs[n][i] - (cx(2, -1) * ba.coeffs[n][i] + bb.coeffs[n][i])) < 1e-13);
}

TEST_CASE("derivative identity on T^3")
{
    const MGrid g(4, 17);
    CHECK(check_borel_diff(monomial(g, 3, test::gaussian(g, 1)), 2) < 1e-15);
    CHECK(check_borel_diff(TSeries(g, 5), 2) == 0);
}

TEST_CASE("monomial multiplication kernel matches the coefficient shift")
{
    // Borel of T times T^2 at k=2 is tau^3/Gamma(3/2).
    const MGrid g(4, 17);
    GridFunction one(g);
    for (int i = 0; i < g.points; ++i) one[i] = 1;
    const TauFunction w = as_tau_function(mk_borel(monomial(g, 1, one), 2));
    const GridFunction r = borel_monomial_mult(w, g, 2, 2, cx(0.5));
    const double want = 0.125 / gamma_fn(1.5);
    CHECK(want == doctest::Approx(0.141047).epsilon(1e-5));
    for (int i = 0; i < g.points; ++i) CHECK(std::abs(r[i] - want) < 1e-12);

    std::mt19937 rng(4);
    // Order 8 with U_6..U_8 = 0 so the shift by T^3 is not truncated.
    TSeries s = test::random_series(g, 8, rng);
    for (int n = 6; n <= 8; ++n) s[n] = GridFunction(g);
    const BorelSeries want3 = mk_borel(s.shift(3), 3);
    const cx tau = std::polar(0.4, 0.3);
    const GridFunction got = borel_monomial_mult(as_tau_function(mk_borel(s, 3)), g, 3, 3, tau);
    const GridFunction ref = want3.eval(tau);
    for (int i = 0; i < g.points; ++i) CHECK(std::abs(got[i] - ref[i]) <= 1e-10 * (std::abs(ref[i]) + 1e-12));
}

TEST_CASE("Borel convolution reproduces the Beta integral")
{
    // k = 1, f = g = tau p: the convolution is tau^2 (p * p) since B(1,1) = 1.
    const MGrid g(8, 65);
    const GridFunction p = test::gaussian(g, 1);
    const TauFunction f = [&](cx t) { return t * p; };
    const Polynomial one = Polynomial::constant(1);
    const cx tau(0.3, 0.1);
    const GridFunction r = borel_convolution(f, f, g, 1, tau, one, one, one);
    const GridFunction pp = m_convolution(p, p);
    for (int i = 0; i < g.points; ++i) CHECK(std::abs(r[i] - tau * tau * pp[i]) < 1e-12);
}

TEST_CASE("Borel convolution is symmetric and matches the series product")
{
    std::mt19937 rng(8);
    const MGrid g(8, 65);
    const int k = 2;
    const TSeries a = test::random_series(g, 5, rng), b = test::random_series(g, 5, rng);
    const Polynomial one = Polynomial::constant(1);
    const TauFunction fa = as_tau_function(mk_borel(a, k)), fb = as_tau_function(mk_borel(b, k));
    const cx tau = std::polar(0.3, 0.2);
    const GridFunction ab = borel_convolution(fa, fb, g, k, tau, one, one, one);
    const GridFunction ba = borel_convolution(fb, fa, g, k, tau, one, one, one);
    // Borel of the product a b in the m-convolution sense.
    const TSeries prod = TSeries::cauchy(a, b, [](const GridFunction& x, const GridFunction& y) { return m_convolution(x, y); }, 10);
    const GridFunction ref = mk_borel(prod, k).eval(tau);
    double scale = 0;
    for (int i = 0; i < g.points; ++i) scale = std::max(scale, std::abs(ref[i]));
    for (int i = 0; i < g.points; ++i) {
        CHECK(std::abs(ab[i] - ba[i]) < 1e-12 * scale);
        CHECK(std::abs(ab[i] - ref[i]) < 1e-8 * scale);
    }
}
