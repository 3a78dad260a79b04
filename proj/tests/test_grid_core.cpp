#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bls/grid.hpp"
#include "bls/kernels.hpp"
#include "bls/numeric.hpp"
#include "bls/polynomial.hpp"
#include "support.hpp"

#include <random>
#include <sstream>

using namespace bls;

TEST_CASE("gamma function values and recurrence")
{
    CHECK(gamma_fn(1) == doctest::Approx(1).epsilon(1e-14));
    CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    for (double x : {0.3, 1.7, 4.2, 9.5})
        CHECK(gamma_fn(x + 1) == doctest::Approx(x * gamma_fn(x)).epsilon(1e-13));
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly")
{
    const QuadRule q = gauss_legendre(10, -1, 2);
    double s = 0;
    for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::pow(q.x[i], 19);
    CHECK(s == doctest::Approx((std::pow(2.0, 20) - 1) / 20).epsilon(1e-13));
}

TEST_CASE("Gauss-Jacobi on [0,1] integrates the weighted monomial")
{
    // int_0^1 (1-x)^a x^3 dx = B(4, a+1)
    for (double a : {-0.5, 0.0, 1.5}) {
        const QuadRule q = gauss_jacobi01(12, a);
        double s = 0;
        for (std::size_t i = 0; i < q.size(); ++i) s += q.w[i] * std::pow(q.x[i], 3);
        CHECK(s == doctest::Approx(6 * gamma_fn(a + 1) / gamma_fn(a + 5)).epsilon(1e-13));
    }
}

TEST_CASE("line fit and exact polynomial fit")
{
    const LineFit f = fit_line({0, 1, 2, 3}, {1, 3, 5, 7});
    CHECK(f.slope == doctest::Approx(2));
    CHECK(f.intercept == doctest::Approx(1));
    CHECK(f.r2 == doctest::Approx(1));
    const auto c = poly_fit_exact({cx(1), cx(2), cx(3)}, {cx(6), cx(11), cx(18)});
    CHECK(std::abs(c[0] - cx(3)) < 1e-12);
    CHECK(std::abs(c[1] - cx(2)) < 1e-12);
    CHECK(std::abs(c[2] - cx(1)) < 1e-12);
}

TEST_CASE("falling factorial in integers")
{
    CHECK(falling_factorial(5, 3) == 60);
    CHECK(falling_factorial(-2, 2) == 6);
    CHECK(falling_factorial(7, 0) == 1);
}

TEST_CASE("polynomial symbol evaluates at im")
{
    const Polynomial Q({cx(-1), cx(0), cx(1)});
    CHECK(std::abs(Q.symbol(2.0) - cx(-5)) < 1e-15);
}

TEST_CASE("m-convolution of Gaussians matches the closed form")
{
    const MGrid g(8, 129);
    const GridFunction f = test::gaussian(g, 1);
    const GridFunction c = m_convolution(f, f);
    for (int i = 32; i <= 96; i += 8) {
        const double m = g.m(i);
        CHECK(std::abs(c[i] - std::sqrt(kPi / 2) * std::exp(-m * m / 2)) < 1e-10);
    }
}

TEST_CASE("inverse Fourier transform of a Gaussian matches the closed form")
{
    const MGrid g(10, 161);
    const GridFunction f = test::gaussian(g, 1);
    const std::vector<cx> z{cx(0), cx(0.7), cx(-1.3, 0.4)};
    const auto v = fourier_inverse(f, z, 1.0);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(std::abs(v[i] - std::exp(-z[i] * z[i] / 4.0) / std::sqrt(2.0)) < 1e-12);
    CHECK_THROWS(fourier_inverse(f, {cx(0, 1.5)}, 1.0));
}

TEST_CASE("weighted sup norm")
{
    const MGrid g(4, 9);
    GridFunction f(g);
    f[g.centre() + 1] = 1;  // m = 1
    CHECK(e_beta_mu_norm(f, 1, 2) == doctest::Approx(4 * std::exp(1.0)));
    CHECK_THROWS(e_beta_mu_norm(f, 0, 2));
}

TEST_CASE("grid CSV round trip with a comment header")
{
    std::mt19937 rng(3);
    const MGrid g(6, 25);
    const GridFunction f = test::random_profile(g, rng);
    std::stringstream ss;
    ss << "# hash\n";
    write_grid_csv(ss, f);
    const GridFunction r = read_grid_csv(ss);
    CHECK(r.grid == g);
    for (int i = 0; i < g.points; ++i) CHECK(r[i] == f[i]);
}

TEST_CASE("ray grid interpolates polynomials exactly")
{
    const RayGrid ray = RayGrid::uniform(0.3, 2.0, 4, 8);
    const MGrid g(2, 5);
    TauMField w(ray, g);
    for (int i = 0; i < w.nr(); ++i)
        for (int m = 0; m < g.points; ++m) w.at(i, m) = std::pow(ray.tau(i), 5) * double(m + 1);
    const GridFunction e = w.eval(1.37);
    for (int m = 0; m < g.points; ++m) CHECK(std::abs(e[m] - std::pow(std::polar(1.37, 0.3), 5) * double(m + 1)) < 1e-12);
}

TEST_CASE("parallel kernels are bitwise equal to the serial reference")
{
    std::mt19937 rng(11);
    std::normal_distribution<double> n(0, 1);
    auto fill = [&](std::size_t s) {
        std::vector<cx> v(s);
        for (auto& x : v) x = cx(n(rng), n(rng));
        return v;
    };
    const int nm = 33, nr = 20;
    {
        const auto A = fill(3 * nm), B = fill(4 * nm);
        std::vector<cx> o1(12 * nm), o2(12 * nm);
        kernels::pair_convolutions(A.data(), 3, B.data(), 4, nm, 0.1, o1.data(), Exec::serial);
        kernels::pair_convolutions(A.data(), 3, B.data(), 4, nm, 0.1, o2.data(), Exec::parallel);
        CHECK(o1 == o2);
    }
    {
        const auto M = fill(nr * nr), X = fill(nr * nm);
        std::vector<cx> o1(nr * nm), o2(nr * nm);
        kernels::matmul_rows(M.data(), X.data(), nr, nr, nm, o1.data(), Exec::serial);
        kernels::matmul_rows(M.data(), X.data(), nr, nr, nm, o2.data(), Exec::parallel);
        CHECK(o1 == o2);
    }
    {
        const auto T = fill(nr * nr * nr), S = fill(nr * nr * nm);
        std::vector<cx> o1(nr * nm), o2(nr * nm);
        kernels::tensor_contract(T.data(), S.data(), nr, nm, o1.data(), Exec::serial);
        kernels::tensor_contract(T.data(), S.data(), nr, nm, o2.data(), Exec::parallel);
        CHECK(o1 == o2);
    }
    {
        const auto f = fill(nm), z = fill(7);
        std::vector<double> m(nm);
        for (int i = 0; i < nm; ++i) m[i] = -4 + 0.25 * i;
        std::vector<cx> o1(7), o2(7);
        kernels::fourier_sum(f.data(), m.data(), nm, z.data(), 7, 0.1, o1.data(), Exec::serial);
        kernels::fourier_sum(f.data(), m.data(), nm, z.data(), 7, 0.1, o2.data(), Exec::parallel);
        CHECK(o1 == o2);
    }
}
