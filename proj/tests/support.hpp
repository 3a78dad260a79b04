#pragma once

#include "bls/config.hpp"
#include "bls/formal.hpp"

#include <random>
#include <string>

namespace test {

inline std::string spec_path(const std::string& name) { return std::string(BLS_SPEC_DIR) + "/" + name + ".json"; }

inline bls::EquationSpec canonical() { return bls::load_spec(spec_path("canonical")); }
inline bls::EquationSpec verification() { return bls::load_spec(spec_path("verification")); }

inline bls::GridFunction gaussian(const bls::MGrid& g, bls::cx a, double w = 1, double c = 0)
{
    bls::GridFunction f(g);
    for (int i = 0; i < g.points; ++i) {
        const double x = (g.m(i) - c) / w;
        f[i] = a * std::exp(-x * x);
    }
    return f;
}

inline bls::GridFunction random_profile(const bls::MGrid& g, std::mt19937& rng, double scale = 1)
{
    std::normal_distribution<double> n(0, 1);
    std::uniform_real_distribution<double> u(0.5, 2);
    return gaussian(g, scale * bls::cx(n(rng), n(rng)), u(rng), 0.5 * n(rng));
}

inline bls::TSeries random_series(const bls::MGrid& g, int order, std::mt19937& rng)
{
    bls::TSeries s(g, order);
    for (int n = 1; n <= order; ++n) s[n] = random_profile(g, rng);
    return s;
}

// Structurally valid random equation: random k, delta_D and coefficients.
inline bls::EquationSpec random_spec(std::mt19937& rng)
{
    using namespace bls;
    std::uniform_int_distribution<int> kd(1, 3), dd(1, 4);
    std::uniform_real_distribution<double> u(0.3, 1.5), s(-1, 1);
    for (;;) {
        EquationSpec e;
        e.name = "random";
        e.k = kd(rng);
        const int dD = e.k == 1 ? 3 : 2;
        const int d_D = (dD - 1) * (e.k + 1);
        e.terms = {OperatorTerm{dd(rng) + 1, 1, dd(rng), Polynomial::constant(cx(u(rng), s(rng)))},
                   OperatorTerm{d_D, dD, d_D - dD + 1, Polynomial::constant(cx(u(rng), s(rng)))}};
        e.D = 2;
        e.Q = Polynomial({cx(-u(rng), 0.2 * s(rng)), cx(0.1 * s(rng), 0), cx(u(rng), 0)});
        e.Q1 = Polynomial::constant(0.5 * u(rng));
        e.Q2 = Polynomial::constant(0.5 * u(rng));
        e.R0 = Polynomial({cx(u(rng), 0), cx(0, 0.2 * s(rng))});
        e.grid = MGrid(8, 65);
        e.beta = 1, e.mu = 2, e.nu = 1, e.rho = 0.05, e.eps0 = 0.2, e.T0 = 1, e.K0 = 20;
        e.coeff_series = {random_profile(e.grid, rng, 0.05), random_profile(e.grid, rng, 0.1)};
        e.forcing_series = {random_profile(e.grid, rng), random_profile(e.grid, rng, 0.5)};
        if (validate_structure(e, e.grid).overall) return e;
    }
}

}  // namespace test
