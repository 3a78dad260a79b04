#include "bls/borel.hpp"

#include <cmath>
#include <stdexcept>

namespace bls {

GridFunction BorelSeries::eval(cx tau) const
{
    GridFunction out(grid);
    for (int n = N(); n >= 1; --n) {
        out += coeffs[n];
        out *= tau;
    }
    return out;
}

BorelSeries mk_borel(const TSeries& s, int k, double rho)
{
    if (k < 1) throw std::invalid_argument("mk_borel: k must be >= 1");
    BorelSeries b;
    b.grid = s.grid();
    b.k = k;
    b.rho = rho;
    b.coeffs.assign(s.order() + 1, GridFunction(s.grid()));
    for (int n = 1; n <= s.order(); ++n) b.coeffs[n] = cx(1.0 / gamma_fn(static_cast<double>(n) / k)) * s[n];
    return b;
}

BorelSeries mk_borel(const FormalSeriesT& s, int k, double rho) { return mk_borel(s.as_tseries(), k, rho); }

double check_borel_diff(const TSeries& s, int k)
{
    const int N = s.order();
    // Extend so that T^{k+1} d/dT does not lose the top coefficients.
    TSeries ext(s.grid(), N + k);
    for (int n = 0; n <= N; ++n) ext[n] = s[n];
    BorelSeries lhs = mk_borel(ext.derivative().shift(k + 1), k);
    BorelSeries rhs = mk_borel(ext, k);
    double worst = 0;
    for (int n = 1; n <= N + k; ++n) {
        GridFunction r = n - k >= 1 ? cx(k) * rhs.coeffs[n - k] : GridFunction(s.grid());
        for (int i = 0; i < r.size(); ++i) worst = std::max(worst, std::abs(lhs.coeffs[n][i] - r[i]));
    }
    return worst;
}

GridFunction borel_monomial_mult(const TauFunction& w, const MGrid& g, int m_power, int k, cx tau, int nodes)
{
    if (m_power < 1) throw std::invalid_argument("borel_monomial_mult: m_power must be >= 1");
    GridFunction out(g);
    if (tau == cx(0)) return out;
    const double a = static_cast<double>(m_power) / k - 1;
    const QuadRule q = gauss_jacobi01(nodes, a);
    const double r = std::abs(tau), gam = std::arg(tau);
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double y = q.x[j];
        const double gy = a == 0 ? 1.0 : std::pow((1 - std::pow(y, k)) / (1 - y), a);
        out += cx(q.w[j] * gy / y) * w(tau * y);
    }
    out *= ray_pow(r, gam, m_power) * (k / gamma_fn(static_cast<double>(m_power) / k));
    return out;
}

GridFunction borel_convolution(const TauFunction& f, const TauFunction& g, const MGrid& grid, int k, cx tau,
                               const Polynomial& Q1, const Polynomial& Q2, const Polynomial& R, int nodes)
{
    GridFunction out(grid);
    if (tau == cx(0)) return out;
    auto vanishing = [&](const TauFunction& h) {
        const double a1 = e_beta_mu_norm(h(tau * 1e-6), 1, 0) / 1e-6;
        const double a2 = e_beta_mu_norm(h(tau * 1e-8), 1, 0) / 1e-8;
        if (a2 > 10 * a1 + 1e-300 && a2 > 1e-12) throw std::domain_error("inputs violate O(tau) vanishing");
    };
    vanishing(f);
    vanishing(g);
    const double c = std::pow(0.5, 1.0 / k);
    const QuadRule q = gauss_legendre(nodes, 0, c);
    for (std::size_t j = 0; j < q.size(); ++j) {
        const double y = q.x[j];
        const double a = std::pow(1 - std::pow(y, k), 1.0 / k);
        const double wgt = q.w[j] * std::pow(1 - std::pow(y, k), 1.0 / k - 1);
        // F = f/tau, G = g/tau at the two split points.
        const GridFunction Fa = cx(1.0) / (tau * a) * f(tau * a);
        const GridFunction Fy = cx(1.0) / (tau * y) * f(tau * y);
        const GridFunction Ga = cx(1.0) / (tau * a) * g(tau * a);
        const GridFunction Gy = cx(1.0) / (tau * y) * g(tau * y);
        out += cx(wgt) * (star_product(Fa, Gy, Q1, Q2, R) + star_product(Fy, Ga, Q1, Q2, R));
    }
    out *= tau * tau * static_cast<double>(k);
    return out;
}

TauFunction as_tau_function(const BorelSeries& b)
{
    return [b](cx tau) { return b.eval(tau); };
}

TauFunction as_tau_function(const TauMField& w)
{
    return [w](cx tau) {
        const double r = std::abs(tau);
        if (r > 0 && std::abs(angle_diff(std::arg(tau), w.ray.gamma())) > 1e-9)
            throw std::domain_error("TauMField evaluated off its ray");
        return w.eval(r);
    };
}

}  // namespace bls
