#include "bls/formal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bls {

GridFunction TSeries::at(int n) const
{
    if (n < 0 || n > order()) return GridFunction(grid_);
    return c_[n];
}

TSeries TSeries::derivative() const
{
    TSeries d(grid_, order());
    for (int n = 0; n < order(); ++n) d.c_[n] = cx(n + 1) * c_[n + 1];
    return d;
}

TSeries TSeries::shift(int s) const
{
    TSeries d(grid_, order());
    for (int n = s; n <= order(); ++n) d.c_[n] = c_[n - s];
    return d;
}

TSeries TSeries::symbol(const Polynomial& P) const
{
    TSeries d(grid_, order());
    for (int n = 0; n <= order(); ++n) d.c_[n] = apply_symbol(P, c_[n]);
    return d;
}

TSeries TSeries::scaled(cx s) const
{
    TSeries d = *this;
    for (auto& c : d.c_) c *= s;
    return d;
}

TSeries& TSeries::operator+=(const TSeries& o)
{
    for (int n = 0; n <= std::min(order(), o.order()); ++n) c_[n] += o.c_[n];
    return *this;
}

TSeries TSeries::cauchy(const TSeries& a, const TSeries& b, const Bilinear& op, int order)
{
    TSeries out(a.grid(), order);
    for (int n = 0; n <= order; ++n)
        for (int i = 0; i <= n; ++i) {
            if (i > a.order() || n - i > b.order()) continue;
            out.c_[n] += op(a.c_[i], b.c_[n - i]);
        }
    return out;
}

TSeries FormalSeriesT::as_tseries() const
{
    TSeries s(grid, N());
    for (int n = 1; n <= N(); ++n) s[n] = coeffs[n];
    return s;
}

FormalSeriesT solve_recursion(const EquationSpec& spec, cx eps, int N)
{
    if (N < 2) throw std::invalid_argument("solve_recursion: N must be >= 2");
    if (eps == cx(0)) throw std::invalid_argument("solve_recursion: eps must be nonzero");
    const MGrid& g = spec.grid;
    std::vector<cx> Qm(g.points);
    for (int i = 0; i < g.points; ++i) {
        Qm[i] = spec.Q.symbol(g.m(i));
        if (Qm[i] == cx(0)) throw std::domain_error("solve_recursion: Q(im) = 0 on the grid");
    }
    const cx ieps = 1.0 / eps;
    const cx pref = ieps / std::sqrt(2 * kPi);
    const Polynomial one = Polynomial::constant(1);

    FormalSeriesT s;
    s.grid = g;
    s.eps = eps;
    s.coeffs.assign(N + 1, GridFunction(g));
    std::vector<GridFunction> R0U(N + 1, GridFunction(g));

    for (int n = 0; n < N; ++n) {
        GridFunction rhs(g);
        for (int n1 = 1; n1 <= n - 1; ++n1) {
            rhs += pref * star_product(s.coeffs[n1], s.coeffs[n - n1], spec.Q1, spec.Q2, one);
            if (n1 <= spec.max_C0_order()) rhs += pref * m_convolution(spec.coeff_series[n1], R0U[n - n1]);
        }
        for (int l = 1; l <= spec.D; ++l) {
            const auto& t = spec.term(l);
            const int j = n + t.delta - t.d;
            if (j <= 0) continue;
            const std::int64_t ff = falling_factorial(j, t.delta);
            if (ff == 0) continue;
            const cx c = std::pow(eps, spec.eps_power(l)) * static_cast<double>(ff);
            rhs += c * apply_symbol(t.R, s.coeffs[j]);
        }
        if (n >= 1) {
            rhs += pref * m_convolution(spec.C0(0), R0U[n]);
            rhs += ieps * spec.F(n);
        }
        for (int i = 0; i < g.points; ++i) rhs[i] /= Qm[i] * static_cast<double>(n + 1);
        s.coeffs[n + 1] = rhs;
        R0U[n + 1] = apply_symbol(spec.R0, rhs);
    }
    return s;
}

FormalResidual formal_residual(const EquationSpec& spec, const FormalSeriesT& series, cx eps)
{
    const int N = series.N();
    const MGrid& g = spec.grid;
    TSeries U = series.as_tseries();
    const cx ieps = 1.0 / eps;
    const double isq = 1.0 / std::sqrt(2 * kPi);

    std::vector<TSeries> parts;
    TSeries lhs = U.derivative().symbol(spec.Q);

    const Polynomial Q1 = spec.Q1, Q2 = spec.Q2;
    parts.push_back(TSeries::cauchy(U.symbol(Q1), U.symbol(Q2),
                                    [](const GridFunction& a, const GridFunction& b) { return m_convolution(a, b); },
                                    N)
                        .scaled(ieps * isq));
    for (int l = 1; l <= spec.D; ++l) {
        const auto& t = spec.term(l);
        TSeries d = U;
        for (int q = 0; q < t.delta; ++q) d = d.derivative();
        parts.push_back(d.shift(t.d).symbol(t.R).scaled(std::pow(eps, spec.eps_power(l))));
    }
    TSeries C0(g, N);
    for (int n = 0; n <= std::min(N, spec.max_C0_order()); ++n) C0[n] = spec.C0(n);
    parts.push_back(TSeries::cauchy(C0, U.symbol(spec.R0),
                                    [](const GridFunction& a, const GridFunction& b) { return m_convolution(a, b); },
                                    N)
                        .scaled(ieps * isq));
    TSeries Fs(g, N);
    for (int n = 1; n <= std::min(N, spec.max_F_order()); ++n) Fs[n] = spec.F(n);
    parts.push_back(Fs.scaled(ieps));

    FormalResidual r;
    for (int n = 0; n < N; ++n) {
        GridFunction diff = lhs[n];
        double scale = e_beta_mu_norm(lhs[n], spec.beta, spec.mu);
        for (const auto& p : parts) {
            diff -= p[n];
            scale = std::max(scale, e_beta_mu_norm(p[n], spec.beta, spec.mu));
        }
        r.residual.push_back(e_beta_mu_norm(diff, spec.beta, spec.mu));
        r.scale.push_back(scale);
    }
    return r;
}

GevreyFit gevrey_rate(const std::vector<double>& norms, int k)
{
    const int N = static_cast<int>(norms.size()) - 1;
    if (N < 8) throw std::invalid_argument("gevrey_rate: need N >= 8");
    std::vector<double> x, y;
    for (int n = N / 2 + 1; n <= N; ++n) {
        if (!(norms[n] > 0)) continue;
        x.push_back(n);
        y.push_back(std::log(norms[n]) - std::lgamma(static_cast<double>(n) / k));
    }
    if (x.size() < 3) throw std::runtime_error("series terminates; Gevrey rate undefined");
    GevreyFit f;
    f.norms = norms;
    LineFit lf = fit_line(x, y);
    f.fit_r2 = lf.r2;
    // Root test on the envelope of the last k orders; the coefficients oscillate with period k.
    f.rho_est = INFINITY;
    for (int n = std::max(N - k + 1, 1); n <= N; ++n)
        if (norms[n] > 0)
            f.rho_est = std::min(f.rho_est, std::exp(-(std::log(norms[n]) - std::lgamma(double(n) / k)) / n));
    const std::size_t h = x.size() / 2;
    LineFit a = fit_line({x.begin(), x.begin() + h + 1}, {y.begin(), y.begin() + h + 1});
    LineFit b = fit_line({x.begin() + h, x.end()}, {y.begin() + h, y.end()});
    f.drift = std::exp(-b.slope) / std::exp(-a.slope) - 1;
    f.divergence_detected = f.drift < 0.15;
    return f;
}

GevreyFit gevrey_rate(const FormalSeriesT& series, int k, double beta, double mu)
{
    std::vector<double> norms(series.N() + 1, 0.0);
    for (int n = 1; n <= series.N(); ++n) norms[n] = e_beta_mu_norm(series.coeffs[n], beta, mu);
    return gevrey_rate(norms, k);
}

}  // namespace bls
