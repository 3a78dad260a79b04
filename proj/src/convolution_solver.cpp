#include "bls/solver.hpp"

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace bls {

std::vector<long long> expansion_coefficients(int delta, int k)
{
    if (delta < 1 || k < 1) throw std::invalid_argument("expansion_coefficients: delta, k must be >= 1");
    using Q = boost::rational<long long>;
    // Match n^{(delta)} = sum_p A_p B_p(n), B_p(n) = prod_{j<p} (n + jk), at n = -pk where B_q vanishes for q > p.
    auto B = [k](int q, long long n) {
        long long b = 1;
        for (int j = 0; j < q; ++j) b *= n + static_cast<long long>(j) * k;
        return b;
    };
    std::vector<Q> A(delta + 1, Q(0));
    for (int p = 0; p <= delta; ++p) {
        const long long n = -static_cast<long long>(p) * k;
        Q rest(falling_factorial(n, delta));
        for (int q = 0; q < p; ++q) rest -= A[q] * B(q, n);
        A[p] = rest / B(p, n);
    }
    std::vector<long long> out(delta + 1);
    for (int p = 0; p <= delta; ++p) {
        if (A[p].denominator() != 1) throw std::logic_error("expansion_coefficients: non-integer coefficient");
        out[p] = A[p].numerator();
    }
    return out;
}

RayGrid make_ray(const EquationSpec& spec, cx eps, double gamma, const SolverOptions& opt)
{
    const double r_max =
        std::abs(eps) * std::pow(opt.tail_exponent / spec.nu, 1.0 / spec.k) * opt.r_max_scale;
    const double h_max = r_max / opt.panels;
    std::vector<cx> roots;
    if (opt.grade > 0)
        for (int i = 0; i < spec.grid.points; ++i)
            for (const cx& q : roots_qlm(spec, spec.grid.m(i))) roots.push_back(q);
    const cx dir = std::polar(1.0, gamma);
    auto dmin = [&](double a, double b) {
        double d = std::numeric_limits<double>::infinity();
        for (const cx& q : roots) {
            // Distance from q to the segment [a, b] of the ray.
            const double s = std::clamp((q * std::conj(dir)).real(), a, b);
            d = std::min(d, std::abs(q - s * dir));
        }
        return d;
    };
    std::vector<double> breaks{0.0};
    while (breaks.back() < r_max) {
        const double a = breaks.back();
        double w = std::min(h_max, r_max - a);
        while (w > 1e-6 * r_max && w > opt.grade * dmin(a, a + w)) w *= 0.8;
        if (r_max - (a + w) < 0.25 * w) w = r_max - a;
        breaks.push_back(a + w);
        if (static_cast<int>(breaks.size()) - 1 > opt.max_panels)
            throw SolveError("ray passes too close to a root of P_m for the panel budget");
    }
    breaks.back() = r_max;
    return RayGrid(gamma, breaks, opt.per_panel);
}

namespace {

GridFunction series_at(const std::vector<GridFunction>& c, int first, int k, cx tau, const MGrid& g)
{
    GridFunction out(g);
    cx tn = std::pow(tau, first);
    for (std::size_t j = 0; j < c.size(); ++j) {
        const int n = first + static_cast<int>(j);
        out += (tn / gamma_fn(static_cast<double>(n) / k)) * c[j];
        tn *= tau;
    }
    return out;
}

}  // namespace

Inhomogeneous assemble_inhomogeneous(const EquationSpec& spec, const RayGrid& ray)
{
    const MGrid& g = spec.grid;
    Inhomogeneous out{TauMField(ray, g), TauMField(ray, g), 0};
    std::vector<GridFunction> c1;
    for (int n = 1; n <= spec.max_C0_order(); ++n) c1.push_back(spec.coeff_series[n]);
    for (int i = 0; i < ray.size(); ++i) {
        const cx tau = ray.tau(i);
        const GridFunction phi = series_at(c1, 1, spec.k, tau, g);
        const GridFunction psi = series_at(spec.forcing_series, 1, spec.k, tau, g);
        std::copy(phi.v.begin(), phi.v.end(), out.phi.v.begin() + static_cast<long>(i) * g.points);
        std::copy(psi.v.begin(), psi.v.end(), out.psi.v.begin() + static_cast<long>(i) * g.points);
    }
    // Stored series are finite; report what the declared bound K0 T0^{-n} allows beyond them.
    const int n0 = std::max(spec.max_C0_order(), spec.max_F_order()) + 1;
    const double r = ray.r_max();
    double tail = 0;
    for (int n = n0; n < n0 + 200; ++n) {
        const double t = std::exp(std::log(spec.K0) + n * std::log(r / spec.T0) - std::lgamma(double(n) / spec.k));
        tail += t;
        if (t < 1e-18 * std::max(tail, 1e-300)) break;
    }
    out.tail_bound = tail;
    return out;
}

BorelOperator::BorelOperator(const EquationSpec& spec, cx eps, const RayGrid& ray, const SolverOptions& opt)
    : spec_(spec), eps_(eps), ray_(ray), opt_(opt)
{
    if (eps == cx(0)) throw std::invalid_argument("BorelOperator: eps must be nonzero");
    const int nr = ray_.size(), nm = spec_.grid.points, k = spec_.k;
    const MGrid& g = spec_.grid;
    inh_ = assemble_inhomogeneous(spec_, ray_);

    invP_.resize(static_cast<size_t>(nr) * nm);
    min_abs_P_ = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nr; ++i)
        for (int m = 0; m < nm; ++m) {
            const cx P = P_m(spec_, g.m(m), ray_.tau(i));
            min_abs_P_ = std::min(min_abs_P_, std::abs(P));
            invP_[static_cast<size_t>(i) * nm + m] = 1.0 / P;
        }
    if (!(min_abs_P_ > 0)) throw SolveError("admissibility certificate violated");

    auto symbol_row = [&](const Polynomial& P, cx scale) {
        std::vector<cx> c(nm);
        for (int m = 0; m < nm; ++m) c[m] = scale * P.symbol(g.m(m));
        return c;
    };

    // R_D sum, p = 1..delta_D - 1.
    const int dD = spec_.deltaD();
    const auto AD = expansion_coefficients(dD, k);
    for (int p = 1; p <= dD - 1; ++p) {
        if (AD[p] == 0) continue;
        const double c = AD[p] * std::pow(double(k), p) / gamma_fn(dD - p);
        groups_.push_back({symbol_row(spec_.RD(), c), linear_kernel(dD - p, p), kRD});
    }
    // Lower order terms.
    for (int l = 1; l < spec_.D; ++l) {
        const auto& t = spec_.term(l);
        const int dlk = t.d + k + 1 - t.delta * (k + 1);
        const double a = static_cast<double>(dlk) / k;
        const cx e = std::pow(eps_, spec_.eps_power(l));
        groups_.push_back(
            {symbol_row(t.R, e * (std::pow(double(k), t.delta) / gamma_fn(a))), linear_kernel(a, t.delta), kLower});
        const auto Al = expansion_coefficients(t.delta, k);
        for (int p = 1; p <= t.delta - 1; ++p) {
            if (Al[p] == 0) continue;
            const double al = a + t.delta - p;
            groups_.push_back({symbol_row(t.R, e * (Al[p] * std::pow(double(k), p) / gamma_fn(al))),
                               linear_kernel(al, p), kLower});
        }
    }

    pref_quad_ = 1.0 / (eps_ * gamma_fn(1 + 1.0 / k) * std::sqrt(2 * kPi));
    {
        const GridFunction c00 = spec_.C0(0);
        have_c00_ = std::any_of(c00.v.begin(), c00.v.end(), [](cx z) { return z != cx(0); });
    }
    if (have_c00_) Mc00_ = linear_kernel(1 + 1.0 / k, 0);
    have_phi_ = std::any_of(inh_.phi.v.begin(), inh_.phi.v.end(), [](cx z) { return z != cx(0); });

    // psi term in closed form: eps^{-1} sum_n F_n tau^{n+1} / Gamma(1 + (n+1)/k).
    Xpsi_.assign(static_cast<size_t>(nr) * nm, cx(0));
    for (int i = 0; i < nr; ++i) {
        const cx tau = ray_.tau(i);
        for (int n = 1; n <= spec_.max_F_order(); ++n) {
            const cx c = std::pow(tau, n + 1) / (eps_ * gamma_fn(1 + double(n + 1) / k));
            const GridFunction& f = spec_.forcing_series[n - 1];
            for (int m = 0; m < nm; ++m) Xpsi_[static_cast<size_t>(i) * nm + m] += c * f[m];
        }
    }

    // Bilinear tensor.
    const bool need_T = (spec_.Q1.is_zero() || spec_.Q2.is_zero()) ? have_phi_ : true;
    if (need_T) {
        const int nc = ray_.per_panel();
        T_.assign(static_cast<size_t>(nr) * nr * nr, cx(0));
        const QuadRule qt = gauss_jacobi01(opt_.outer_nodes, 1.0 / k);
        const double cut = std::pow(0.5, 1.0 / k);
        const QuadRule qy = gauss_legendre(opt_.inner_nodes, 0, cut);
        std::vector<double> ya(qy.size()), wy(qy.size());
        for (std::size_t p = 0; p < qy.size(); ++p) {
            const double yk = std::pow(qy.x[p], k);
            ya[p] = std::pow(1 - yk, 1.0 / k);
            wy[p] = qy.w[p] * std::pow(1 - yk, 1.0 / k - 1);
        }
        std::vector<double> la(nc), ly(nc);
        for (int i = 0; i < nr; ++i) {
            const double ri = ray_.r(i);
            cx* Ti = T_.data() + static_cast<size_t>(i) * nr * nr;
            const cx c3 = double(k) * k * std::pow(ray_.tau(i), 3);
            for (std::size_t q = 0; q < qt.size(); ++q) {
                const double t = qt.x[q];
                const double g1 = std::pow((1 - std::pow(t, k)) / (1 - t), 1.0 / k);
                const double wt = qt.w[q] * g1 * t;
                for (std::size_t p = 0; p < qy.size(); ++p) {
                    const double w = wt * wy[p];
                    const int ja = ray_.weights(ri * t * ya[p], la.data());
                    const int jy = ray_.weights(ri * t * qy.x[p], ly.data());
                    for (int a = 0; a < nc; ++a)
                        for (int b = 0; b < nc; ++b) {
                            const double v = w * la[a] * ly[b];
                            Ti[static_cast<size_t>(ja + a) * nr + (jy + b)] += v;
                            Ti[static_cast<size_t>(jy + b) * nr + (ja + a)] += v;
                        }
                }
            }
            for (int j = 0; j < nr * nr; ++j) Ti[j] *= c3;
        }
    }
}

std::vector<cx> BorelOperator::linear_kernel(double alpha, int p) const
{
    const int nr = ray_.size(), nc = ray_.per_panel(), k = spec_.k;
    std::vector<cx> M(static_cast<size_t>(nr) * nr, cx(0));
    const QuadRule q = gauss_jacobi01(opt_.linear_nodes, alpha - 1);
    std::vector<double> lw(nc);
    for (int i = 0; i < nr; ++i) {
        const double ri = ray_.r(i);
        const cx pre = ray_pow(ri, ray_.gamma(), k * (alpha - 1 + p)) * double(k);
        for (std::size_t s = 0; s < q.size(); ++s) {
            const double y = q.x[s];
            const double g = alpha == 1 ? 1.0 : std::pow((1 - std::pow(y, k)) / (1 - y), alpha - 1);
            const double wq = q.w[s] * g * std::pow(y, k * p);
            const int j0 = ray_.weights(ri * y, lw.data());
            for (int a = 0; a < nc; ++a) {
                const int j = j0 + a;
                M[static_cast<size_t>(i) * nr + j] += pre * (wq * lw[a] * ri / ray_.r(j));
            }
        }
    }
    return M;
}

TauMField BorelOperator::numerator(const TauMField& w, unsigned terms) const
{
    const int nr = ray_.size(), nm = spec_.grid.points;
    if (w.nr() != nr || w.nm() != nm) throw std::invalid_argument("BorelOperator: field shape mismatch");
    const MGrid& g = spec_.grid;
    const double h = g.h();
    const Exec ex = opt_.exec;
    TauMField X(ray_, g);

    // F_j = w_j / tau_j.
    std::vector<cx> F(w.v.size());
    for (int i = 0; i < nr; ++i) {
        const cx it = 1.0 / ray_.tau(i);
        for (int m = 0; m < nm; ++m) F[static_cast<size_t>(i) * nm + m] = w.at(i, m) * it;
    }
    auto with_symbol = [&](const std::vector<cx>& src, const Polynomial& P) {
        std::vector<cx> out(src.size());
        for (int m = 0; m < nm; ++m) {
            const cx s = P.symbol(g.m(m));
            for (int i = 0; i < nr; ++i) out[static_cast<size_t>(i) * nm + m] = src[static_cast<size_t>(i) * nm + m] * s;
        }
        return out;
    };

    const bool quad = (terms & kQuadratic) && !spec_.Q1.is_zero() && !spec_.Q2.is_zero();
    const bool phi = (terms & kPhi) && have_phi_;
    if (quad || phi) {
        const size_t ns = static_cast<size_t>(nr) * nr * nm;
        std::vector<cx> S(ns, cx(0));
        if (quad) {
            const auto A = with_symbol(F, spec_.Q1);
            const auto B = with_symbol(F, spec_.Q2);
            kernels::pair_convolutions(A.data(), nr, B.data(), nr, nm, h, S.data(), ex);
        }
        if (phi) {
            std::vector<cx> Phi(inh_.phi.v.size());
            for (int i = 0; i < nr; ++i) {
                const cx it = 1.0 / ray_.tau(i);
                for (int m = 0; m < nm; ++m) Phi[static_cast<size_t>(i) * nm + m] = inh_.phi.at(i, m) * it;
            }
            const auto B = with_symbol(F, spec_.R0);
            std::vector<cx> S2(ns);
            kernels::pair_convolutions(Phi.data(), nr, B.data(), nr, nm, h, S2.data(), ex);
            for (size_t j = 0; j < ns; ++j) S[j] += S2[j];
        }
        std::vector<cx> out(X.v.size());
        kernels::tensor_contract(T_.data(), S.data(), nr, nm, out.data(), ex);
        for (size_t j = 0; j < out.size(); ++j) X.v[j] += pref_quad_ * out[j];
    }

    std::vector<cx> Y(X.v.size());
    for (const auto& grp : groups_) {
        if (!(terms & grp.term)) continue;
        kernels::matmul_rows(grp.M.data(), w.v.data(), nr, nr, nm, Y.data(), ex);
        for (int i = 0; i < nr; ++i)
            for (int m = 0; m < nm; ++m) X.at(i, m) += grp.coef[m] * Y[static_cast<size_t>(i) * nm + m];
    }

    if ((terms & kC00) && have_c00_) {
        const GridFunction c00 = spec_.C0(0);
        std::vector<cx> Z(X.v.size());
        for (int i = 0; i < nr; ++i) {
            const GridFunction zi = m_convolution(c00, apply_symbol(spec_.R0, w.row(i)), ex);
            std::copy(zi.v.begin(), zi.v.end(), Z.begin() + static_cast<long>(i) * nm);
        }
        kernels::matmul_rows(Mc00_.data(), Z.data(), nr, nr, nm, Y.data(), ex);
        for (size_t j = 0; j < Y.size(); ++j) X.v[j] += pref_quad_ * Y[j];
    }

    if (terms & kPsi)
        for (size_t j = 0; j < Xpsi_.size(); ++j) X.v[j] += Xpsi_[j];
    return X;
}

TauMField BorelOperator::apply(const TauMField& w, unsigned terms) const
{
    TauMField X = numerator(w, terms);
    for (size_t j = 0; j < X.v.size(); ++j) X.v[j] *= invP_[j];
    return X;
}

BorelSolution fixed_point_solve(const EquationSpec& spec, cx eps, double gamma, const SolverOptions& opt,
                                const DirectionReport* report)
{
    const BorelOperator H(spec, eps, make_ray(spec, eps, gamma, opt), opt);
    return fixed_point_solve(H, spec, opt, report);
}

BorelSolution fixed_point_solve(const BorelOperator& H, const EquationSpec& spec, const SolverOptions& opt,
                                const DirectionReport* report)
{
    if (report && !report->admissible) throw SolveError("direction not admissible: " + report->reason);
    const cx eps = H.eps();
    const int k = spec.k;
    auto norm = [&](const TauMField& w) { return f_d_norm(w, spec.nu, spec.beta, spec.mu, k, eps); };

    BorelSolution sol;
    sol.eps = eps;
    sol.direction = H.ray().gamma();
    TauMField w = H.zero();
    TauMField next = H.apply(w);
    sol.varpi = 4 * norm(next);
    const double floor = 1e-300;
    for (int it = 1;; ++it) {
        const double d = norm(next - w);
        sol.contraction_history.push_back(d);
        w = std::move(next);
        sol.iterations = it;
        if (norm(w) > sol.varpi * (1 + 1e-12)) sol.ball_ok = false;
        const std::size_t n = sol.contraction_history.size();
        if (n >= 2) {
            const double prev = sol.contraction_history[n - 2];
            // Ratios taken at round-off level carry no information.
            if (prev > 1e3 * 1e-16 * std::max(norm(w), floor) && prev > floor) {
                const double ratio = d / prev;
                sol.contraction_factor = std::max(sol.contraction_factor, ratio);
                if (ratio >= 1 && d > opt.tol)
                    throw SolveError("contraction failed — reduce |C_00|, eps0, or increase r_{Q,R_D}");
            }
        }
        if (d < opt.tol) break;
        if (it >= opt.max_iter)
            throw SolveError("contraction failed — reduce |C_00|, eps0, or increase r_{Q,R_D}");
        next = H.apply(w);
    }
    sol.flagged = sol.contraction_factor > 0.95;
    sol.residual = norm(w - H.apply(w));
    sol.norm_f = norm(w);
    sol.field = std::move(w);
    return sol;
}

double disc_consistency(const BorelSolution& sol, const BorelSeries& series, double rho)
{
    const TauMField& w = sol.field;
    double dev = 0, scale = 0;
    for (int i = 0; i < w.nr(); ++i) {
        if (w.ray.r(i) > rho / 2) continue;
        const GridFunction s = series.eval(w.ray.tau(i));
        for (int m = 0; m < w.nm(); ++m) {
            dev = std::max(dev, std::abs(w.at(i, m) - s[m]));
            scale = std::max(scale, std::abs(s[m]));
        }
    }
    if (scale == 0) return dev;
    return dev / scale;
}

double growth_constant(const TauMField& w, double beta, double mu, double nu, int k, cx eps)
{
    return f_d_norm(w, nu, beta, mu, k, eps);
}

GrowthCheck growth_bound_check(const TauMField& w, const TauMField& w_extended, double beta, double mu, double nu,
                               int k, cx eps)
{
    GrowthCheck g;
    g.varpi_d = growth_constant(w, beta, mu, nu, k, eps);
    g.varpi_d_extended = growth_constant(w_extended, beta, mu, nu, k, eps);
    g.pass = std::isfinite(g.varpi_d) && std::isfinite(g.varpi_d_extended) &&
             g.varpi_d_extended < 2 * g.varpi_d + 1e-300 && g.varpi_d < 2 * g.varpi_d_extended + 1e-300;
    return g;
}

ScalingProbe scaling_probe(const EquationSpec& spec, Probe which, const std::vector<double>& eps, double gamma,
                           const SolverOptions& opt)
{
    ScalingProbe out;
    const int k = spec.k;
    std::vector<double> lx, ly;
    for (double e : eps) {
        const cx ec = std::polar(e, gamma);
        const BorelOperator H(spec, ec, make_ray(spec, ec, gamma, opt), opt);
        const MGrid& g = spec.grid;
        TauMField w = H.zero();
        for (int i = 0; i < w.nr(); ++i) {
            const cx x = H.ray().tau(i) / ec;
            const cx a = x * std::exp(0.5 * spec.nu * std::pow(x, k));
            for (int m = 0; m < g.points; ++m) w.at(i, m) = a * std::exp(-g.m(m) * g.m(m));
        }
        auto norm = [&](const TauMField& f) { return f_d_norm(f, spec.nu, spec.beta, spec.mu, k, ec); };
        const double nw = norm(w);
        double r = 0;
        switch (which) {
        case Probe::kernel: {
            const auto M = H.linear_kernel(1 + 1.0 / k, 0);
            TauMField y = H.zero();
            kernels::matmul_rows(M.data(), w.v.data(), w.nr(), w.nr(), w.nm(), y.v.data(), opt.exec);
            r = norm(y) / nw;
            break;
        }
        case Probe::rd_sum:
            r = norm(H.apply(w, kRD)) / nw;
            break;
        case Probe::quadratic:
            r = e * norm(H.apply(w, kQuadratic)) / (nw * nw);
            break;
        case Probe::c00:
            r = e * norm(H.apply(w, kC00)) / nw;
            break;
        }
        out.eps.push_back(e);
        out.ratio.push_back(r);
        lx.push_back(std::log(e));
        ly.push_back(std::log(r));
    }
    const LineFit f = fit_line(lx, ly);
    out.exponent = f.slope;
    out.r2 = f.r2;
    return out;
}

}  // namespace bls
