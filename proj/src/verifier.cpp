#include "bls/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bls {

namespace {

cx finv(const GridFunction& f, cx z, double beta) { return fourier_inverse(f, {z}, beta)[0]; }

double factorial(int n) { return std::tgamma(n + 1.0); }

double binom(int n, int r) { return factorial(n) / (factorial(r) * factorial(n - r)); }

}  // namespace

cx c0_value(const EquationSpec& spec, cx eps, cx t, cx z)
{
    cx s = 0, Tn = 1;
    for (int n = 0; n <= spec.max_C0_order(); ++n) {
        s += finv(spec.coeff_series[n], z, spec.beta) * Tn;
        Tn *= eps * t;
    }
    return s;
}

cx f_value(const EquationSpec& spec, cx eps, cx t, cx z)
{
    cx s = 0, Tn = eps * t;
    for (int n = 1; n <= spec.max_F_order(); ++n) {
        s += finv(spec.forcing_series[n - 1], z, spec.beta) * Tn;
        Tn *= eps * t;
    }
    return s;
}

namespace {

// Quantities entering the equation at one (t, z): index 0 Q d_t u, 1 Q1 u, 2 Q2 u, 3 R0 u, 4.. R_l d_t^{delta_l} u, last u.
std::vector<cx> equation_terms(const SectorSolution& sol, const EquationSpec& spec, cx t, cx z)
{
    int jmax = 1;
    for (const auto& term : spec.terms) jmax = std::max(jmax, term.delta);
    const auto U = sol.U_derivs(t, jmax);
    const cx eps = sol.eps();
    const double b = spec.beta;
    std::vector<cx> q;
    q.push_back(eps * finv(apply_symbol(spec.Q, U[1]), z, b));
    q.push_back(finv(apply_symbol(spec.Q1, U[0]), z, b));
    q.push_back(finv(apply_symbol(spec.Q2, U[0]), z, b));
    q.push_back(finv(apply_symbol(spec.R0, U[0]), z, b));
    for (const auto& term : spec.terms)
        q.push_back(std::pow(eps, term.delta) * finv(apply_symbol(term.R, U[term.delta]), z, b));
    q.push_back(finv(U[0], z, b));
    return q;
}

}  // namespace

ResidualReport pde_residual(const SectorSolution& sol, const EquationSpec& spec,
                            const std::vector<std::pair<cx, cx>>& samples)
{
    ResidualReport r;
    const cx eps = sol.eps();
    for (const auto& [t, z] : samples) {
        if (!sol.in_domain(t) || std::abs(z.imag()) > sol.beta_prime()) throw DirectionError("sample outside domain");
        const auto q = equation_terms(sol, spec, t, z);
        std::vector<cx> parts;
        parts.push_back(q[1] * q[2]);
        for (int l = 1; l <= spec.D; ++l) {
            const auto& term = spec.term(l);
            parts.push_back(std::pow(eps, term.Delta) * std::pow(t, term.d) * q[3 + l]);
        }
        parts.push_back(c0_value(spec, eps, t, z) * q[3]);
        const cx f = f_value(spec, eps, t, z);
        parts.push_back(f);
        cx res = q[0];
        r.term_scale = std::max(r.term_scale, std::abs(q[0]));
        for (const cx& p : parts) {
            res -= p;
            r.term_scale = std::max(r.term_scale, std::abs(p));
        }
        r.max_residual = std::max(r.max_residual, std::abs(res));
        r.forcing_scale = std::max(r.forcing_scale, std::abs(f));
    }
    return r;
}

std::vector<std::pair<cx, cx>> sample_grid(const SectorSpec& T, double h, double zmax, int nt, int nz)
{
    std::vector<std::pair<cx, cx>> s;
    for (int i = 0; i < nt; ++i) {
        const cx t = std::polar(h * (i + 1) / nt, T.direction);
        for (int j = 0; j < nz; ++j) {
            const double z = nz == 1 ? 0.0 : zmax * (-1 + 2.0 * j / (nz - 1));
            s.emplace_back(t, cx(z, 0));
        }
    }
    return s;
}

FlatnessReport flatness_probe(const CoveringPlan& plan, int p, const EquationSpec& spec, const FlatnessOptions& opt)
{
    if (opt.n_eps < 6) throw std::invalid_argument("flatness_probe: n_eps must be >= 6");
    const int q = (p + 1) % plan.count;
    FlatnessReport rep;
    rep.p = p;
    const double dir = plan.overlap_centre(p);
    const double hi = opt.eps_hi > 0 ? opt.eps_hi : plan.eps0 / 2;
    for (int j = 0; j < opt.n_eps; ++j) {
        const cx eps = std::polar(hi * std::pow(opt.ratio, j), dir);
        if (!plan.E[p].contains(eps, 1e-12) || !plan.E[q].contains(eps, 1e-12))
            throw std::logic_error("flatness_probe: eps sample outside the overlap");
        const SectorSolution up(spec, plan, p, eps, opt.sector);
        const SectorSolution uq(spec, plan, q, eps, opt.sector);
        const double h2 = opt.h_ratio * std::min(up.h_prime(), uq.h_prime());
        double diff = 0, scale = 0;
        for (const auto& [t, z] : sample_grid(plan.T, h2, opt.zmax)) {
            const cx a = up.eval(t, z), b = uq.eval(t, z);
            diff = std::max(diff, std::abs(b - a));
            scale = std::max(scale, std::max(std::abs(a), std::abs(b)));
        }
        rep.eps_samples.push_back(eps);
        rep.diffs.push_back(diff);
        rep.scales.push_back(scale);
    }

    std::vector<double> xk, xl, y;
    const int k = plan.k;
    for (std::size_t j = 0; j < rep.diffs.size(); ++j) {
        if (!(rep.diffs[j] > opt.noise * rep.scales[j])) continue;
        const double a = std::abs(rep.eps_samples[j]);
        xk.push_back(-std::pow(a, -k));
        xl.push_back(k > 1 ? -std::pow(a, -(k - 1)) : std::log(a));
        y.push_back(std::log(rep.diffs[j]));
    }
    if (y.empty()) {
        rep.flat_beyond_measurement = true;
        rep.pass = true;
        rep.status = "flat beyond measurement";
        return rep;
    }
    if (static_cast<int>(y.size()) < 6) {
        rep.status = "too few measurable samples";
        return rep;
    }
    const LineFit fk = fit_line(xk, y);
    const LineFit fl = fit_line(xl, y);
    rep.fitted = true;
    rep.M = fk.slope;
    rep.logK = fk.intercept;
    rep.r2 = fk.r2;
    rep.r2_lower = fl.r2;
    rep.prefers_k = fk.r2 > fl.r2;
    rep.pass = rep.M > 0 && rep.r2 >= opt.r2_min && rep.prefers_k;
    rep.status = rep.pass ? "fitted" : "fit rejected";
    return rep;
}

RSReport rs_check(const CoveringPlan& plan, const EquationSpec& spec, const FlatnessOptions& opt)
{
    RSReport rep;
    rep.bounded = true;
    const double hi = opt.eps_hi > 0 ? opt.eps_hi : plan.eps0 / 2;
    for (int p = 0; p < plan.count; ++p) {
        std::vector<double> norms, x, y;
        for (int j = 0; j < 5; ++j) {
            const cx eps = std::polar(hi * std::pow(0.7, j), plan.centre(p));
            const SectorSolution s(spec, plan, p, eps, opt.sector);
            double sup = 0;
            for (const auto& [t, z] : sample_grid(plan.T, s.h_prime() * opt.h_ratio, opt.zmax))
                sup = std::max(sup, std::abs(s.eval(t, z)));
            norms.push_back(sup);
            if (sup > 0) {
                x.push_back(std::log(std::abs(eps)));
                y.push_back(std::log(sup));
            }
        }
        rep.sup_norms.push_back(norms);
        rep.sup_norms_by_sector.push_back(*std::max_element(norms.begin(), norms.end()));
        // Growth as eps -> 0 shows up as a negative slope in log|eps|.
        if (x.size() >= 2 && fit_line(x, y).slope < -0.1) {
            rep.bounded = false;
            if (rep.failure.empty()) rep.failure = "sector " + std::to_string(p) + " grows as eps -> 0";
        }
    }
    rep.flat = true;
    for (int p = 0; p < plan.count; ++p) {
        rep.pairs.push_back(flatness_probe(plan, p, spec, opt));
        if (!rep.pairs.back().pass) {
            rep.flat = false;
            if (rep.failure.empty())
                rep.failure = "pair (" + std::to_string(p) + "," + std::to_string((p + 1) % plan.count) +
                              "): " + rep.pairs.back().status;
        }
    }
    rep.pass = rep.bounded && rep.flat;
    return rep;
}

GevreyReport gevrey_expansion(const CoveringPlan& plan, const EquationSpec& spec, const GevreyOptions& opt)
{
    if (opt.n_max < 1 || opt.n_max > 4) throw std::invalid_argument("gevrey_expansion: n_max must be in [1, 4]");
    if (opt.ladder < opt.n_max + 2) throw std::invalid_argument("gevrey_expansion: ladder too short");
    GevreyReport rep;
    const int S = plan.count, nq = 5 + spec.D;
    rep.h.assign(S, {});
    std::vector<std::vector<std::vector<cx>>> deriv(S);  // [p][quantity*samples + s][m] Taylor derivatives
    double usc = 0;
    std::vector<std::vector<double>> epsmod(S);
    std::vector<std::vector<std::vector<cx>>> uval(S);  // [p][j][s]

    for (int p = 0; p < S; ++p) {
        std::vector<cx> eps;
        for (int j = 0; j < opt.ladder; ++j) eps.push_back(std::polar(opt.eps_hi * std::pow(opt.ratio, j), plan.centre(p)));
        std::vector<std::vector<cx>> vals;  // [j][quantity*ns + s]
        for (const cx& e : eps) {
            const SectorSolution sol(spec, plan, p, e, opt.sector);
            if (rep.samples.empty()) rep.samples = sample_grid(plan.T, opt.h_ratio * sol.h_prime(), opt.zmax);
            std::vector<cx> row;
            std::vector<std::vector<cx>> per_sample;
            for (const auto& [t, z] : rep.samples) {
                if (!sol.in_domain(t)) throw DirectionError("gevrey_expansion: sample outside a sector");
                per_sample.push_back(equation_terms(sol, spec, t, z));
            }
            row.resize(static_cast<size_t>(nq) * rep.samples.size());
            std::vector<cx> us;
            for (std::size_t s = 0; s < rep.samples.size(); ++s) {
                for (int c = 0; c < nq; ++c) row[c * rep.samples.size() + s] = per_sample[s][c];
                us.push_back(per_sample[s][nq - 1]);
                usc = std::max(usc, std::abs(per_sample[s][nq - 1]));
            }
            uval[p].push_back(us);
            epsmod[p].push_back(std::abs(e));
            vals.push_back(row);
        }
        const std::size_t nv = vals[0].size();
        deriv[p].assign(nv, {});
        for (std::size_t v = 0; v < nv; ++v) {
            std::vector<cx> y;
            for (std::size_t j = 0; j < eps.size(); ++j) y.push_back(vals[j][v]);
            const auto c = poly_fit_exact(eps, y);
            std::vector<cx> d(opt.n_max + 1);
            for (int m = 0; m <= opt.n_max; ++m) d[m] = c[m] * factorial(m);
            deriv[p][v] = d;
        }
        const std::size_t ns = rep.samples.size();
        rep.h[p].assign(opt.n_max + 1, std::vector<cx>(ns));
        for (int m = 0; m <= opt.n_max; ++m)
            for (std::size_t s = 0; s < ns; ++s) rep.h[p][m][s] = deriv[p][(nq - 1) * ns + s][m];
    }

    const std::size_t ns = rep.samples.size();
    rep.cross_sector.assign(opt.n_max + 1, 0);
    rep.scale.assign(opt.n_max + 1, usc);
    rep.indeterminate.assign(opt.n_max + 1, false);
    for (int m = 0; m <= opt.n_max; ++m)
        for (int p = 0; p < S; ++p)
            for (std::size_t s = 0; s < ns; ++s) {
                rep.scale[m] = std::max(rep.scale[m], std::abs(rep.h[p][m][s]));
                rep.cross_sector[m] =
                    std::max(rep.cross_sector[m], std::abs(rep.h[p][m][s] - rep.h[(p + 1) % S][m][s]));
            }

    rep.remainder_slope.assign(S, {});
    for (int p = 0; p < S; ++p)
        for (int n = 1; n <= opt.n_max; ++n) {
            std::vector<double> x, y;
            for (std::size_t j = 0; j < epsmod[p].size(); ++j) {
                const cx e = std::polar(epsmod[p][j], plan.centre(p));
                double r = 0;
                for (std::size_t s = 0; s < ns; ++s) {
                    cx part = 0;
                    for (int m = 0; m < n; ++m) part += rep.h[p][m][s] * std::pow(e, m) / factorial(m);
                    r = std::max(r, std::abs(uval[p][j][s] - part));
                }
                if (r > opt.noise * usc) {
                    x.push_back(std::log(epsmod[p][j]));
                    y.push_back(std::log(r));
                }
            }
            if (x.size() < 3) {
                rep.indeterminate[n] = true;
                rep.remainder_slope[p].push_back(std::nan(""));
            } else {
                rep.remainder_slope[p].push_back(fit_line(x, y).slope);
            }
        }

    // Recursion for h_m at order m, from the Taylor coefficients of each equation quantity.
    rep.recursion_residual.assign(opt.n_max, 0);
    rep.recursion_scale.assign(opt.n_max, 0);
    for (int m = 0; m < opt.n_max; ++m)
        for (int p = 0; p < S; ++p)
            for (std::size_t s = 0; s < ns; ++s) {
                auto D = [&](int c, int a) { return deriv[p][c * ns + s][a]; };
                const cx t = rep.samples[s].first, z = rep.samples[s].second;
                std::vector<cx> parts;
                cx quad = 0, conv = 0;
                for (int a = 0; a <= m; ++a) {
                    quad += binom(m, a) * D(1, a) * D(2, m - a);
                    // d^a/deps^a c_0 at eps = 0 is a! C_{0,a} t^a.
                    if (a <= spec.max_C0_order())
                        conv += binom(m, a) * factorial(a) * finv(spec.coeff_series[a], z, spec.beta) * std::pow(t, a) *
                                D(3, m - a);
                }
                parts.push_back(quad);
                parts.push_back(conv);
                for (int l = 1; l <= spec.D; ++l) {
                    const auto& term = spec.term(l);
                    if (term.Delta > m) continue;
                    parts.push_back(factorial(m) / factorial(m - term.Delta) * std::pow(t, term.d) *
                                    D(3 + l, m - term.Delta));
                }
                if (m >= 1 && m <= spec.max_F_order())
                    parts.push_back(factorial(m) * finv(spec.forcing_series[m - 1], z, spec.beta) * std::pow(t, m));
                cx res = D(0, m);
                double sc = std::abs(res);
                for (const cx& v : parts) {
                    res -= v;
                    sc = std::max(sc, std::abs(v));
                }
                rep.recursion_residual[m] = std::max(rep.recursion_residual[m], std::abs(res));
                rep.recursion_scale[m] = std::max(rep.recursion_scale[m], sc);
            }
    for (double v : rep.recursion_scale) rep.recursion_term_scale = std::max(rep.recursion_term_scale, v);
    return rep;
}

}  // namespace bls
