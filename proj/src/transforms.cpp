#include "bls/transforms.hpp"

#include <algorithm>
#include <cmath>

namespace bls {

double choose_direction(cx T, const SectorSpec& sector, int k, double delta1)
{
    const double a = std::arg(T);
    const double off = std::clamp(angle_diff(a, sector.direction), -sector.aperture / 2, sector.aperture / 2);
    const double gamma = sector.direction + off;
    if (std::cos(k * angle_diff(gamma, a)) < delta1) throw DirectionError("T outside summable sector");
    return gamma;
}

namespace {

// Coefficients of P_j(y) with d^j/dT^j e^{-y} = T^{-j} P_j(y) e^{-y}, y = (u/T)^k.
std::vector<std::vector<double>> kernel_polys(int jmax, int k)
{
    std::vector<std::vector<double>> P(jmax + 1);
    P[0] = {1.0};
    for (int j = 0; j < jmax; ++j) {
        std::vector<double> nx(P[j].size() + 1, 0.0);
        for (std::size_t i = 0; i < P[j].size(); ++i) {
            nx[i] += -j * P[j][i];
            nx[i + 1] += k * P[j][i];
            if (i >= 1) nx[i] += -k * static_cast<double>(i) * P[j][i];
        }
        P[j + 1] = nx;
    }
    return P;
}

}  // namespace

std::vector<GridFunction> laplace_mk(const TauMField& w, int k, cx T, int jmax, const LaplaceOptions& opt,
                                     double* tail)
{
    if (T == cx(0)) throw std::invalid_argument("laplace_mk: T must be nonzero");
    const RayGrid& ray = w.ray;
    const double gamma = ray.gamma();
    const int nr = ray.size(), nm = w.nm(), nc = ray.per_panel();
    const double aT = std::abs(T);
    const cx ph = std::polar(1.0, gamma) / T;
    const double c = std::cos(k * angle_diff(gamma, std::arg(T)));
    if (c <= 0) throw DirectionError("laplace_mk: ray outside the convergence sector of T");

    std::vector<double> cuts(ray.breaks().begin(), ray.breaks().end());
    for (int j = -opt.octaves; j <= opt.octaves; ++j) {
        const double x = aT * std::ldexp(1.0, j);
        if (x < ray.r_max()) cuts.push_back(x);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const auto P = kernel_polys(jmax, k);
    std::vector<std::vector<cx>> coef(jmax + 1, std::vector<cx>(nr, cx(0)));
    const QuadRule base = gauss_legendre(opt.nodes, 0, 1);
    std::vector<double> lw(nc);
    const cx front = double(k) * std::polar(1.0, gamma);
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double lo = cuts[s], hi = cuts[s + 1];
        if (hi <= lo) continue;
        for (std::size_t q = 0; q < base.size(); ++q) {
            const double r = lo + (hi - lo) * base.x[q];
            const double wq = (hi - lo) * base.w[q];
            const cx y = std::pow(r * ph, k);
            const cx e = std::exp(-y);
            if (std::abs(e) == 0) continue;
            const int j0 = ray.weights(r, lw.data());
            cx Tj = 1;
            for (int j = 0; j <= jmax; ++j) {
                cx pj = 0;
                for (int i = static_cast<int>(P[j].size()) - 1; i >= 0; --i) pj = pj * y + P[j][i];
                const cx kern = front * wq * pj * e / Tj;
                for (int a = 0; a < nc; ++a) coef[j][j0 + a] += kern * lw[a] / ray.tau(j0 + a);
                Tj *= T;
            }
        }
    }

    std::vector<GridFunction> out(jmax + 1, GridFunction(w.grid));
    for (int j = 0; j <= jmax; ++j)
        for (int i = 0; i < nr; ++i) {
            const cx cj = coef[j][i];
            if (cj == cx(0)) continue;
            for (int m = 0; m < nm; ++m) out[j][m] += cj * w.at(i, m);
        }

    // Tail beyond R_max from the last panel's size and the kernel decay.
    double gmax = 0;
    for (int i = nr - nc; i < nr; ++i)
        for (int m = 0; m < nm; ++m) gmax = std::max(gmax, std::abs(w.at(i, m)) / ray.r(i));
    const double R = ray.r_max();
    const double x = R / aT;
    const double tb = k * gmax * aT * std::exp(-c * std::pow(x, k)) / (c * k * std::pow(x, k - 1));
    if (tail) *tail = tb;
    double scale = 0;
    for (int m = 0; m < nm; ++m) scale = std::max(scale, std::abs(out[0][m]));
    if (tb > opt.tail_tol * std::max(scale, 1e-300) && tb > 1e-300)
        throw DirectionError("laplace_mk: tail bound above tolerance, increase R_max");
    return out;
}

SectorSolution::SectorSolution(const EquationSpec& spec, const CoveringPlan& plan, int p, cx eps,
                               const SectorOptions& opt)
    : spec_(&spec), p_(p), eps_(eps), k_(spec.k), delta1_(plan.delta1), T_(plan.T), S_(plan.S.at(p)),
      lopt_(opt.laplace)
{
    if (!plan.E.at(p).contains(eps, 1e-12)) throw DirectionError("eps outside E_p");
    h_prime_ = std::min(plan.T.outer_radius, opt.h_margin * std::pow(delta1_ / (2 * spec.nu), 1.0 / k_));
    beta_prime_ = opt.beta_ratio * spec.beta;
    const double gamma = choose_direction(eps * std::polar(1.0, T_.direction), S_, k_, delta1_);
    sol_ = std::make_shared<BorelSolution>(fixed_point_solve(spec, eps, gamma, opt.solver, &plan.reports.at(p)));
}

bool SectorSolution::in_domain(cx t) const
{
    if (t == cx(0) || std::abs(t) > h_prime_ * (1 + 1e-12)) return false;
    if (!T_.contains(t, 1e-12)) return false;
    return std::cos(k_ * angle_diff(gamma(), std::arg(eps_ * t))) >= delta1_ - 1e-12;
}

std::vector<GridFunction> SectorSolution::U_derivs(cx t, int jmax) const
{
    if (!in_domain(t)) throw DirectionError("eps t outside the sector of summation");
    return laplace_mk(sol_->field, k_, eps_ * t, jmax, lopt_);
}

cx SectorSolution::eval(cx t, cx z, int dt, const Polynomial* P) const
{
    if (std::abs(z.imag()) > beta_prime_ * (1 + 1e-12)) throw DirectionError("z outside the strip H_beta'");
    const auto U = U_derivs(t, dt);
    GridFunction f = U[dt];
    if (P) f = apply_symbol(*P, f);
    return std::pow(eps_, dt) * fourier_inverse(f, {z}, spec_->beta)[0];
}

}  // namespace bls
