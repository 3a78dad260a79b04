#include "bls/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bls {

cx P_m(const EquationSpec& spec, double m, cx tau)
{
    const int k = spec.k, dD = spec.deltaD();
    return spec.Q.symbol(m) * static_cast<double>(k) -
           spec.RD().symbol(m) * std::pow(static_cast<double>(k), dD) * std::pow(tau, (dD - 1) * k);
}

std::vector<cx> roots_qlm(const EquationSpec& spec, double m)
{
    const int k = spec.k, dD = spec.deltaD();
    const cx Q = spec.Q.symbol(m), R = spec.RD().symbol(m);
    if (Q == cx(0) || R == cx(0)) throw std::domain_error("roots_qlm: Q(im) or R_D(im) vanishes");
    const int n = (dD - 1) * k;
    if (n < 1) throw std::domain_error("roots_qlm: delta_D must be >= 2");
    const double kd = std::pow(static_cast<double>(k), dD - 1);
    const double mod = std::pow(std::abs(Q) / (std::abs(R) * kd), 1.0 / n);
    const double a = std::arg(Q / (R * kd));
    std::vector<cx> q(n);
    for (int l = 0; l < n; ++l) q[l] = std::polar(mod, a / n + 2 * kPi * l / n);
    return q;
}

RootSet root_set(const EquationSpec& spec, const MGrid& grid)
{
    RootSet rs;
    const double kD = std::pow(static_cast<double>(spec.k), spec.deltaD());
    for (int i = 0; i < grid.points; ++i) {
        const double m = grid.m(i);
        rs.m.push_back(m);
        rs.q.push_back(roots_qlm(spec, m));
        const double scale = std::abs(spec.RD().symbol(m)) * kD;
        for (const cx& q : rs.q.back())
            rs.max_residual = std::max(rs.max_residual, std::abs(P_m(spec, m, q)) / (scale * std::max(1.0, std::pow(std::abs(q), (spec.deltaD() - 1) * spec.k))));
    }
    return rs;
}

namespace {

// Root directions as |m| -> infinity.
std::vector<double> limit_root_args(const EquationSpec& spec)
{
    const int k = spec.k, dD = spec.deltaD(), n = (dD - 1) * k;
    const int gap = spec.Q.degree() - spec.RD().degree();
    const double lead = std::arg(spec.Q.leading() / spec.RD().leading());
    std::vector<double> out;
    for (int s : {1, -1}) {
        const double a = lead + s * gap * kPi / 2;
        for (int l = 0; l < n; ++l) out.push_back(a / n + 2 * kPi * l / n);
    }
    return out;
}

double sin_sep(double a, double b)
{
    const double d = std::abs(angle_diff(a, b));
    return d >= kPi / 2 ? 1.0 : std::sin(d);
}

}  // namespace

DirectionReport direction_admissibility(const EquationSpec& spec, double d, double aperture, double rho,
                                        const MGrid& grid, int tau_samples)
{
    DirectionReport rep;
    rep.d = d;
    rep.aperture = aperture;
    const int k = spec.k, dD = spec.deltaD();
    const int nroots = (dD - 1) * k;
    const RootSet rs = root_set(spec, grid);

    double qmin = INFINITY, qmax = 0;
    for (const auto& qs : rs.q)
        for (const cx& q : qs) {
            qmin = std::min(qmin, std::abs(q));
            qmax = std::max(qmax, std::abs(q));
        }
    rep.min_root_modulus = qmin;

    std::vector<cx> taus;
    taus.push_back(0);
    const int nrad = 12;
    for (int a = 0; a < tau_samples; ++a) {
        const double ang = 2 * kPi * a / tau_samples;
        for (int j = 1; j <= nrad; ++j) taus.push_back(std::polar(rho * j / nrad, ang));
    }
    const int nang = std::max(5, tau_samples / 4);
    const double Rbig = 50 * std::max(qmax, rho);
    for (int a = 0; a < nang; ++a) {
        const double ang = d - aperture / 2 + aperture * a / (nang - 1);
        for (int j = 0; j < tau_samples; ++j) {
            const double r = rho * std::pow(Rbig / rho, static_cast<double>(j) / (tau_samples - 1));
            taus.push_back(std::polar(r, ang));
        }
    }

    double rQR = 1;
    try {
        rQR = quotient_sector(spec, grid).inner_radius;
    } catch (const std::exception& e) {
        rep.reason = std::string("quotient sector: ") + e.what();
    }
    const double rpow = std::pow(rQR, 1.0 / nroots);

    double M1 = INFINITY, CP = INFINITY;
    std::vector<double> M2l(nroots, INFINITY);
    for (std::size_t i = 0; i < rs.m.size(); ++i) {
        const double m = rs.m[i];
        const double Rabs = std::abs(spec.RD().symbol(m));
        for (const cx& tau : taus) {
            const double at = std::abs(tau);
            for (int l = 0; l < nroots; ++l) {
                const cx q = rs.q[i][l];
                const double dist = std::abs(tau - q);
                M1 = std::min(M1, dist / (1 + at));
                M2l[l] = std::min(M2l[l], dist / std::abs(q));
            }
            const double den = Rabs * std::pow(1 + std::pow(at, k), dD - 1 - 1.0 / k) * rpow;
            CP = std::min(CP, std::abs(P_m(spec, m, tau)) / den);
        }
    }
    // Exact nearest point of the closed sector to each root, so a root on the sector is never stepped over.
    for (std::size_t i = 0; i < rs.m.size(); ++i)
        for (int l = 0; l < nroots; ++l) {
            const cx q = rs.q[i][l];
            const double aq = std::abs(q);
            const double phi = std::abs(angle_diff(std::arg(q), d)) - aperture / 2;
            double dist = aq, foot = 0;
            if (phi <= 0) {
                dist = 0;
                foot = aq;
            } else if (phi < kPi / 2) {
                dist = aq * std::sin(phi);
                foot = aq * std::cos(phi);
            }
            M1 = std::min(M1, dist / (1 + foot));
            M2l[l] = std::min(M2l[l], dist / aq);
        }
    // Far roots: the ratios tend to the sine of the angular separation.
    const auto lim = limit_root_args(spec);
    for (int a = 0; a < nang; ++a) {
        const double ang = d - aperture / 2 + aperture * a / (nang - 1);
        for (std::size_t j = 0; j < lim.size(); ++j) {
            const double s = sin_sep(ang, lim[j]);
            M1 = std::min(M1, s);
            M2l[j % nroots] = std::min(M2l[j % nroots], s);
        }
    }
    rep.M1 = M1;
    rep.l0 = static_cast<int>(std::max_element(M2l.begin(), M2l.end()) - M2l.begin());
    rep.M2 = M2l[rep.l0];
    rep.C_P = CP;
    rep.admissible = rep.M1 > kAdmissibleThreshold && rep.M2 > kAdmissibleThreshold && rep.reason.empty();
    if (qmin <= 2 * rho) {
        rep.admissible = false;
        rep.reason = "roots enter 2rho disc";
    } else if (!rep.admissible && rep.reason.empty()) {
        rep.reason = "root too close to the sector";
    }
    return rep;
}

double CoveringPlan::overlap_centre(int p) const
{
    const int q = (p + 1) % count;
    return E[p].direction + 0.5 * angle_diff(E[q].direction, E[p].direction);
}

CoveringPlan build_good_covering(const EquationSpec& spec, int count, double r_T, const CoveringOptions& opt)
{
    const int k = spec.k;
    if (count < 2 || count < 2 * k) throw std::invalid_argument("aperture constraint unsatisfiable");
    const double base = kPi / k;
    const double step = 2 * kPi / count;
    // Opening A must satisfy count*A > 2pi and A < 2*step (no triple overlaps).
    double A = std::max(base + opt.kappa_min, step * (1 + opt.overlap_fraction));
    if (!(A < 2 * step)) throw std::invalid_argument("aperture constraint unsatisfiable");

    CoveringPlan plan;
    plan.k = k;
    plan.count = count;
    plan.kappa = A - base;
    plan.eps0 = spec.eps0;
    plan.T.direction = 0;
    plan.T.aperture = opt.T_aperture;
    plan.T.inner_radius = 0;
    plan.T.outer_radius = r_T;
    plan.T.unbounded = false;

    const double half_S = opt.sd_aperture / 2;
    std::string blocked;
    double max_shift = 0;
    for (int p = 0; p < count; ++p) {
        SectorSpec e;
        e.direction = angle_diff(p * step, 0);
        e.aperture = A;
        e.outer_radius = spec.eps0;
        e.unbounded = false;
        plan.E.push_back(e);

        const double phi = e.direction + plan.T.direction;
        DirectionReport best = direction_admissibility(spec, phi, opt.sd_aperture, spec.rho, spec.grid, opt.tau_samples);
        if (!best.admissible) {
            // Golden-section search on M1 over the angular budget.
            const double budget = half_S;
            double lo = phi - budget, hi = phi + budget;
            const double gr = (std::sqrt(5.0) - 1) / 2;
            auto score = [&](double dd) {
                return direction_admissibility(spec, dd, opt.sd_aperture, spec.rho, spec.grid, opt.tau_samples).M1;
            };
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = score(x1), f2 = score(x2);
            while (hi - lo > 1e-3) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = score(x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = score(x1);
                }
            }
            best = direction_admissibility(spec, 0.5 * (lo + hi), opt.sd_aperture, spec.rho, spec.grid, opt.tau_samples);
            if (!best.admissible)
                blocked += " [" + std::to_string(phi - budget) + ", " + std::to_string(phi + budget) + "]";
        }
        max_shift = std::max(max_shift, std::abs(angle_diff(best.d, phi)));
        plan.dirs.push_back(best.d);
        plan.reports.push_back(best);
        SectorSpec s;
        s.direction = best.d;
        s.aperture = opt.sd_aperture;
        s.unbounded = true;
        plan.S.push_back(s);
    }
    if (!blocked.empty()) throw std::runtime_error("no admissible direction in arcs:" + blocked);

    // theta must contain arg(eps t) for eps in E_p, t in T, and stay below pi/k + aperture(S_d).
    const double need = A + opt.T_aperture + 2 * max_shift + 1e-3;
    plan.theta = std::max(base * opt.theta_factor, need);
    if (!(plan.theta < base + opt.sd_aperture))
        throw std::runtime_error("theta " + std::to_string(plan.theta) + " exceeds pi/k + aperture(S_d)");
    // Worst-case kernel cosine over the associated sector S_{d,theta}.
    const double worst = plan.theta / 2 - half_S;
    plan.delta1 = std::cos(k * std::max(0.0, worst));
    return plan;
}

CoveringCheck verify_covering(const EquationSpec& spec, const CoveringPlan& plan, int angular_samples)
{
    CoveringCheck c;
    auto in_E = [&](int p, double ang) {
        return std::abs(angle_diff(ang, plan.E[p].direction)) < plan.E[p].aperture / 2;
    };
    std::vector<int> shared(plan.count, 0);
    for (int s = 0; s < angular_samples; ++s) {
        const double ang = -kPi + 2 * kPi * (s + 0.5) / angular_samples;
        int cnt = 0;
        for (int p = 0; p < plan.count; ++p) cnt += in_E(p, ang);
        if (cnt == 0) c.covers = false;
        if (cnt >= 3) c.no_triple = false;
        for (int p = 0; p < plan.count; ++p)
            if (in_E(p, ang) && in_E((p + 1) % plan.count, ang)) shared[p]++;
    }
    for (int p = 0; p < plan.count; ++p)
        if (shared[p] == 0) c.pairwise_overlap = false;

    // eps t containment on a polar sample of E_p x T.
    const int na = 21, nr = 5;
    for (int p = 0; p < plan.count; ++p) {
        SectorSpec Sb;
        Sb.direction = plan.dirs[p];
        Sb.aperture = plan.theta;
        Sb.outer_radius = plan.eps0 * plan.T.outer_radius;
        Sb.unbounded = false;
        for (int a = 0; a < na; ++a)
            for (int b = 0; b < na; ++b)
                for (int i = 1; i <= nr; ++i) {
                    const double ea = plan.E[p].direction + plan.E[p].aperture * (a / (na - 1.0) - 0.5) * 0.999;
                    const double ta = plan.T.direction + plan.T.aperture * (b / (na - 1.0) - 0.5) * 0.999;
                    const cx eps = std::polar(plan.eps0 * i / (nr + 1.0), ea);
                    const cx t = std::polar(plan.T.outer_radius * i / (nr + 1.0), ta);
                    if (!Sb.contains(eps * t)) c.containment = false;
                }
    }
    c.min_M1 = INFINITY;
    c.min_M2 = INFINITY;
    for (int p = 0; p < plan.count; ++p) {
        auto r = direction_admissibility(spec, plan.dirs[p], plan.S[p].aperture, spec.rho, spec.grid, 64);
        c.min_M1 = std::min(c.min_M1, r.M1);
        c.min_M2 = std::min(c.min_M2, r.M2);
        if (!r.admissible) c.directions_admissible = false;
    }
    return c;
}

}  // namespace bls
