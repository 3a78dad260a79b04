#include "bls/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bls {

GridFunction EquationSpec::C0(int n) const
{
    if (n >= 0 && n < static_cast<int>(coeff_series.size())) return coeff_series[n];
    return GridFunction(grid);
}

GridFunction EquationSpec::F(int n) const
{
    if (n >= 1 && n <= static_cast<int>(forcing_series.size())) return forcing_series[n - 1];
    return GridFunction(grid);
}

int EquationSpec::eps_power(int l) const
{
    const auto& t = term(l);
    return t.Delta - t.d + t.delta - 1;
}

double angle_diff(double a, double b)
{
    double d = std::remainder(a - b, 2 * kPi);
    if (d <= -kPi) d += 2 * kPi;
    return d;
}

bool SectorSpec::contains(cx z, double slack) const
{
    const double r = std::abs(z);
    if (r < inner_radius * (1 - slack)) return false;
    if (!unbounded && r > outer_radius * (1 + slack)) return false;
    if (r == 0) return inner_radius == 0;
    return std::abs(angle_diff(std::arg(z), direction)) <= 0.5 * aperture + slack;
}

const HypothesisFlag* HypothesisReport::find(const std::string& name) const
{
    for (const auto& f : flags)
        if (f.name == name) return &f;
    return nullptr;
}

void HypothesisReport::add(std::string name, bool pass, std::string witness)
{
    for (auto& f : flags) {
        if (f.name == name) {
            if (f.pass && !pass) {
                f.pass = false;
                f.witness = std::move(witness);
            }
            overall = overall && pass;
            return;
        }
    }
    flags.push_back({std::move(name), pass, std::move(witness)});
    overall = overall && pass;
}

static std::string lw(int l) { return "l=" + std::to_string(l); }

HypothesisReport validate_structure(const EquationSpec& spec, const MGrid& grid)
{
    if (spec.D != static_cast<int>(spec.terms.size()))
        throw StructureError("D = " + std::to_string(spec.D) + " but " + std::to_string(spec.terms.size()) +
                             " operator terms were given");
    if (grid.points < 3) throw StructureError("empty m grid");

    HypothesisReport rep;
    const int k = spec.k, D = spec.D;
    {
        bool ok = k >= 1 && D >= 2;
        std::string w;
        for (int l = 1; l <= D && ok; ++l) {
            const auto& t = spec.term(l);
            if (t.d < 0 || t.delta < 1 || t.Delta < 0) {
                ok = false;
                w = lw(l);
            }
        }
        if (!(spec.beta > 0 && spec.nu > 0 && spec.rho > 0 && spec.eps0 > 0 && spec.T0 > 0 && spec.K0 > 0)) {
            ok = false;
            w = "norm parameters must be positive";
        }
        rep.add(hyp::kRanges, ok, w);
        if (!ok) return rep;
    }

    rep.add(hyp::kDelta1, spec.term(1).delta == 1, "delta_1=" + std::to_string(spec.term(1).delta));
    for (int l = 1; l < D; ++l)
        rep.add(hyp::kDeltaIncreasing, spec.term(l).delta < spec.term(l + 1).delta, lw(l));
    rep.add(hyp::kDeltaD2, spec.deltaD() >= 2, "delta_D=" + std::to_string(spec.deltaD()));

    const auto& TD = spec.terms.back();
    rep.add(hyp::kdD, TD.d == (TD.delta - 1) * (k + 1),
            "d_D=" + std::to_string(TD.d) + " expected " + std::to_string((TD.delta - 1) * (k + 1)));
    for (int l = 1; l < D; ++l) {
        const auto& t = spec.term(l);
        rep.add(hyp::kdl, t.d > (t.delta - 1) * (k + 1), lw(l));
    }
    rep.add(hyp::kDeltaDForm, TD.Delta == TD.d - TD.delta + 1,
            "Delta_D=" + std::to_string(TD.Delta) + " expected " + std::to_string(TD.d - TD.delta + 1));

    const int dQ = spec.Q.degree(), dRD = spec.RD().degree();
    rep.add(hyp::kDegQ, dQ >= dRD, "deg Q=" + std::to_string(dQ) + ", deg R_D=" + std::to_string(dRD));
    for (int l = 1; l < D; ++l) rep.add(hyp::kDegRl, dRD >= spec.term(l).R.degree(), lw(l));
    rep.add(hyp::kDegQ1, dRD >= spec.Q1.degree());
    rep.add(hyp::kDegQ2, dRD >= spec.Q2.degree());

    auto check_nonzero = [&](const Polynomial& P, const char* name) {
        bool ok = !P.is_zero();
        std::string w;
        for (int i = 0; i < grid.points && ok; ++i) {
            if (std::abs(P.symbol(grid.m(i))) <= 1e-300) {
                ok = false;
                w = "m=" + std::to_string(grid.m(i));
            }
        }
        rep.add(name, ok, w);
    };
    check_nonzero(spec.Q, hyp::kQnonzero);
    check_nonzero(spec.RD(), hyp::kRDnonzero);

    rep.add(hyp::kMu, spec.mu > std::max(spec.Q1.degree(), spec.Q2.degree()) + 1, "mu=" + std::to_string(spec.mu));

    if (spec.deltaD() >= 1) {
        auto dlk = std::vector<int>(D);
        for (int l = 1; l <= D; ++l) {
            const auto& t = spec.term(l);
            dlk[l - 1] = t.d + k + 1 - t.delta * (k + 1);
        }
        for (int l = 1; l < D; ++l) {
            const auto& t = spec.term(l);
            rep.add(hyp::kDeltaGap, k * spec.deltaD() >= k * t.delta + 2, lw(l));
            const int bal = t.Delta - t.d + t.delta + k * (t.delta - spec.deltaD()) + dlk[l - 1];
            rep.add(hyp::kEpsBalance, bal >= 0, lw(l) + " value=" + std::to_string(bal));
        }
    }

    if (rep.find(hyp::kQnonzero)->pass && rep.find(hyp::kRDnonzero)->pass) {
        try {
            auto s = quotient_sector(spec, grid);
            std::ostringstream os;
            os << "direction=" << s.direction << " aperture=" << s.aperture << " r=" << s.inner_radius;
            rep.add(hyp::kQuotient, true, os.str());
        } catch (const std::exception& e) {
            rep.add(hyp::kQuotient, false, e.what());
        }
    } else {
        rep.add(hyp::kQuotient, false, "quotient undefined");
    }

    {
        bool ok = true;
        std::string w;
        for (int n = 1; n <= std::max(spec.max_C0_order(), spec.max_F_order()); ++n) {
            const double bound = spec.K0 * std::pow(spec.T0, -n);
            const double c = n <= spec.max_C0_order() ? e_beta_mu_norm(spec.C0(n), spec.beta, spec.mu) : 0;
            const double f = e_beta_mu_norm(spec.F(n), spec.beta, spec.mu);
            if (c > bound || f > bound) {
                ok = false;
                w = "n=" + std::to_string(n);
                break;
            }
        }
        rep.add(hyp::kSeriesBounds, ok, w);
    }
    return rep;
}

std::vector<int> derived_indices(const EquationSpec& spec)
{
    std::vector<int> out;
    for (int l = 1; l <= static_cast<int>(spec.terms.size()); ++l) {
        const auto& t = spec.term(l);
        const int v = t.d + spec.k + 1 - t.delta * (spec.k + 1);
        if (v < 0) throw StructureError("negative d_{l,k} at l=" + std::to_string(l));
        out.push_back(v);
    }
    return out;
}

SectorSpec quotient_sector(const EquationSpec& spec, const MGrid& grid)
{
    const Polynomial& RD = spec.RD();
    std::vector<cx> q;
    double rmin = INFINITY;
    for (int i = 0; i < grid.points; ++i) {
        const cx r = RD.symbol(grid.m(i));
        if (r == cx(0)) throw std::domain_error("R_D(im) vanishes on the grid");
        const cx v = spec.Q.symbol(grid.m(i)) / r;
        rmin = std::min(rmin, std::abs(v));
        q.push_back(v);
    }
    if (!(rmin > 1e-12)) throw std::domain_error("quotient Q(im)/R_D(im) approaches 0");
    // Limits as m -> +-inf from the leading coefficients.
    const int gap = spec.Q.degree() - RD.degree();
    const double lead = std::arg(spec.Q.leading() / RD.leading());
    std::vector<double> extra = {lead + gap * kPi / 2, lead - gap * kPi / 2};

    const cx ref = q[grid.centre()];
    double lo = 0, hi = 0;
    for (const cx& v : q) {
        const double a = std::arg(v / ref);
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    for (double a0 : extra) {
        const double a = angle_diff(a0, std::arg(ref));
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    if (hi - lo >= kPi) throw std::domain_error("arg range of Q/R_D is >= pi");
    SectorSpec s;
    s.direction = std::arg(ref) + 0.5 * (lo + hi);
    s.direction = angle_diff(s.direction, 0);
    s.aperture = hi - lo;
    s.inner_radius = rmin;
    s.unbounded = true;
    return s;
}

}  // namespace bls
