#include "bls/borel.hpp"
#include "bls/config.hpp"
#include "bls/formal.hpp"
#include "bls/roots.hpp"
#include "bls/solver.hpp"
#include "bls/transforms.hpp"
#include "bls/verifier.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace bls;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kHypothesis = 1, kNumerical = 2, kConfig = 3 };

// Every numerical default of the tool.
struct Defaults {
    int orders = 16;
    int sectors = 5;
    std::vector<double> eps{0.05};
    double tol = 1e-12;
    int threads = 0;
    double r_T = 1.0;
    double zmax = 1.0;
    int nt = 5, nz = 5;
    double flat_hi = 0;  // 0 selects eps0/2
    double flat_ratio = 0.85;
    int flat_n = 6;
    double gevrey_hi = 0.04;
    double gevrey_ratio = 0.8;
    int gevrey_ladder = 6;
    double rel_residual = 1e-6;
};

struct HypothesisFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Run {
    std::string cmd;
    std::string spec_path;
    std::string out = "out";
    Defaults d;
    EquationSpec spec;
    std::string hash;
    json summary;

    void load()
    {
        std::ifstream in(spec_path);
        if (!in) throw ConfigError("cannot open spec file " + spec_path);
        std::stringstream ss;
        ss << in.rdbuf();
        spec = parse_spec(ss.str(), fs::path(spec_path).parent_path().string());
        std::ostringstream params;
        params << std::setprecision(17) << cmd << ' ' << d.orders << ' ' << d.sectors << ' ' << d.tol;
        for (double e : d.eps) params << ' ' << e;
        params << ' ' << d.flat_hi << ' ' << d.flat_ratio;
        hash = config_hash(ss.str(), params.str());
        std::error_code ec;
        fs::create_directories(out, ec);
        if (ec) throw ConfigError("cannot create output directory " + out + ": " + ec.message());
        summary = {{"command", cmd}, {"spec", spec_path}, {"config_hash", hash}, {"name", spec.name}};
    }

    std::ofstream csv(const std::string& name, const std::string& columns) const
    {
        std::ofstream os(fs::path(out) / name);
        if (!os) throw ConfigError("cannot write " + (fs::path(out) / name).string());
        os << "# blsum " << cmd << " config_hash=" << hash << '\n' << columns << '\n' << std::setprecision(17);
        return os;
    }

    void write_summary(int status)
    {
        summary["exit_status"] = status;
        std::ofstream os(fs::path(out) / (cmd + "_summary.json"));
        if (!os) throw ConfigError("cannot write summary in " + out);
        os << summary.dump(2) << '\n';
    }

    CoveringPlan covering() const
    {
        try {
            return build_good_covering(spec, d.sectors, d.r_T);
        } catch (const std::exception& e) {
            throw HypothesisFailure(std::string("covering: ") + e.what());
        }
    }

    SectorOptions sector_options() const
    {
        SectorOptions o;
        o.solver.tol = d.tol;
        return o;
    }
};

int cmd_validate(Run& r)
{
    const HypothesisReport rep = validate_structure(r.spec, r.spec.grid);
    auto os = r.csv("validate.csv", "hypothesis,pass,witness");
    json flags = json::array();
    for (const auto& f : rep.flags) {
        os << '"' << f.name << "\"," << f.pass << ",\"" << f.witness << "\"\n";
        flags.push_back({{"name", f.name}, {"pass", f.pass}, {"witness", f.witness}});
        if (!f.pass) std::cerr << "hypothesis failed: " << f.name << " (" << f.witness << ")\n";
    }
    r.summary["hypotheses"] = flags;
    r.summary["overall"] = rep.overall;
    return rep.overall ? kOk : kHypothesis;
}

int cmd_formal(Run& r)
{
    const EquationSpec& s = r.spec;
    auto series_os = r.csv("formal_series.csv", "eps,n,m,re,im");
    auto norm_os = r.csv("formal_norms.csv", "eps,n,norm,norm_over_gamma,residual,scale");
    json runs = json::array();
    for (double e : r.d.eps) {
        const FormalSeriesT f = solve_recursion(s, cx(e), r.d.orders);
        const FormalResidual res = formal_residual(s, f, cx(e));
        for (int n = 1; n <= f.N(); ++n)
            for (int i = 0; i < s.grid.points; ++i)
                series_os << e << ',' << n << ',' << s.grid.m(i) << ',' << f.coeffs[n][i].real() << ','
                          << f.coeffs[n][i].imag() << '\n';
        double worst = 0;
        for (int n = 0; n <= f.N(); ++n) {
            const double nr = e_beta_mu_norm(f.U(n), s.beta, s.mu);
            norm_os << e << ',' << n << ',' << nr << ',' << (n ? nr / gamma_fn(double(n) / s.k) : 0.0);
            if (n < static_cast<int>(res.residual.size())) {
                norm_os << ',' << res.residual[n] << ',' << res.scale[n];
                worst = std::max(worst, res.residual[n] / std::max(res.scale[n], 1e-300));
            } else {
                norm_os << ",,";
            }
            norm_os << '\n';
        }
        json entry = {{"eps", e}, {"N", f.N()}, {"max_relative_residual", worst}};
        try {
            const GevreyFit g = gevrey_rate(f, s.k, s.beta, s.mu);
            entry["rho_est"] = g.rho_est;
            entry["fit_r2"] = g.fit_r2;
            entry["drift"] = g.drift;
            entry["divergence_detected"] = g.divergence_detected;
        } catch (const std::exception& ex) {
            entry["gevrey_rate"] = ex.what();
        }
        runs.push_back(entry);
    }
    r.summary["runs"] = runs;
    return kOk;
}

int cmd_roots(Run& r)
{
    const RootSet rs = root_set(r.spec, r.spec.grid);
    auto os = r.csv("roots.csv", "m,l,re,im,abs");
    for (std::size_t i = 0; i < rs.m.size(); ++i)
        for (std::size_t l = 0; l < rs.q[i].size(); ++l)
            os << rs.m[i] << ',' << l << ',' << rs.q[i][l].real() << ',' << rs.q[i][l].imag() << ','
               << std::abs(rs.q[i][l]) << '\n';
    r.summary["max_root_residual"] = rs.max_residual;
    const CoveringPlan plan = r.covering();
    auto ad = r.csv("admissibility.csv", "p,direction,aperture,M1,M2,l0,C_P,min_root_modulus,admissible");
    bool all = true;
    for (int p = 0; p < plan.count; ++p) {
        const DirectionReport& d = plan.reports[p];
        ad << p << ',' << d.d << ',' << d.aperture << ',' << d.M1 << ',' << d.M2 << ',' << d.l0 << ',' << d.C_P << ','
           << d.min_root_modulus << ',' << d.admissible << '\n';
        all = all && d.admissible;
    }
    r.summary["directions_admissible"] = all;
    return all ? kOk : kHypothesis;
}

int cmd_cover(Run& r)
{
    const CoveringPlan plan = r.covering();
    const CoveringCheck chk = verify_covering(r.spec, plan);
    auto os = r.csv("cover.csv", "p,E_direction,E_aperture,E_radius,d_p,S_aperture,M1,M2");
    for (int p = 0; p < plan.count; ++p)
        os << p << ',' << plan.E[p].direction << ',' << plan.E[p].aperture << ',' << plan.E[p].outer_radius << ','
           << plan.dirs[p] << ',' << plan.S[p].aperture << ',' << plan.reports[p].M1 << ',' << plan.reports[p].M2
           << '\n';
    r.summary["sectors"] = plan.count;
    r.summary["theta"] = plan.theta;
    r.summary["delta1"] = plan.delta1;
    r.summary["kappa"] = plan.kappa;
    r.summary["T"] = {{"direction", plan.T.direction}, {"aperture", plan.T.aperture}, {"radius", plan.T.outer_radius}};
    r.summary["checks"] = {{"pairwise_overlap", chk.pairwise_overlap}, {"no_triple", chk.no_triple},
                           {"covers", chk.covers},
                           {"containment", chk.containment},
                           {"directions_admissible", chk.directions_admissible},
                           {"min_M1", chk.min_M1},
                           {"min_M2", chk.min_M2}};
    return chk.ok() ? kOk : kHypothesis;
}

int cmd_solve(Run& r)
{
    const CoveringPlan plan = r.covering();
    auto os = r.csv("borel_solution.csv", "p,eps,r,m,re,im");
    auto st = r.csv("solve_stats.csv", "p,eps,gamma,iterations,contraction_factor,residual,norm,varpi,flagged");
    json runs = json::array();
    for (int p = 0; p < plan.count; ++p)
        for (double e : r.d.eps) {
            const SectorSolution sol(r.spec, plan, p, std::polar(e, plan.centre(p)), r.sector_options());
            const BorelSolution& b = sol.borel();
            for (int i = 0; i < b.field.nr(); ++i)
                for (int m = 0; m < b.field.nm(); ++m)
                    os << p << ',' << e << ',' << b.field.ray.r(i) << ',' << r.spec.grid.m(m) << ','
                       << b.field.at(i, m).real() << ',' << b.field.at(i, m).imag() << '\n';
            st << p << ',' << e << ',' << b.direction << ',' << b.iterations << ',' << b.contraction_factor << ','
               << b.residual << ',' << b.norm_f << ',' << b.varpi << ',' << b.flagged << '\n';
            runs.push_back({{"p", p}, {"eps", e}, {"iterations", b.iterations},
                            {"contraction_factor", b.contraction_factor}, {"residual", b.residual},
                            {"flagged", b.flagged}});
        }
    r.summary["solves"] = runs;
    return kOk;
}

int cmd_sum(Run& r)
{
    const CoveringPlan plan = r.covering();
    auto os = r.csv("solution_samples.csv", "p,eps,t_re,t_im,z_re,z_im,u_re,u_im");
    for (int p = 0; p < plan.count; ++p)
        for (double e : r.d.eps) {
            const SectorSolution sol(r.spec, plan, p, std::polar(e, plan.centre(p)), r.sector_options());
            for (const auto& [t, z] : sample_grid(plan.T, sol.h_prime(), r.d.zmax, r.d.nt, r.d.nz)) {
                const cx u = sol.eval(t, z);
                os << p << ',' << e << ',' << t.real() << ',' << t.imag() << ',' << z.real() << ',' << z.imag() << ','
                   << u.real() << ',' << u.imag() << '\n';
            }
        }
    r.summary["samples_per_solution"] = r.d.nt * r.d.nz;
    return kOk;
}

int cmd_verify(Run& r)
{
    const CoveringPlan plan = r.covering();
    bool ok = true;

    auto res_os = r.csv("residual.csv", "p,eps,max_residual,forcing_scale,term_scale");
    json residuals = json::array();
    for (int p = 0; p < plan.count; ++p)
        for (double e : r.d.eps) {
            const SectorSolution sol(r.spec, plan, p, std::polar(e, plan.centre(p)), r.sector_options());
            const auto rep = pde_residual(sol, r.spec, sample_grid(plan.T, sol.h_prime(), r.d.zmax, r.d.nt, r.d.nz));
            res_os << p << ',' << e << ',' << rep.max_residual << ',' << rep.forcing_scale << ',' << rep.term_scale
                   << '\n';
            const bool pass = rep.max_residual < r.d.rel_residual * rep.forcing_scale;
            ok = ok && pass;
            residuals.push_back({{"p", p}, {"eps", e}, {"max_residual", rep.max_residual}, {"pass", pass}});
        }
    r.summary["residual"] = residuals;

    FlatnessOptions fo;
    fo.sector = r.sector_options();
    fo.eps_hi = r.d.flat_hi;
    fo.ratio = r.d.flat_ratio;
    fo.n_eps = r.d.flat_n;
    const RSReport rs = rs_check(plan, r.spec, fo);
    auto fl = r.csv("flatness.csv", "pair,eps_abs,diff,scale");
    json pairs = json::array();
    for (const auto& f : rs.pairs) {
        for (std::size_t j = 0; j < f.diffs.size(); ++j)
            fl << f.p << ',' << std::abs(f.eps_samples[j]) << ',' << f.diffs[j] << ',' << f.scales[j] << '\n';
        pairs.push_back({{"pair", f.p}, {"status", f.status}, {"M", f.M}, {"logK", f.logK}, {"r2", f.r2},
                         {"r2_lower", f.r2_lower}, {"pass", f.pass}});
    }
    r.summary["flatness"] = pairs;
    r.summary["rs"] = {{"bounded", rs.bounded}, {"flat", rs.flat}, {"pass", rs.pass}, {"failure", rs.failure}};
    ok = ok && rs.pass;

    GevreyOptions go;
    go.sector = r.sector_options();
    go.sector.solver.tol = std::min(r.d.tol, 1e-14);
    go.eps_hi = r.d.gevrey_hi;
    go.ratio = r.d.gevrey_ratio;
    go.ladder = r.d.gevrey_ladder;
    const GevreyReport g = gevrey_expansion(plan, r.spec, go);
    auto gv = r.csv("gevrey.csv", "order,cross_sector,scale,recursion_residual,recursion_scale,indeterminate");
    for (std::size_t m = 0; m < g.cross_sector.size(); ++m) {
        gv << m << ',' << g.cross_sector[m] << ',' << g.scale[m] << ',';
        if (m < g.recursion_residual.size()) gv << g.recursion_residual[m] << ',' << g.recursion_scale[m];
        else gv << ',';
        gv << ',' << (m < g.indeterminate.size() && g.indeterminate[m]) << '\n';
    }
    auto sl = r.csv("remainder_slopes.csv", "p,n,slope");
    for (std::size_t p = 0; p < g.remainder_slope.size(); ++p)
        for (std::size_t n = 0; n < g.remainder_slope[p].size(); ++n)
            sl << p << ',' << n + 1 << ',' << g.remainder_slope[p][n] << '\n';
    r.summary["gevrey"] = {{"cross_sector", g.cross_sector}, {"scale", g.scale},
                           {"remainder_slope", g.remainder_slope}, {"recursion_residual", g.recursion_residual},
                           {"recursion_term_scale", g.recursion_term_scale}};
    r.summary["pass"] = ok;
    return ok ? kOk : kHypothesis;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Borel-Laplace summation engine for a singularly perturbed Cauchy problem"};
    app.require_subcommand(1);
    Run run;
    std::vector<std::pair<std::string, int (*)(Run&)>> cmds{
        {"validate", cmd_validate}, {"formal", cmd_formal}, {"roots", cmd_roots}, {"cover", cmd_cover},
        {"solve", cmd_solve},       {"sum", cmd_sum},       {"verify", cmd_verify}};
    const char* help[] = {"check structural hypotheses",
                          "run the recursion, residuals and Gevrey rate",
                          "roots of P_m and direction certificates",
                          "build and re-verify a good covering",
                          "fixed point in the Borel plane per sector",
                          "sample the sectorial solutions",
                          "residual, flatness, Ramis-Sibuya and Gevrey checks"};
    for (std::size_t i = 0; i < cmds.size(); ++i) {
        CLI::App* sc = app.add_subcommand(cmds[i].first, help[i]);
        sc->add_option("--spec", run.spec_path, "spec JSON file")->required();
        sc->add_option("--out", run.out, "output directory")->capture_default_str();
        sc->add_option("--orders", run.d.orders, "series truncation N")->capture_default_str()->check(CLI::Range(2, 200));
        sc->add_option("--sectors", run.d.sectors, "number of sectors in the covering")
            ->capture_default_str()
            ->check(CLI::Range(2, 64));
        sc->add_option("--eps", run.d.eps, "comma separated |eps| values")
            ->delimiter(',')
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
        sc->add_option("--tol", run.d.tol, "fixed point tolerance")->capture_default_str()->check(CLI::PositiveNumber);
        sc->add_option("--threads", run.d.threads, "worker cap, 0 for all")->capture_default_str()->check(
            CLI::NonNegativeNumber);
        sc->add_option("--flat-hi", run.d.flat_hi, "largest |eps| of the flatness ladder, 0 for eps0/2")
            ->capture_default_str();
        sc->add_option("--flat-ratio", run.d.flat_ratio, "geometric step of the flatness ladder")
            ->capture_default_str()
            ->check(CLI::Range(0.1, 0.99));
        sc->callback([&run, sc] { run.cmd = sc->get_name(); });
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }
    if (run.d.threads > 0) set_thread_cap(run.d.threads);

    int status = kOk;
    try {
        run.load();
        for (const auto& [name, fn] : cmds)
            if (name == run.cmd) status = fn(run);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const HypothesisFailure& e) {
        std::cerr << "hypothesis failure: " << e.what() << '\n';
        run.summary["error"] = e.what();
        status = kHypothesis;
    } catch (const StructureError& e) {
        std::cerr << "hypothesis failure: " << e.what() << '\n';
        run.summary["error"] = e.what();
        status = kHypothesis;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        run.summary["error"] = e.what();
        status = kNumerical;
    }
    try {
        run.write_summary(status);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    }
    std::cout << run.cmd << ": exit " << status << " (config_hash " << run.hash << ", outputs in " << run.out
              << ")\n";
    return status;
}
