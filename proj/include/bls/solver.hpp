#pragma once

#include "bls/borel.hpp"
#include "bls/roots.hpp"

#include <vector>

namespace bls {

// Coefficients of T^{delta(k+1)} d^delta = (T^{k+1}d)^delta + sum_p A_{delta,p} T^{k(delta-p)} (T^{k+1}d)^p.
// Returned vector has index p = 0..delta, with [0] = 0 and [delta] = 1.
std::vector<long long> expansion_coefficients(int delta, int k);

struct SolverOptions {
    int panels = 8;         // panels over [0, R_max] away from roots
    double grade = 0.5;     // panel width <= grade * distance to the nearest root of P_m
    int max_panels = 24;
    int per_panel = 12;
    int linear_nodes = 48;
    int outer_nodes = 40;
    int inner_nodes = 40;
    double tol = 1e-12;
    int max_iter = 80;
    double tail_exponent = 30;  // R_max = |eps| (tail_exponent/nu)^{1/k}
    double r_max_scale = 1.0;
    Exec exec = Exec::parallel;
};

RayGrid make_ray(const EquationSpec& spec, cx eps, double gamma, const SolverOptions& opt);

struct Inhomogeneous {
    TauMField phi;
    TauMField psi;
    double tail_bound = 0;
};

Inhomogeneous assemble_inhomogeneous(const EquationSpec& spec, const RayGrid& ray);

enum Term : unsigned {
    kQuadratic = 1u << 0,
    kRD = 1u << 1,
    kLower = 1u << 2,
    kPhi = 1u << 3,
    kC00 = 1u << 4,
    kPsi = 1u << 5,
    kAllTerms = 63u,
};

// The map H_eps on one ray, with all kernels precomputed.
class BorelOperator {
public:
    BorelOperator(const EquationSpec& spec, cx eps, const RayGrid& ray, const SolverOptions& opt = {});

    TauMField apply(const TauMField& w, unsigned terms = kAllTerms) const;
    // Same, without the final division by P_m.
    TauMField numerator(const TauMField& w, unsigned terms = kAllTerms) const;

    const RayGrid& ray() const { return ray_; }
    const MGrid& grid() const { return spec_.grid; }
    cx eps() const { return eps_; }
    double min_abs_P() const { return min_abs_P_; }
    TauMField zero() const { return TauMField(ray_, spec_.grid); }
    const Inhomogeneous& inhomogeneous() const { return inh_; }

    // Precomputed kernel L_{alpha,p}: w -> int_0^{tau^k} (tau^k-s)^{alpha-1} s^p w(s^{1/k}) ds/s.
    std::vector<cx> linear_kernel(double alpha, int p) const;
    // Tensor of the Borel convolution kernel int (tau^k-s)^{1/k} [s int f*g dx/((s-x)x)] ds/s.
    const std::vector<cx>& bilinear_tensor() const { return T_; }

private:
    struct LinearGroup {
        std::vector<cx> coef;  // per m
        std::vector<cx> M;     // nr x nr
        unsigned term;
    };

    EquationSpec spec_;
    cx eps_;
    RayGrid ray_;
    SolverOptions opt_;
    Inhomogeneous inh_;
    std::vector<cx> invP_;
    double min_abs_P_ = 0;
    std::vector<LinearGroup> groups_;
    std::vector<cx> Mc00_;
    std::vector<cx> T_;
    std::vector<cx> Xpsi_;
    cx pref_quad_;
    bool have_phi_ = false, have_c00_ = false;
};

struct BorelSolution {
    TauMField field;
    cx eps;
    double direction = 0;
    double norm_f = 0;
    double varpi = 0;
    std::vector<double> contraction_history;
    double contraction_factor = 0;
    double residual = 0;
    int iterations = 0;
    bool ball_ok = true;
    bool flagged = false;
};

struct SolveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BorelSolution fixed_point_solve(const EquationSpec& spec, cx eps, double gamma, const SolverOptions& opt = {},
                                const DirectionReport* report = nullptr);
BorelSolution fixed_point_solve(const BorelOperator& H, const EquationSpec& spec, const SolverOptions& opt,
                                const DirectionReport* report = nullptr);

double disc_consistency(const BorelSolution& sol, const BorelSeries& series, double rho);

struct GrowthCheck {
    double varpi_d = 0;
    double varpi_d_extended = 0;
    bool pass = false;
};

double growth_constant(const TauMField& w, double beta, double mu, double nu, int k, cx eps);
GrowthCheck growth_bound_check(const TauMField& w, const TauMField& w_extended, double beta, double mu, double nu,
                               int k, cx eps);

// Operator-norm probes on a fixed input in the scaled variable tau/eps.
enum class Probe {
    kernel,     // int_0^{tau^k} (tau^k-s)^{1/k} w(s^{1/k}) ds/s
    rd_sum,     // isolated R_D sum of H_eps
    quadratic,  // quadratic term of H_eps without its eps^{-1}, per |w|^2
    c00,        // C_00 term of H_eps without its eps^{-1}
};

struct ScalingProbe {
    std::vector<double> eps;
    std::vector<double> ratio;
    double exponent = 0;
    double r2 = 0;
};

ScalingProbe scaling_probe(const EquationSpec& spec, Probe which, const std::vector<double>& eps, double gamma = 0,
                           const SolverOptions& opt = {});

}  // namespace bls
