#pragma once

#include "bls/transforms.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bls {

struct ResidualReport {
    double max_residual = 0;
    double forcing_scale = 0;  // max |f| over the samples
    double term_scale = 0;     // max modulus of any single term
};

// c_0(t,z,eps) and f(t,z,eps) from their series.
cx c0_value(const EquationSpec& spec, cx eps, cx t, cx z);
cx f_value(const EquationSpec& spec, cx eps, cx t, cx z);

ResidualReport pde_residual(const SectorSolution& sol, const EquationSpec& spec,
                            const std::vector<std::pair<cx, cx>>& samples);

// 5x5 product grid over (T cap D(0, h)) x (real segment of the strip).
std::vector<std::pair<cx, cx>> sample_grid(const SectorSpec& T, double h, double zmax, int nt = 5, int nz = 5);

struct FlatnessOptions {
    int n_eps = 6;
    double eps_hi = 0;       // largest |eps|; default eps0/2
    double ratio = 0.85;     // geometric step
    double h_ratio = 0.5;    // h'' = h_ratio h'
    double zmax = 1.0;
    double noise = 1e-9;     // relative floor
    double r2_min = 0.98;
    SectorOptions sector;
};

struct FlatnessReport {
    int p = 0;
    std::vector<cx> eps_samples;
    std::vector<double> diffs;
    std::vector<double> scales;
    double logK = 0, M = 0, r2 = 0;
    double r2_lower = 0;  // fit against |eps|^{-(k-1)}
    bool flat_beyond_measurement = false;
    bool fitted = false;
    bool prefers_k = false;
    bool pass = false;
    std::string status;
};

FlatnessReport flatness_probe(const CoveringPlan& plan, int p, const EquationSpec& spec,
                              const FlatnessOptions& opt = {});

struct RSReport {
    std::vector<double> sup_norms_by_sector;  // max over eps samples per sector
    std::vector<std::vector<double>> sup_norms;
    bool bounded = false;
    std::vector<FlatnessReport> pairs;
    bool flat = false;
    bool pass = false;
    std::string failure;
};

RSReport rs_check(const CoveringPlan& plan, const EquationSpec& spec, const FlatnessOptions& opt = {});

struct GevreyOptions {
    int n_max = 2;
    int ladder = 6;          // number of eps values per sector
    double eps_hi = 0.04;
    double ratio = 0.8;
    double zmax = 1.0;
    double h_ratio = 0.5;
    double noise = 1e-12;
    SectorOptions sector;
};

struct GevreyReport {
    std::vector<std::pair<cx, cx>> samples;
    // h[p][m][s]: estimate of h_m at sample s from sector p.
    std::vector<std::vector<std::vector<cx>>> h;
    std::vector<double> cross_sector;      // per order, max |h^{(p)} - h^{(p+1)}|
    std::vector<double> scale;             // per order, max |h|
    std::vector<std::vector<double>> remainder_slope;  // [p][n-1], n = 1..n_max
    std::vector<double> recursion_residual;           // per order m, max over samples
    std::vector<double> recursion_scale;              // per order m, max term magnitude
    double recursion_term_scale = 0;                  // max of recursion_scale over m
    std::vector<bool> indeterminate;
};

GevreyReport gevrey_expansion(const CoveringPlan& plan, const EquationSpec& spec, const GevreyOptions& opt = {});

}  // namespace bls
