#pragma once

#include "bls/problem.hpp"

#include <string>
#include <vector>

namespace bls {

// P_m(tau) = Q(im) k - R_D(im) k^{delta_D} tau^{(delta_D-1)k}.
cx P_m(const EquationSpec& spec, double m, cx tau);

std::vector<cx> roots_qlm(const EquationSpec& spec, double m);

struct RootSet {
    std::vector<double> m;
    std::vector<std::vector<cx>> q;  // q[i] holds the roots at m[i]
    double max_residual = 0;         // max |P_m(q)| / |R_D(im) k^{delta_D}|
};

RootSet root_set(const EquationSpec& spec, const MGrid& grid);

struct DirectionReport {
    double d = 0;
    double aperture = 0;
    double M1 = 0;
    double M2 = 0;
    int l0 = 0;
    double C_P = 0;
    double min_root_modulus = 0;
    bool admissible = false;
    std::string reason;
};

inline constexpr double kAdmissibleThreshold = 1e-3;

DirectionReport direction_admissibility(const EquationSpec& spec, double d, double aperture, double rho,
                                        const MGrid& grid, int tau_samples = 48);

struct CoveringOptions {
    double kappa_min = 0.1;     // extra opening beyond pi/k
    double overlap_fraction = 0.1;
    double sd_aperture = 0.5;   // full opening of the unbounded sectors S_d
    double T_aperture = 0.1;    // full opening of the time sector
    double theta_factor = 1.1;  // theta default pi/k * factor
    int tau_samples = 48;
};

struct CoveringPlan {
    int k = 1;
    int count = 0;
    std::vector<SectorSpec> E;   // parameter sectors, radius eps0
    std::vector<double> dirs;    // directions d_p
    std::vector<SectorSpec> S;   // unbounded sectors S_{d_p}
    std::vector<DirectionReport> reports;
    SectorSpec T;                // time sector, radius r_T
    double theta = 0;
    double delta1 = 0;
    double kappa = 0;
    double eps0 = 0;

    // Bisector of E_p and of E_p cap E_{p+1}.
    double centre(int p) const { return E[p].direction; }
    double overlap_centre(int p) const;
};

CoveringPlan build_good_covering(const EquationSpec& spec, int count, double r_T,
                                 const CoveringOptions& opt = CoveringOptions{});

struct CoveringCheck {
    bool pairwise_overlap = true;
    bool no_triple = true;
    bool covers = true;
    bool containment = true;
    bool directions_admissible = true;
    double min_M1 = 0, min_M2 = 0;
    bool ok() const { return pairwise_overlap && no_triple && covers && containment && directions_admissible; }
};

// Independent sampling pass over the plan invariants.
CoveringCheck verify_covering(const EquationSpec& spec, const CoveringPlan& plan, int angular_samples = 10000);

}  // namespace bls
