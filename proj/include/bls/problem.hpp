#pragma once

#include "bls/grid.hpp"
#include "bls/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace bls {

struct OperatorTerm {
    int d = 0;      // power of t
    int delta = 1;  // order of d/dt
    int Delta = 0;  // power of eps
    Polynomial R;
};

struct EquationSpec {
    std::string name = "unnamed";
    int k = 1;
    int D = 2;
    std::vector<OperatorTerm> terms;
    Polynomial Q, Q1, Q2, R0;
    MGrid grid;
    std::vector<GridFunction> coeff_series;    // C_{0,n}, n = 0, 1, ...
    std::vector<GridFunction> forcing_series;  // F_n stored at index n-1
    double beta = 1, mu = 2, nu = 1, rho = 0.1, eps0 = 0.2, T0 = 1, K0 = 1;

    const OperatorTerm& term(int l) const { return terms.at(l - 1); }  // 1-based as in the equation
    const Polynomial& RD() const { return terms.back().R; }
    int deltaD() const { return terms.back().delta; }
    // Zero when not stored.
    GridFunction C0(int n) const;
    GridFunction F(int n) const;
    int max_C0_order() const { return static_cast<int>(coeff_series.size()) - 1; }
    int max_F_order() const { return static_cast<int>(forcing_series.size()); }
    // Exponent of eps on the l-th term after the change of variable T = eps t.
    int eps_power(int l) const;
};

struct SectorSpec {
    double direction = 0;
    double aperture = 0;  // full opening angle
    double inner_radius = 0;
    double outer_radius = 0;
    bool unbounded = true;

    bool contains(cx z, double slack = 0) const;
};

// Signed angle a-b wrapped into (-pi, pi].
double angle_diff(double a, double b);

struct HypothesisFlag {
    std::string name;
    bool pass = true;
    std::string witness;
};

struct HypothesisReport {
    std::vector<HypothesisFlag> flags;
    bool overall = true;

    const HypothesisFlag* find(const std::string& name) const;
    void add(std::string name, bool pass, std::string witness = {});
};

struct StructureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace hyp {
inline const char* kDelta1 = "delta_1 = 1";
inline const char* kDeltaIncreasing = "delta_l < delta_{l+1}";
inline const char* kDeltaD2 = "delta_D >= 2";
inline const char* kdD = "d_D = (delta_D-1)(k+1)";
inline const char* kdl = "d_l > (delta_l-1)(k+1) for l < D";
inline const char* kDeltaDForm = "Delta_D = d_D - delta_D + 1";
inline const char* kDegQ = "deg Q >= deg R_D";
inline const char* kDegRl = "deg R_D >= deg R_l";
inline const char* kDegQ1 = "deg R_D >= deg Q1";
inline const char* kDegQ2 = "deg R_D >= deg Q2";
inline const char* kQnonzero = "Q(im) != 0";
inline const char* kRDnonzero = "R_D(im) != 0";
inline const char* kMu = "mu > max(deg Q1, deg Q2) + 1";
inline const char* kDeltaGap = "k delta_D >= k delta_l + 2";
inline const char* kEpsBalance = "Delta_l - d_l + delta_l + k(delta_l - delta_D) + d_lk >= 0";
inline const char* kQuotient = "Q/R_D in an unbounded sector";
inline const char* kSeriesBounds = "|C_0n|, |F_n| <= K0 T0^-n";
inline const char* kRanges = "field ranges";
}  // namespace hyp

HypothesisReport validate_structure(const EquationSpec& spec, const MGrid& grid);
std::vector<int> derived_indices(const EquationSpec& spec);
SectorSpec quotient_sector(const EquationSpec& spec, const MGrid& grid);

}  // namespace bls
