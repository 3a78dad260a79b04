#pragma once

#include "bls/problem.hpp"

#include <functional>
#include <vector>

namespace bls {

// Truncated series in T with grid-function coefficients; c[n] multiplies T^n.
class TSeries {
public:
    TSeries() = default;
    TSeries(const MGrid& g, int order) : grid_(g), c_(order + 1, GridFunction(g)) {}

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const MGrid& grid() const { return grid_; }
    // Zero outside [0, order].
    GridFunction at(int n) const;
    GridFunction& operator[](int n) { return c_.at(n); }
    const GridFunction& operator[](int n) const { return c_.at(n); }

    TSeries derivative() const;
    TSeries shift(int d) const;  // times T^d, truncated at the same order
    TSeries symbol(const Polynomial& P) const;
    TSeries scaled(cx s) const;
    TSeries& operator+=(const TSeries& o);

    using Bilinear = std::function<GridFunction(const GridFunction&, const GridFunction&)>;
    static TSeries cauchy(const TSeries& a, const TSeries& b, const Bilinear& op, int order);

private:
    MGrid grid_;
    std::vector<GridFunction> c_;
};

struct FormalSeriesT {
    MGrid grid;
    cx eps;
    std::vector<GridFunction> coeffs;  // coeffs[n] = U_n, coeffs[0] = 0

    int N() const { return static_cast<int>(coeffs.size()) - 1; }
    GridFunction U(int n) const { return (n >= 1 && n <= N()) ? coeffs[n] : GridFunction(grid); }
    TSeries as_tseries() const;
};

FormalSeriesT solve_recursion(const EquationSpec& spec, cx eps, int N);

struct FormalResidual {
    std::vector<double> residual;  // per order n = 0..N-1
    std::vector<double> scale;
};

FormalResidual formal_residual(const EquationSpec& spec, const FormalSeriesT& series, cx eps);

struct GevreyFit {
    double rho_est = 0;  // min over the last k orders of (|U_n| / Gamma(n/k))^{-1/n}
    double fit_r2 = 0;   // line fit of log(|U_n| / Gamma(n/k)) over the upper half
    double drift = 0;  // relative change of rho between the two halves of the fit window
    bool divergence_detected = true;
    std::vector<double> norms;  // |U_n| for n = 0..N
};

GevreyFit gevrey_rate(const std::vector<double>& norms, int k);
GevreyFit gevrey_rate(const FormalSeriesT& series, int k, double beta, double mu);

}  // namespace bls
