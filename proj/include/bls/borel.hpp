#pragma once

#include "bls/formal.hpp"

#include <functional>

namespace bls {

struct BorelSeries {
    MGrid grid;
    int k = 1;
    double rho = 0;
    std::vector<GridFunction> coeffs;  // coeffs[n] = U_n / Gamma(n/k)

    int N() const { return static_cast<int>(coeffs.size()) - 1; }
    GridFunction eval(cx tau) const;
};

BorelSeries mk_borel(const TSeries& s, int k, double rho = 0);
BorelSeries mk_borel(const FormalSeriesT& s, int k, double rho = 0);

// Max coefficient discrepancy between B(T^{k+1} dS/dT) and k tau^k B(S).
double check_borel_diff(const TSeries& s, int k);

using TauFunction = std::function<GridFunction(cx)>;

// tau^k / Gamma(m/k) int_0^{tau^k} (tau^k - s)^{m/k-1} w(s^{1/k}) ds/s.
GridFunction borel_monomial_mult(const TauFunction& w, const MGrid& g, int m_power, int k, cx tau, int nodes = 64);

// tau^k int_0^{tau^k} f((tau^k-s)^{1/k}) * g(s^{1/k}) ds/((tau^k-s)s) with the Q1/Q2/R star product.
GridFunction borel_convolution(const TauFunction& f, const TauFunction& g, const MGrid& grid, int k, cx tau,
                               const Polynomial& Q1, const Polynomial& Q2, const Polynomial& R, int nodes = 64);

TauFunction as_tau_function(const BorelSeries& b);
TauFunction as_tau_function(const TauMField& w);

}  // namespace bls
