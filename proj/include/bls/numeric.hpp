#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace bls {

using cx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// Gamma on the positive reals.
double gamma_fn(double x);

// Principal power with the argument pinned to a ray: (r e^{i gamma})^x.
cx ray_pow(double r, double gamma, double x);

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
    std::size_t size() const { return x.size(); }
};

// Gauss-Jacobi on [-1,1], weight (1-x)^a (1+x)^b, by Golub-Welsch.
QuadRule gauss_jacobi(int n, double a, double b);

// Gauss-Legendre mapped to [lo,hi].
QuadRule gauss_legendre(int n, double lo, double hi);

// Nodes on [0,1] for weight (1-y)^a.
QuadRule gauss_jacobi01(int n, double a);

// First-kind Chebyshev nodes on [lo,hi], ascending.
std::vector<double> chebyshev_nodes(int n, double lo, double hi);

struct LineFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Coefficients of y = sum_j c_j x^j through the given points (Neville-free, small systems only).
std::vector<cx> poly_fit_exact(const std::vector<cx>& x, const std::vector<cx>& y);

// Falling factorial prod_{j<count} (n - j) in integers.
std::int64_t falling_factorial(std::int64_t n, int count);

}  // namespace bls
