#include "bls/numeric.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace bls {

double gamma_fn(double x)
{
    if (!(x > 0)) throw std::domain_error("gamma_fn: argument must be positive");
    return std::tgamma(x);
}

cx ray_pow(double r, double gamma, double x)
{
    if (r == 0) return x == 0 ? cx(1, 0) : cx(0, 0);
    return std::polar(std::pow(r, x), gamma * x);
}

QuadRule gauss_jacobi(int n, double a, double b)
{
    if (n < 1) throw std::invalid_argument("gauss_jacobi: n must be >= 1");
    if (a <= -1 || b <= -1) throw std::invalid_argument("gauss_jacobi: exponents must exceed -1");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    const double ab = a + b;
    for (int i = 0; i < n; ++i) {
        double diag;
        if (i == 0)
            diag = (b - a) / (ab + 2);
        else
            diag = (b * b - a * a) / ((2 * i + ab) * (2 * i + ab + 2));
        J(i, i) = diag;
        if (i + 1 < n) {
            const double m = i + 1;
            double num = 4 * m * (m + a) * (m + b) * (m + ab);
            double den = (2 * m + ab) * (2 * m + ab) * (2 * m + ab + 1) * (2 * m + ab - 1);
            double off = std::sqrt(num / den);
            J(i, i + 1) = off;
            J(i + 1, i) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::exp((ab + 1) * std::log(2.0) + std::lgamma(a + 1) + std::lgamma(b + 1)
                                - std::lgamma(ab + 2));
    QuadRule q;
    q.x.resize(n);
    q.w.resize(n);
    for (int i = 0; i < n; ++i) {
        q.x[i] = es.eigenvalues()(i);
        double v = es.eigenvectors()(0, i);
        q.w[i] = mu0 * v * v;
    }
    return q;
}

QuadRule gauss_legendre(int n, double lo, double hi)
{
    QuadRule g = gauss_jacobi(n, 0, 0);
    const double h = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.x[i] = lo + h * (g.x[i] + 1);
        g.w[i] *= h;
    }
    return g;
}

QuadRule gauss_jacobi01(int n, double a)
{
    QuadRule g = gauss_jacobi(n, a, 0);
    const double s = std::pow(2.0, -a - 1);
    for (std::size_t i = 0; i < g.size(); ++i) {
        g.x[i] = 0.5 * (g.x[i] + 1);
        g.w[i] *= s;
    }
    return g;
}

std::vector<double> chebyshev_nodes(int n, double lo, double hi)
{
    std::vector<double> x(n);
    for (int j = 0; j < n; ++j) {
        double c = -std::cos((2 * j + 1) * kPi / (2 * n));
        x[j] = lo + 0.5 * (hi - lo) * (c + 1);
    }
    return x;
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y)
{
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw std::invalid_argument("fit_line: need >= 2 matched points");
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double e = y[i] - f.intercept - f.slope * x[i];
        sse += e * e;
    }
    f.r2 = syy > 0 ? 1 - sse / syy : 1.0;
    return f;
}

std::vector<cx> poly_fit_exact(const std::vector<cx>& x, const std::vector<cx>& y)
{
    const int n = static_cast<int>(x.size());
    Eigen::MatrixXcd V(n, n);
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) {
        cx p = 1;
        for (int j = 0; j < n; ++j) {
            V(i, j) = p;
            p *= x[i];
        }
        b(i) = y[i];
    }
    Eigen::VectorXcd c = V.colPivHouseholderQr().solve(b);
    return std::vector<cx>(c.data(), c.data() + n);
}

std::int64_t falling_factorial(std::int64_t n, int count)
{
    std::int64_t p = 1;
    for (int j = 0; j < count; ++j) p *= (n - j);
    return p;
}

}  // namespace bls
