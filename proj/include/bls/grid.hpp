#pragma once

#include "bls/kernels.hpp"
#include "bls/numeric.hpp"
#include "bls/polynomial.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bls {

// Uniform odd grid on [-L, L] with 0 as the centre node.
struct MGrid {
    double L = 8;
    int points = 65;

    MGrid() = default;
    MGrid(double half_width, int n);
    double h() const { return 2 * L / (points - 1); }
    double m(int i) const { return -L + i * h(); }
    int centre() const { return (points - 1) / 2; }
    std::vector<double> nodes() const;
    bool operator==(const MGrid& o) const { return L == o.L && points == o.points; }
};

struct GridFunction {
    MGrid grid;
    std::vector<cx> v;

    GridFunction() = default;
    explicit GridFunction(const MGrid& g) : grid(g), v(g.points, cx(0)) {}
    GridFunction(const MGrid& g, std::vector<cx> vals);

    int size() const { return static_cast<int>(v.size()); }
    cx& operator[](int i) { return v[i]; }
    cx operator[](int i) const { return v[i]; }

    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(cx s);
    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(cx s, GridFunction a) { return a *= s; }
};

// Multiply pointwise by P(i m).
GridFunction apply_symbol(const Polynomial& P, const GridFunction& f);

double e_beta_mu_norm(const GridFunction& f, double beta, double mu);

// Trapezoid convolution, inputs zero-extended outside [-L, L].
GridFunction m_convolution(const GridFunction& f, const GridFunction& g, Exec e = Exec::parallel);

// R(im)^{-1} * ((Q1 f) * (Q2 g)).
GridFunction star_product(const GridFunction& f, const GridFunction& g, const Polynomial& Q1,
                          const Polynomial& Q2, const Polynomial& R);

// (2 pi)^{-1/2} int f(m) e^{izm} dm; requires |Im z| < beta.
std::vector<cx> fourier_inverse(const GridFunction& f, const std::vector<cx>& z, double beta,
                                Exec e = Exec::parallel);

// Radial nodes along the ray arg(tau) = gamma: Chebyshev panels on [0, R_max].
class RayGrid {
public:
    RayGrid() = default;
    RayGrid(double gamma, std::vector<double> breaks, int per_panel);
    static RayGrid uniform(double gamma, double r_max, int panels, int per_panel);

    double gamma() const { return gamma_; }
    double r_max() const { return breaks_.back(); }
    int size() const { return static_cast<int>(r_.size()); }
    int panels() const { return static_cast<int>(breaks_.size()) - 1; }
    int per_panel() const { return nc_; }
    const std::vector<double>& radii() const { return r_; }
    const std::vector<double>& breaks() const { return breaks_; }
    double r(int i) const { return r_[i]; }
    cx tau(int i) const { return std::polar(r_[i], gamma_); }

    int panel_of(double rho) const;
    // Interpolation weights at radius rho: nonzero only on the nodes of one panel, returned as first index.
    int weights(double rho, double* w) const;

private:
    double gamma_ = 0;
    std::vector<double> breaks_;
    int nc_ = 0;
    std::vector<double> r_;
    std::vector<double> bary_;
};

struct TauMField {
    RayGrid ray;
    MGrid grid;
    std::vector<cx> v;

    TauMField() = default;
    TauMField(const RayGrid& r, const MGrid& g) : ray(r), grid(g), v(static_cast<size_t>(r.size()) * g.points) {}
    int nr() const { return ray.size(); }
    int nm() const { return grid.points; }
    cx& at(int i, int m) { return v[static_cast<size_t>(i) * grid.points + m]; }
    cx at(int i, int m) const { return v[static_cast<size_t>(i) * grid.points + m]; }
    GridFunction row(int i) const;

    // Value at an off-node radius along the ray, via the panel interpolant of w/tau.
    GridFunction eval(double rho) const;
};

TauMField operator-(const TauMField& a, const TauMField& b);

double f_d_norm(const TauMField& w, double nu, double beta, double mu, int k, cx eps);

void write_grid_csv(std::ostream& os, const GridFunction& f);
GridFunction read_grid_csv(std::istream& is);

}  // namespace bls
