#include "bls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace bls {

MGrid::MGrid(double half_width, int n) : L(half_width), points(n)
{
    if (!(L > 0)) throw std::invalid_argument("MGrid: half width must be positive");
    if (n < 3 || n % 2 == 0) throw std::invalid_argument("MGrid: point count must be odd and >= 3");
}

std::vector<double> MGrid::nodes() const
{
    std::vector<double> x(points);
    for (int i = 0; i < points; ++i) x[i] = m(i);
    return x;
}

GridFunction::GridFunction(const MGrid& g, std::vector<cx> vals) : grid(g), v(std::move(vals))
{
    if (static_cast<int>(v.size()) != g.points) throw std::invalid_argument("GridFunction: size mismatch");
}

static void same_grid(const MGrid& a, const MGrid& b)
{
    if (!(a == b)) throw std::invalid_argument("grid mismatch");
}

GridFunction& GridFunction::operator+=(const GridFunction& o)
{
    same_grid(grid, o.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o)
{
    same_grid(grid, o.grid);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
    return *this;
}

GridFunction& GridFunction::operator*=(cx s)
{
    for (auto& x : v) x *= s;
    return *this;
}

GridFunction apply_symbol(const Polynomial& P, const GridFunction& f)
{
    GridFunction out(f.grid);
    for (int i = 0; i < f.size(); ++i) out[i] = P.symbol(f.grid.m(i)) * f[i];
    return out;
}

double e_beta_mu_norm(const GridFunction& f, double beta, double mu)
{
    if (!(beta > 0)) throw std::invalid_argument("e_beta_mu_norm: beta must be positive");
    double best = 0;
    for (int i = 0; i < f.size(); ++i) {
        const double a = std::abs(f[i]);
        if (!std::isfinite(a)) throw std::domain_error("e_beta_mu_norm: non-finite value");
        if (a == 0) continue;
        const double m = std::abs(f.grid.m(i));
        best = std::max(best, std::exp(mu * std::log1p(m) + beta * m + std::log(a)));
    }
    return best;
}

GridFunction m_convolution(const GridFunction& f, const GridFunction& g, Exec e)
{
    same_grid(f.grid, g.grid);
    GridFunction out(f.grid);
    kernels::pair_convolutions(f.v.data(), 1, g.v.data(), 1, f.size(), f.grid.h(), out.v.data(), e);
    return out;
}

GridFunction star_product(const GridFunction& f, const GridFunction& g, const Polynomial& Q1,
                          const Polynomial& Q2, const Polynomial& R)
{
    same_grid(f.grid, g.grid);
    for (int i = 0; i < f.size(); ++i)
        if (R.symbol(f.grid.m(i)) == cx(0)) throw std::domain_error("star_product: R(im) vanishes on the grid");
    GridFunction out = m_convolution(apply_symbol(Q1, f), apply_symbol(Q2, g));
    for (int i = 0; i < out.size(); ++i) out[i] /= R.symbol(f.grid.m(i));
    return out;
}

std::vector<cx> fourier_inverse(const GridFunction& f, const std::vector<cx>& z, double beta, Exec e)
{
    for (const cx& zz : z)
        if (std::abs(zz.imag()) >= beta) throw std::domain_error("fourier_inverse: |Im z| >= beta");
    std::vector<cx> out(z.size());
    const auto m = f.grid.nodes();
    kernels::fourier_sum(f.v.data(), m.data(), f.size(), z.data(), static_cast<int>(z.size()),
                         f.grid.h() / std::sqrt(2 * kPi), out.data(), e);
    return out;
}

RayGrid::RayGrid(double gamma, std::vector<double> breaks, int per_panel)
    : gamma_(gamma), breaks_(std::move(breaks)), nc_(per_panel)
{
    if (breaks_.size() < 2 || breaks_.front() != 0) throw std::invalid_argument("RayGrid: breaks must start at 0");
    for (std::size_t p = 1; p < breaks_.size(); ++p)
        if (!(breaks_[p] > breaks_[p - 1])) throw std::invalid_argument("RayGrid: breaks must increase");
    if (nc_ < 2) throw std::invalid_argument("RayGrid: need >= 2 nodes per panel");
    for (int p = 0; p + 1 < static_cast<int>(breaks_.size()); ++p) {
        auto x = chebyshev_nodes(nc_, breaks_[p], breaks_[p + 1]);
        r_.insert(r_.end(), x.begin(), x.end());
    }
    bary_.resize(nc_);
    // Ascending first-kind nodes: theta_j = pi (2(n-1-j)+1)/(2n).
    for (int j = 0; j < nc_; ++j) {
        const int jj = nc_ - 1 - j;
        bary_[j] = ((jj % 2) ? -1.0 : 1.0) * std::sin((2 * jj + 1) * kPi / (2 * nc_));
    }
}

RayGrid RayGrid::uniform(double gamma, double r_max, int panels, int per_panel)
{
    std::vector<double> b(panels + 1);
    for (int p = 0; p <= panels; ++p) b[p] = r_max * p / panels;
    return RayGrid(gamma, b, per_panel);
}

int RayGrid::panel_of(double rho) const
{
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), rho);
    int p = static_cast<int>(it - breaks_.begin()) - 1;
    return std::clamp(p, 0, panels() - 1);
}

int RayGrid::weights(double rho, double* w) const
{
    const int p = panel_of(rho);
    const double* x = r_.data() + p * nc_;
    for (int j = 0; j < nc_; ++j) {
        if (rho == x[j]) {
            std::fill(w, w + nc_, 0.0);
            w[j] = 1;
            return p * nc_;
        }
    }
    double s = 0;
    for (int j = 0; j < nc_; ++j) {
        w[j] = bary_[j] / (rho - x[j]);
        s += w[j];
    }
    for (int j = 0; j < nc_; ++j) w[j] /= s;
    return p * nc_;
}

GridFunction TauMField::row(int i) const
{
    return GridFunction(grid, std::vector<cx>(v.begin() + static_cast<long>(i) * nm(),
                                              v.begin() + static_cast<long>(i + 1) * nm()));
}

GridFunction TauMField::eval(double rho) const
{
    std::vector<double> w(ray.per_panel());
    const int j0 = ray.weights(rho, w.data());
    GridFunction out(grid);
    const cx t = std::polar(rho, ray.gamma());
    for (int j = 0; j < ray.per_panel(); ++j) {
        const cx c = w[j] * t / ray.tau(j0 + j);
        for (int m = 0; m < nm(); ++m) out[m] += c * at(j0 + j, m);
    }
    return out;
}

TauMField operator-(const TauMField& a, const TauMField& b)
{
    if (a.v.size() != b.v.size()) throw std::invalid_argument("field size mismatch");
    TauMField d = a;
    for (std::size_t i = 0; i < d.v.size(); ++i) d.v[i] -= b.v[i];
    return d;
}

double f_d_norm(const TauMField& w, double nu, double beta, double mu, int k, cx eps)
{
    if (eps == cx(0)) throw std::invalid_argument("f_d_norm: eps must be nonzero");
    const double ae = std::abs(eps);
    double best = 0;
    for (int i = 0; i < w.nr(); ++i) {
        const double x = w.ray.r(i) / ae;
        const double lt = std::log1p(std::pow(x, 2 * k)) - std::log(x) - nu * std::pow(x, k);
        for (int m = 0; m < w.nm(); ++m) {
            const double a = std::abs(w.at(i, m));
            if (!std::isfinite(a)) throw std::domain_error("f_d_norm: non-finite value");
            if (a == 0) continue;
            const double mm = std::abs(w.grid.m(m));
            best = std::max(best, std::exp(lt + mu * std::log1p(mm) + beta * mm + std::log(a)));
        }
    }
    return best;
}

void write_grid_csv(std::ostream& os, const GridFunction& f)
{
    os << "m,re,im\n" << std::setprecision(17);
    for (int i = 0; i < f.size(); ++i) os << f.grid.m(i) << ',' << f[i].real() << ',' << f[i].imag() << '\n';
}

GridFunction read_grid_csv(std::istream& is)
{
    std::string line;
    std::vector<double> m;
    std::vector<cx> v;
    bool header = true;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double a, re, im;
        if (!(ls >> a >> re >> im)) throw std::runtime_error("read_grid_csv: malformed row: " + line);
        m.push_back(a);
        v.emplace_back(re, im);
    }
    if (m.size() < 3) throw std::runtime_error("read_grid_csv: too few rows");
    MGrid g(-m.front(), static_cast<int>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        if (std::abs(g.m(static_cast<int>(i)) - m[i]) > 1e-9 * (1 + g.L))
            throw std::runtime_error("read_grid_csv: nodes are not a symmetric uniform grid");
    return GridFunction(g, v);
}

}  // namespace bls
