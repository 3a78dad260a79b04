#pragma once

#include "bls/solver.hpp"

#include <map>
#include <memory>

namespace bls {

struct DirectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Direction inside the sector maximizing cos(k(gamma - arg T)); throws if the best cosine is below delta1.
double choose_direction(cx T, const SectorSpec& sector, int k, double delta1);

struct LaplaceOptions {
    int nodes = 20;        // Gauss-Legendre nodes per subinterval
    int octaves = 8;       // subdivision at |T| 2^j, j = -octaves..octaves
    double tail_tol = 1e-10;
};

// Derivatives d^j/dT^j of k int_{L_gamma} w(u) e^{-(u/T)^k} du/u for j = 0..jmax; gamma is the ray of w.
std::vector<GridFunction> laplace_mk(const TauMField& w, int k, cx T, int jmax = 0, const LaplaceOptions& opt = {},
                                     double* tail = nullptr);

struct SectorOptions {
    SolverOptions solver;
    LaplaceOptions laplace;
    double beta_ratio = 0.5;  // beta' = beta_ratio * beta
    double h_margin = 0.9;    // h' = margin * (delta1 / (2 nu))^{1/k}, capped by r_T
};

class SectorSolution {
public:
    SectorSolution(const EquationSpec& spec, const CoveringPlan& plan, int p, cx eps, const SectorOptions& opt = {});

    int p() const { return p_; }
    cx eps() const { return eps_; }
    double gamma() const { return sol_->direction; }
    double h_prime() const { return h_prime_; }
    double beta_prime() const { return beta_prime_; }
    const BorelSolution& borel() const { return *sol_; }

    bool in_domain(cx t) const;
    // U^{(j)}(eps t, m), j = 0..jmax.
    std::vector<GridFunction> U_derivs(cx t, int jmax) const;
    // d^j u_p / dt^j at (t, z) with the symbol P applied in z.
    cx eval(cx t, cx z, int dt = 0, const Polynomial* P = nullptr) const;

private:
    const EquationSpec* spec_;
    int p_;
    cx eps_;
    int k_;
    double delta1_;
    SectorSpec T_;
    SectorSpec S_;
    double h_prime_ = 0;
    double beta_prime_ = 0;
    LaplaceOptions lopt_;
    std::shared_ptr<BorelSolution> sol_;
};

}  // namespace bls
