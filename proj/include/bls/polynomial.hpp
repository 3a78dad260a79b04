#pragma once

#include "bls/numeric.hpp"

#include <string>
#include <vector>

namespace bls {

// Coefficients in ascending degree. The zero polynomial is the single coefficient 0.
class Polynomial {
public:
    Polynomial() : c_{cx(0)} {}
    explicit Polynomial(std::vector<cx> coeffs);
    static Polynomial constant(cx v) { return Polynomial({v}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == cx(0); }
    const std::vector<cx>& coeffs() const { return c_; }
    cx leading() const { return c_.back(); }

    cx operator()(cx x) const;
    // P(i m), the Fourier symbol of P(d/dz).
    cx symbol(double m) const { return (*this)(cx(0, m)); }

    std::string str() const;

private:
    std::vector<cx> c_;
};

}  // namespace bls
