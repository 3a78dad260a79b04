#include "bls/polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace bls {

Polynomial::Polynomial(std::vector<cx> coeffs) : c_(std::move(coeffs))
{
    if (c_.empty()) throw std::invalid_argument("polynomial needs at least one coefficient");
    while (c_.size() > 1 && c_.back() == cx(0)) c_.pop_back();
}

cx Polynomial::operator()(cx x) const
{
    cx acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

std::string Polynomial::str() const
{
    std::ostringstream os;
    for (std::size_t j = 0; j < c_.size(); ++j) {
        if (j) os << " + ";
        os << "(" << c_[j].real() << (c_[j].imag() < 0 ? "-" : "+") << std::abs(c_[j].imag()) << "i)X^" << j;
    }
    return os.str();
}

}  // namespace bls
