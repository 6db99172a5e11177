#pragma once

#include <string>
#include <vector>

#include "msd/digraph.hpp"

namespace msd {

/// Exact characteristic polynomial of a 0/1 adjacency matrix: monic, integer
/// coefficients, zero x^{n-1} term (loop-free means zero trace). Coefficients
/// are 128-bit; arithmetic that could leave the guarded range throws
/// std::overflow_error instead of wrapping.
class CharPoly {
public:
    using Coeff = __int128;

    CharPoly() = default;
    /// coeffs[k] is the coefficient of x^k; must be monic with a zero
    /// second-leading coefficient.
    explicit CharPoly(std::vector<Coeff> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Coeff coeff(int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
    const std::vector<Coeff>& coefficients() const { return coeffs_; }

    /// "c_n,c_{n-1},...,c_0", e.g. x^5 - 1 prints as "1,0,0,0,0,-1".
    std::string to_string() const;

    friend bool operator==(const CharPoly& a, const CharPoly& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator<(const CharPoly& a, const CharPoly& b) {
        return a.coeffs_ < b.coeffs_;
    }

private:
    std::vector<Coeff> coeffs_;  // ascending powers
};

/// det(xI - A) for the adjacency matrix A, by the Berkowitz recurrence:
/// division-free, exact integers throughout, no floating point.
CharPoly char_poly(const Digraph& d);

std::string int128_to_string(__int128 value);

}  // namespace msd
