#pragma once

// Holomorphic polynomials in (x1, x2, x3), scalar or matrix coefficients.
//
// Text grammar (whitespace ignored):
//   poly   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*
//   factor := number ['i'] | 'i' | 'x1' | 'x2' | 'x3' | '(' poly ')' , each optionally '^' integer
// so complex coefficients are written "(0.5-2i)*x1^2 x3". There is no
// conjugation operator.

#include <array>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "tetra/geometry.hpp"

namespace tetra {

using Exponent = std::array<int, 3>;

struct Poly3 {
    std::map<Exponent, cplx> terms;

    static Poly3 constant(cplx c);
    static Poly3 variable(int index); ///< 1, 2 or 3

    int degree() const; ///< -1 for the zero polynomial
    /// sum |c| (i + j + k): Lipschitz constant on the closed polydisc for
    /// the max-coordinate distance.
    double lipschitz() const;
    void prune(); ///< drops exact zeros

    Poly3& operator+=(const Poly3& rhs);
    Poly3& operator*=(const Poly3& rhs);
    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator*(Poly3 a, const Poly3& b) { return a *= b; }
    friend Poly3 operator*(cplx c, Poly3 p);
    Poly3 pow(unsigned k) const;
};

/// Throws Error(Parse) with the offending position.
Poly3 parse_poly(std::string_view text);

/// Round-trippable text, e.g. "(0.5+0i)*x1^2*x3 + (1+0i)".
std::string to_string(const Poly3& p);

/// Every monomial of total degree <= d with coefficient uniform in the unit
/// disc, where d is uniform in [0, max_degree].
Poly3 random_poly(std::mt19937_64& rng, int max_degree = 3);

struct MatrixPoly3 {
    Eigen::Index size = 1; ///< coefficient order k
    std::map<Exponent, ComplexMatrix> terms;

    double lipschitz() const; ///< sum ||C|| (i + j + k)
    int degree() const;
};

} // namespace tetra
