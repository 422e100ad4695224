#pragma once

#include "help2p/arith.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace help2p {

// Element of Q(zeta_n) in the power basis zeta^0 .. zeta^{phi(n)-1}, reduced
// modulo the n-th cyclotomic polynomial. Terms are sorted by exponent and
// never carry a zero coefficient.
class CyclotomicNumber {
public:
    using Term = std::pair<std::int64_t, Rational>;

    CyclotomicNumber() = default;
    CyclotomicNumber(Rational value);  // NOLINT(google-explicit-constructor)
    CyclotomicNumber(long value) : CyclotomicNumber(Rational(value)) {}  // NOLINT

    static CyclotomicNumber root_of_unity(std::int64_t n, std::int64_t a);
    // Arbitrary exponents (taken mod n) and repeated entries are allowed.
    static CyclotomicNumber from_terms(std::int64_t n, std::span<const Term> terms);

    std::int64_t conductor() const { return conductor_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Only valid when is_rational().
    Rational rational_value() const;
    // Every coefficient is an integer (an algebraic integer in Z[zeta_n]).
    bool is_integral() const;

    // Same value written over Q(zeta_m); m must be a multiple of the conductor.
    CyclotomicNumber lifted(std::int64_t m) const;
    // Same value over the smallest conductor that contains it.
    CyclotomicNumber compressed() const;
    CyclotomicNumber conjugate() const;
    // zeta_n -> zeta_n^j for j coprime to n.
    CyclotomicNumber galois(std::int64_t j) const;

    CyclotomicNumber& operator+=(const CyclotomicNumber& other);
    CyclotomicNumber& operator-=(const CyclotomicNumber& other);
    CyclotomicNumber& operator*=(const CyclotomicNumber& other);
    CyclotomicNumber& operator*=(const Rational& scalar);

    friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber& b) { return a += b; }
    friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber& b) { return a -= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const CyclotomicNumber& b) { return a *= b; }
    friend CyclotomicNumber operator*(CyclotomicNumber a, const Rational& s) { return a *= s; }
    friend CyclotomicNumber operator*(const Rational& s, CyclotomicNumber a) { return a *= s; }
    CyclotomicNumber operator-() const;

    friend bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b);

private:
    CyclotomicNumber(std::int64_t n, std::vector<Term> terms) : conductor_(n), terms_(std::move(terms)) {}

    std::int64_t conductor_ = 1;
    std::vector<Term> terms_;
};

// Coefficients of the n-th cyclotomic polynomial, constant term first.
const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n);

// Tr_{Q(zeta_n)/Q}(zeta_n^a).
Rational root_trace(std::int64_t n, std::int64_t a);
// Trace from the representing field Q(zeta_conductor) down to Q.
Rational trace_to_rationals(const CyclotomicNumber& x);
// Tr_{Q(zeta_m)/Q}(x * zeta_m^k); requires x in Q(zeta_m).
Rational trace_over(const CyclotomicNumber& x, std::int64_t m, std::int64_t k = 0);

// A square root of sign*q built from the quadratic Gauss sum; sign must be q mod 4.
CyclotomicNumber gauss_sqrt(std::int64_t q, int sign);

}  // namespace help2p
