#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace help2p {

using Integer = mpz_class;
using Rational = mpq_class;

// Input outside the supported domain (even q, non prime powers, ...).
class UnsupportedInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Data that violates a structural invariant.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Rational make_rational(const Integer& num, const Integer& den);

std::int64_t mod(std::int64_t a, std::int64_t n);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t euler_phi(std::int64_t n);
int mobius(std::int64_t n);
bool is_prime(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);

struct PrimePower {
    std::int64_t p;
    int f;
};

// q = p^f with p prime, f >= 1.
std::optional<PrimePower> as_prime_power(std::int64_t q);

// Trial division up to `bound`; a cofactor above bound^2 is rejected.
std::vector<std::pair<Integer, int>> factor(const Integer& n, std::uint64_t bound = 10'000'000);

int valuation(Integer n, unsigned long p);
int valuation(std::int64_t n, std::int64_t p);
int legendre(std::int64_t a, std::int64_t p);

std::int64_t to_int64(const Integer& v);
std::string to_string(const Integer& v);
std::string to_string(const Rational& v);

}  // namespace help2p
