#include "help2p/arith.hpp"

#include <numeric>

namespace help2p {

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DataError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::int64_t mod(std::int64_t a, std::int64_t n) {
    const std::int64_t r = a % n;
    return r < 0 ? r + n : r;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t euler_phi(std::int64_t n) {
    std::int64_t result = n;
    for (std::int64_t p : prime_divisors(n)) result = result / p * (p - 1);
    return result;
}

int mobius(std::int64_t n) {
    int sign = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        sign = -sign;
    }
    if (n > 1) sign = -sign;
    return sign;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::optional<PrimePower> as_prime_power(std::int64_t q) {
    if (q < 2) return std::nullopt;
    const auto primes = prime_divisors(q);
    if (primes.size() != 1) return std::nullopt;
    return PrimePower{primes.front(), valuation(q, primes.front())};
}

std::vector<std::pair<Integer, int>> factor(const Integer& n, std::uint64_t bound) {
    if (n < 1) throw UnsupportedInput("factor: argument must be positive");
    std::vector<std::pair<Integer, int>> out;
    Integer rest = n;
    for (std::uint64_t d = 2; d <= bound && Integer(d) * d <= rest; ++d) {
        if (mpz_divisible_ui_p(rest.get_mpz_t(), d) == 0) continue;
        int e = 0;
        while (mpz_divisible_ui_p(rest.get_mpz_t(), d) != 0) {
            rest /= d;
            ++e;
        }
        out.emplace_back(Integer(d), e);
    }
    if (rest > 1) {
        if (rest > Integer(bound) * bound) throw UnsupportedInput("factor: trial division bound exceeded");
        out.emplace_back(rest, 1);
    }
    return out;
}

int valuation(Integer n, unsigned long p) {
    if (n == 0) throw DataError("valuation of zero");
    int v = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
        n /= p;
        ++v;
    }
    return v;
}

int valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) throw DataError("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int legendre(std::int64_t a, std::int64_t p) {
    a = mod(a, p);
    if (a == 0) return 0;
    std::int64_t result = 1, base = a, e = (p - 1) / 2;
    while (e > 0) {
        if (e & 1) result = result * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return result == 1 ? 1 : -1;
}

std::int64_t to_int64(const Integer& v) {
    if (!v.fits_slong_p()) throw DataError("integer out of machine range: " + v.get_str());
    return v.get_si();
}

std::string to_string(const Integer& v) { return v.get_str(); }

std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace help2p
