#include "help2p/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

namespace help2p {
namespace {

struct PolyCache {
    std::mutex lock;
    std::map<std::int64_t, std::vector<std::int64_t>> polys;
};

PolyCache& poly_cache() {
    static PolyCache cache;
    return cache;
}

std::vector<std::int64_t> compute_cyclotomic(std::int64_t n) {
    std::vector<std::int64_t> num{1};
    std::vector<std::int64_t> den_degrees;
    for (std::int64_t d : divisors(n)) {
        const int mu = mobius(n / d);
        if (mu == 0) continue;
        if (mu < 0) {
            den_degrees.push_back(d);
            continue;
        }
        std::vector<std::int64_t> next(num.size() + d, 0);
        for (std::size_t i = 0; i < num.size(); ++i) {
            next[i + d] += num[i];
            next[i] -= num[i];
        }
        num = std::move(next);
    }
    for (std::int64_t d : den_degrees) {
        const std::int64_t top = static_cast<std::int64_t>(num.size()) - 1;
        std::vector<std::int64_t> quot(top - d + 1, 0);
        for (std::int64_t j = top; j >= d; --j) quot[j - d] = num[j] + (j <= top - d ? quot[j] : 0);
        num = std::move(quot);
    }
    return num;
}

struct Overflow {};

std::int64_t checked_fms(std::int64_t acc, std::int64_t a, std::int64_t b) {
    std::int64_t prod = 0, out = 0;
    if (__builtin_mul_overflow(a, b, &prod) || __builtin_sub_overflow(acc, prod, &out)) throw Overflow{};
    return out;
}

// Long division by the monic cyclotomic polynomial of degree phi.
template <class Coeff, class Fms>
void reduce_dense(std::vector<Coeff>& c, const std::vector<std::int64_t>& poly, Fms fms) {
    const std::int64_t phi = static_cast<std::int64_t>(poly.size()) - 1;
    std::vector<std::pair<std::int64_t, std::int64_t>> sparse;
    for (std::int64_t j = 0; j < phi; ++j)
        if (poly[j] != 0) sparse.emplace_back(j, poly[j]);
    for (std::int64_t deg = static_cast<std::int64_t>(c.size()) - 1; deg >= phi; --deg) {
        if (c[deg] == 0) continue;
        const Coeff top = c[deg];
        for (const auto& [j, a] : sparse) c[deg - phi + j] = fms(c[deg - phi + j], top, a);
        c[deg] = 0;
    }
}

std::vector<CyclotomicNumber::Term> canonical_terms(std::int64_t n, std::span<const CyclotomicNumber::Term> raw) {
    using Term = CyclotomicNumber::Term;
    if (raw.empty()) return {};
    Integer den = 1;
    for (const auto& [e, c] : raw) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> nums(n, 0);
    for (const auto& [e, c] : raw) nums[mod(e, n)] += c.get_num() * (den / c.get_den());

    const auto& poly = cyclotomic_polynomial(n);
    std::vector<Integer> reduced;
    try {
        std::vector<std::int64_t> fast(n);
        for (std::int64_t i = 0; i < n; ++i) {
            if (!nums[i].fits_slong_p()) throw Overflow{};
            fast[i] = nums[i].get_si();
        }
        reduce_dense(fast, poly, checked_fms);
        reduced.assign(fast.begin(), fast.end());
    } catch (const Overflow&) {
        reduce_dense(nums, poly, [](const Integer& acc, const Integer& t, std::int64_t a) {
            return Integer(acc - t * static_cast<long>(a));
        });
        reduced = std::move(nums);
    }
    std::vector<Term> out;
    const std::int64_t phi = static_cast<std::int64_t>(poly.size()) - 1;
    for (std::int64_t e = 0; e < phi; ++e)
        if (reduced[e] != 0) out.emplace_back(e, make_rational(reduced[e], den));
    return out;
}

std::vector<CyclotomicNumber::Term> merge(const std::vector<CyclotomicNumber::Term>& a,
                                          const std::vector<CyclotomicNumber::Term>& b, int sign) {
    std::vector<CyclotomicNumber::Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || b[j].first < a[i].first) {
            out.emplace_back(b[j].first, sign > 0 ? b[j].second : Rational(-b[j].second));
            ++j;
        } else {
            Rational s = sign > 0 ? Rational(a[i].second + b[j].second) : Rational(a[i].second - b[j].second);
            if (s != 0) out.emplace_back(a[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return out;
}

// Solves lift(y) = x for y over Q(zeta_m) when m | n with n/m prime and coprime to m.
std::optional<std::vector<Rational>> descend(const CyclotomicNumber& x, std::int64_t m) {
    const std::int64_t n = x.conductor();
    const std::int64_t rows = euler_phi(n), cols = euler_phi(m);
    std::vector<std::vector<Rational>> a(rows, std::vector<Rational>(cols + 1, 0));
    for (std::int64_t j = 0; j < cols; ++j) {
        const auto image = CyclotomicNumber::root_of_unity(n, j * (n / m));
        for (const auto& [e, c] : image.terms()) a[e][j] = c;
    }
    for (const auto& [e, c] : x.terms()) a[e][cols] = c;

    std::vector<std::int64_t> pivot_col;
    std::int64_t r = 0;
    for (std::int64_t col = 0; col < cols && r < rows; ++col) {
        std::int64_t piv = r;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const Rational inv = 1 / a[r][col];
        for (auto& v : a[r]) v *= inv;
        for (std::int64_t i = 0; i < rows; ++i) {
            if (i == r || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::int64_t k = col; k <= cols; ++k) a[i][k] -= f * a[r][k];
        }
        pivot_col.push_back(col);
        ++r;
    }
    for (std::int64_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<Rational> y(cols, 0);
    for (std::int64_t i = 0; i < r; ++i) y[pivot_col[i]] = a[i][cols];
    return y;
}

}  // namespace

const std::vector<std::int64_t>& cyclotomic_polynomial(std::int64_t n) {
    if (n < 1) throw UnsupportedInput("cyclotomic polynomial needs n >= 1");
    auto& cache = poly_cache();
    std::lock_guard guard(cache.lock);
    auto it = cache.polys.find(n);
    if (it == cache.polys.end()) it = cache.polys.emplace(n, compute_cyclotomic(n)).first;
    return it->second;
}

CyclotomicNumber::CyclotomicNumber(Rational value) {
    value.canonicalize();
    if (value != 0) terms_.emplace_back(0, std::move(value));
}

CyclotomicNumber CyclotomicNumber::root_of_unity(std::int64_t n, std::int64_t a) {
    const Term t{a, Rational(1)};
    return from_terms(n, std::span(&t, 1));
}

CyclotomicNumber CyclotomicNumber::from_terms(std::int64_t n, std::span<const Term> terms) {
    if (n < 1) throw UnsupportedInput("conductor must be positive");
    return CyclotomicNumber(n, canonical_terms(n, terms));
}

bool CyclotomicNumber::is_rational() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0); }

Rational CyclotomicNumber::rational_value() const {
    if (!is_rational()) throw DataError("value is not rational");
    return terms_.empty() ? Rational(0) : terms_[0].second;
}

bool CyclotomicNumber::is_integral() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const Term& t) { return t.second.get_den() == 1; });
}

CyclotomicNumber CyclotomicNumber::lifted(std::int64_t m) const {
    if (m % conductor_ != 0) throw UnsupportedInput("lift target must be a multiple of the conductor");
    if (m == conductor_) return *this;
    if (is_rational()) return CyclotomicNumber(m, terms_);
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    const std::int64_t scale = m / conductor_;
    for (const auto& [e, c] : terms_) raw.emplace_back(e * scale, c);
    return from_terms(m, raw);
}

CyclotomicNumber CyclotomicNumber::compressed() const {
    if (is_rational()) return CyclotomicNumber(rational_value());
    CyclotomicNumber x = *this;
    bool progress = true;
    while (progress && x.conductor_ > 1) {
        progress = false;
        for (std::int64_t p : prime_divisors(x.conductor_)) {
            const std::int64_t m = x.conductor_ / p;
            std::vector<Term> down;
            if (m % p == 0) {
                if (!std::all_of(x.terms_.begin(), x.terms_.end(), [p](const Term& t) { return t.first % p == 0; }))
                    continue;
                for (const auto& [e, c] : x.terms_) down.emplace_back(e / p, c);
            } else {
                auto y = descend(x, m);
                if (!y) continue;
                for (std::int64_t j = 0; j < static_cast<std::int64_t>(y->size()); ++j)
                    if ((*y)[j] != 0) down.emplace_back(j, (*y)[j]);
            }
            x = CyclotomicNumber(m, std::move(down));
            progress = true;
            break;
        }
    }
    return x;
}

CyclotomicNumber CyclotomicNumber::galois(std::int64_t j) const {
    if (std::gcd(j, conductor_) != 1) throw UnsupportedInput("Galois exponent must be coprime to the conductor");
    if (is_rational()) return *this;
    std::vector<Term> raw;
    raw.reserve(terms_.size());
    for (const auto& [e, c] : terms_) raw.emplace_back(e * mod(j, conductor_), c);
    return from_terms(conductor_, raw);
}

CyclotomicNumber CyclotomicNumber::conjugate() const { return galois(-1); }

CyclotomicNumber& CyclotomicNumber::operator+=(const CyclotomicNumber& other) {
    const std::int64_t l = std::lcm(conductor_, other.conductor_);
    const CyclotomicNumber a = lifted(l);
    const CyclotomicNumber b = other.lifted(l);
    *this = CyclotomicNumber(l, merge(a.terms_, b.terms_, +1));
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator-=(const CyclotomicNumber& other) {
    const std::int64_t l = std::lcm(conductor_, other.conductor_);
    const CyclotomicNumber a = lifted(l);
    const CyclotomicNumber b = other.lifted(l);
    *this = CyclotomicNumber(l, merge(a.terms_, b.terms_, -1));
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const CyclotomicNumber& other) {
    if (other.is_rational()) return *this *= other.rational_value();
    if (is_rational()) {
        const Rational s = rational_value();
        *this = other;
        return *this *= s;
    }
    const std::int64_t l = std::lcm(conductor_, other.conductor_);
    const CyclotomicNumber a = lifted(l);
    const CyclotomicNumber b = other.lifted(l);
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [e1, c1] : a.terms_)
        for (const auto& [e2, c2] : b.terms_) raw.emplace_back(e1 + e2, c1 * c2);
    *this = from_terms(l, raw);
    return *this;
}

CyclotomicNumber& CyclotomicNumber::operator*=(const Rational& scalar) {
    if (scalar == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= scalar;
    return *this;
}

CyclotomicNumber CyclotomicNumber::operator-() const {
    CyclotomicNumber out = *this;
    for (auto& t : out.terms_) t.second = -t.second;
    return out;
}

bool operator==(const CyclotomicNumber& a, const CyclotomicNumber& b) {
    if (a.conductor_ == b.conductor_) return a.terms_ == b.terms_;
    if (a.is_rational() || b.is_rational()) return a.is_rational() && b.is_rational() && a.terms_ == b.terms_;
    const std::int64_t l = std::lcm(a.conductor_, b.conductor_);
    return a.lifted(l).terms_ == b.lifted(l).terms_;
}

Rational root_trace(std::int64_t n, std::int64_t a) {
    const std::int64_t m = n / std::gcd(n, mod(a, n));
    return Rational(mobius(m) * (euler_phi(n) / euler_phi(m)));
}

Rational trace_to_rationals(const CyclotomicNumber& x) {
    Rational sum = 0;
    for (const auto& [e, c] : x.terms()) sum += c * root_trace(x.conductor(), e);
    return sum;
}

Rational trace_over(const CyclotomicNumber& x, std::int64_t m, std::int64_t k) {
    const std::int64_t n = x.conductor();
    const std::int64_t l = std::lcm(n, m);
    Rational sum = 0;
    for (const auto& [e, c] : x.terms()) sum += c * root_trace(l, e * (l / n) + k * (l / m));
    return sum * euler_phi(m) / euler_phi(l);
}

CyclotomicNumber gauss_sqrt(std::int64_t q, int sign) {
    if (q % 2 == 0) throw UnsupportedInput("gauss_sqrt needs odd q");
    const auto pp = as_prime_power(q);
    if (!pp) throw UnsupportedInput("gauss_sqrt needs a prime power");
    if (sign != 1 && sign != -1) throw UnsupportedInput("sign must be +1 or -1");
    if (mod(q - sign, 4) != 0) throw UnsupportedInput("sign must be congruent to q mod 4");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), pp->p, pp->f / 2);
    if (pp->f % 2 == 0) return CyclotomicNumber(Rational(scale));
    std::vector<CyclotomicNumber::Term> raw;
    for (std::int64_t a = 1; a < pp->p; ++a) raw.emplace_back(a, Rational(legendre(a, pp->p)));
    return CyclotomicNumber::from_terms(pp->p, raw) * Rational(scale);
}

}  // namespace help2p
