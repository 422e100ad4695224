#include "help2p/lattice_oracle.hpp"

#include "parallel.hpp"

#include <random>
#include <utility>

namespace help2p {

namespace {

std::uint64_t mask_for(int k) { return k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1; }

void check_precision(int k) {
    if (k < 1 || k > 63) throw PrecisionError("precision must lie in [1, 63], got " + std::to_string(k));
}

}  // namespace

TruncatedTwoAdicInt::TruncatedTwoAdicInt(std::int64_t value, int precision) : precision_(precision) {
    check_precision(precision);
    residue_ = static_cast<std::uint64_t>(value) & mask_for(precision);
}

std::int64_t TruncatedTwoAdicInt::signed_value() const {
    const std::uint64_t half = std::uint64_t{1} << (precision_ - 1);
    return residue_ >= half ? static_cast<std::int64_t>(residue_) - static_cast<std::int64_t>(2 * half)
                            : static_cast<std::int64_t>(residue_);
}

bool TruncatedTwoAdicInt::divisible_by_two_power(int j) const {
    if (j < 0 || j > precision_) throw PrecisionError("cannot test divisibility beyond the working precision");
    return (residue_ & mask_for(j)) == 0;
}

void TruncatedTwoAdicInt::require_same(const TruncatedTwoAdicInt& o) const {
    if (precision_ != o.precision_)
        throw PrecisionError("mixed precisions " + std::to_string(precision_) + " and " + std::to_string(o.precision_));
}

TruncatedTwoAdicInt TruncatedTwoAdicInt::operator-() const {
    TruncatedTwoAdicInt out = *this;
    out.residue_ = (~residue_ + 1) & mask_for(precision_);
    return out;
}

TruncatedTwoAdicInt& TruncatedTwoAdicInt::operator+=(const TruncatedTwoAdicInt& o) {
    require_same(o);
    residue_ = (residue_ + o.residue_) & mask_for(precision_);
    return *this;
}

TruncatedTwoAdicInt& TruncatedTwoAdicInt::operator-=(const TruncatedTwoAdicInt& o) {
    require_same(o);
    residue_ = (residue_ - o.residue_) & mask_for(precision_);
    return *this;
}

TruncatedTwoAdicInt& TruncatedTwoAdicInt::operator*=(const TruncatedTwoAdicInt& o) {
    require_same(o);
    residue_ = (residue_ * o.residue_) & mask_for(precision_);
    return *this;
}

TruncatedMatrix::TruncatedMatrix(std::size_t dimension, int precision)
    : dim_(dimension), precision_(precision), data_(dimension * dimension, 0) {
    check_precision(precision);
}

TruncatedMatrix TruncatedMatrix::identity(std::size_t dimension, int precision) {
    TruncatedMatrix m(dimension, precision);
    for (std::size_t i = 0; i < dimension; ++i) m.data_[i * dimension + i] = 1;
    return m;
}

TruncatedMatrix TruncatedMatrix::from_rows(const std::vector<std::vector<std::int64_t>>& rows, int precision) {
    TruncatedMatrix m(rows.size(), precision);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw DataError("matrix rows must form a square");
        for (std::size_t j = 0; j < rows.size(); ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

TruncatedTwoAdicInt TruncatedMatrix::at(std::size_t i, std::size_t j) const {
    return TruncatedTwoAdicInt(static_cast<std::int64_t>(data_.at(i * dim_ + j)), precision_);
}

void TruncatedMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
    data_.at(i * dim_ + j) = static_cast<std::uint64_t>(value) & mask_for(precision_);
}

void TruncatedMatrix::require_same(const TruncatedMatrix& o) const {
    if (precision_ != o.precision_)
        throw PrecisionError("mixed precisions " + std::to_string(precision_) + " and " + std::to_string(o.precision_));
    if (dim_ != o.dim_) throw DataError("dimension mismatch");
}

TruncatedMatrix& TruncatedMatrix::operator+=(const TruncatedMatrix& o) {
    require_same(o);
    const auto mask = mask_for(precision_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = (data_[i] + o.data_[i]) & mask;
    return *this;
}

TruncatedMatrix& TruncatedMatrix::operator-=(const TruncatedMatrix& o) {
    require_same(o);
    const auto mask = mask_for(precision_);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] = (data_[i] - o.data_[i]) & mask;
    return *this;
}

TruncatedMatrix& TruncatedMatrix::operator*=(std::int64_t s) {
    const auto mask = mask_for(precision_);
    for (auto& x : data_) x = (x * static_cast<std::uint64_t>(s)) & mask;
    return *this;
}

TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b) {
    a.require_same(b);
    const std::size_t n = a.dim_;
    TruncatedMatrix out(n, a.precision_);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            const std::uint64_t x = a.data_[i * n + l];
            if (x == 0) continue;
            for (std::size_t j = 0; j < n; ++j) out.data_[i * n + j] += x * b.data_[l * n + j];
        }
    const auto mask = mask_for(a.precision_);
    for (auto& x : out.data_) x &= mask;
    return out;
}

TruncatedTwoAdicInt TruncatedMatrix::trace() const {
    std::uint64_t t = 0;
    for (std::size_t i = 0; i < dim_; ++i) t += data_[i * dim_ + i];
    return TruncatedTwoAdicInt(static_cast<std::int64_t>(t & mask_for(precision_)), precision_);
}

bool TruncatedMatrix::congruent(const TruncatedMatrix& o, int j) const {
    require_same(o);
    if (j > precision_) throw PrecisionError("congruence beyond the working precision");
    const auto mask = mask_for(j);
    for (std::size_t i = 0; i < data_.size(); ++i)
        if (((data_[i] - o.data_[i]) & mask) != 0) return false;
    return true;
}

bool TruncatedMatrix::is_involution() const { return *this * *this == identity(dim_, precision_); }

std::int64_t recover_trace(const TruncatedMatrix& m) {
    if (!m.is_involution()) throw DataError("trace recovery needs an involution");
    const auto dim = static_cast<std::int64_t>(m.dimension());
    if (2 * dim >= (std::int64_t{1} << (m.precision() - 1)))
        throw DataError("dimension " + std::to_string(dim) + " too large for precision " + std::to_string(m.precision()));
    const std::int64_t t = m.trace().signed_value();
    if (t > dim || t < -dim || (dim - t) % 2 != 0)
        throw DataError("trace residue " + std::to_string(t) + " is not an involution trace in dimension " +
                        std::to_string(dim));
    return t;
}

// ---------------------------------------------------------------------------
// Patterns

namespace {

struct BlockView {
    const TruncatedMatrix& m;
    std::size_t row0, col0;
    std::uint64_t operator()(std::size_t i, std::size_t j) const { return m.residue(row0 + i, col0 + j); }
};

}  // namespace

bool satisfies_v4_pattern(const TruncatedMatrix& x, const TruncatedMatrix& y, const TruncatedMatrix& z) {
    const std::size_t a = x.dimension(), c = y.dimension();
    if (x.precision() != y.precision() || x.precision() != z.precision())
        throw PrecisionError("triple components must share one precision");
    if (z.dimension() != a + c) return false;
    if (x.precision() < 2) throw PrecisionError("the pattern needs precision at least 2");
    const BlockView upper_left{z, 0, 0}, upper_right{z, 0, a}, lower_right{z, a, a};
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < a; ++j)
            if (((upper_left(i, j) - x.residue(i, j)) & 3) != 0) return false;
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (((lower_right(i, j) - y.residue(i, j)) & 3) != 0) return false;
    for (std::size_t i = 0; i < a; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if ((upper_right(i, j) & 3) != 0) return false;
    return true;
}

V4Triple::V4Triple(TruncatedMatrix x, TruncatedMatrix y, TruncatedMatrix z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
    if (!satisfies_v4_pattern(x_, y_, z_)) throw DataError("triple violates the congruence pattern modulo 4");
}

V4Triple operator*(const V4Triple& l, const V4Triple& r) { return V4Triple(l.x_ * r.x_, l.y_ * r.y_, l.z_ * r.z_); }

D8Triple::D8Triple(TruncatedMatrix a, TruncatedMatrix b, TruncatedMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), m1_(a_ + b_ * 2 + c_ * 4), m2_(a_ + b_ * 4) {
    if (a_.precision() < 3) throw PrecisionError("the dihedral pattern needs precision at least 3");
}

// ---------------------------------------------------------------------------
// Involution lattices

namespace {

using Gf2Matrix = std::vector<std::vector<std::uint8_t>>;

std::size_t gf2_rank(Gf2Matrix m) {
    std::size_t rank = 0;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    for (std::size_t col = 0; col < cols && rank < m.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < m.size() && !m[pivot][col]) ++pivot;
        if (pivot == m.size()) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < m.size(); ++r)
            if (r != rank && m[r][col])
                for (std::size_t j = col; j < cols; ++j) m[r][j] ^= m[rank][j];
        ++rank;
    }
    return rank;
}

Gf2Matrix reduce_mod2(const TruncatedMatrix& m) {
    Gf2Matrix out(m.dimension(), std::vector<std::uint8_t>(m.dimension()));
    for (std::size_t i = 0; i < m.dimension(); ++i)
        for (std::size_t j = 0; j < m.dimension(); ++j) out[i][j] = m.residue(i, j) & 1;
    return out;
}

}  // namespace

InvolutionShape involution_shape(const TruncatedMatrix& m) {
    const std::int64_t trace = recover_trace(m);
    const auto dim = static_cast<std::int64_t>(m.dimension());
    const auto free_rank = static_cast<std::int64_t>(
        gf2_rank(reduce_mod2(m - TruncatedMatrix::identity(m.dimension(), m.precision()))));
    const std::int64_t rest = dim - 2 * free_rank;
    if (rest < 0 || (rest + trace) % 2 != 0 || rest + trace < 0 || rest - trace < 0)
        throw DataError("inconsistent involution shape");
    return {free_rank, (rest + trace) / 2, (rest - trace) / 2};
}

// ---------------------------------------------------------------------------
// The order generated by (1,1,1), (2,4,0), (4,0,0)

std::array<LatticeVector, 3> lambda_basis() {
    return {LatticeVector{1, 1, 1}, LatticeVector{2, 4, 0}, LatticeVector{4, 0, 0}};
}

std::optional<LatticeVector> lambda_membership(const LatticeVector& v) {
    const Integer a = v[2];
    const Integer b4 = v[1] - v[2];
    if (!mpz_divisible_2exp_p(b4.get_mpz_t(), 2)) return std::nullopt;
    const Integer b = b4 / 4;
    const Integer c4 = v[0] - a - 2 * b;
    if (!mpz_divisible_2exp_p(c4.get_mpz_t(), 2)) return std::nullopt;
    return LatticeVector{a, b, Integer(c4 / 4)};
}

LambdaClosureReport lambda_closure_check() {
    LambdaClosureReport report;
    report.closed = true;
    const auto basis = lambda_basis();
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            LambdaProduct p{i, j, {}, std::nullopt};
            for (std::size_t t = 0; t < 3; ++t) p.product[t] = basis[i][t] * basis[j][t];
            p.coefficients = lambda_membership(p.product);
            report.closed = report.closed && p.coefficients.has_value();
            report.products.push_back(std::move(p));
        }
    return report;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

using Rng = std::mt19937_64;

struct LiftFailure {};

// Dense rectangular matrix over F_2 for the linear lifting steps.
struct BitMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::uint8_t> bits;

    BitMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), bits(r * c, 0) {}
    std::uint8_t& operator()(std::size_t i, std::size_t j) { return bits[i * cols + j]; }
    std::uint8_t operator()(std::size_t i, std::size_t j) const { return bits[i * cols + j]; }
};

BitMatrix bits_of(const TruncatedMatrix& m, std::size_t row0, std::size_t col0, std::size_t rows, std::size_t cols,
                  int shift = 0) {
    BitMatrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) out(i, j) = (m.residue(row0 + i, col0 + j) >> shift) & 1;
    return out;
}

// A uniformly random solution E (rows x cols) of left * E + E * right = rhs over F_2.
std::optional<BitMatrix> solve_sylvester(const BitMatrix& left, const BitMatrix& right, const BitMatrix& rhs,
                                         Rng& rng) {
    const std::size_t r = rhs.rows, c = rhs.cols, unknowns = r * c;
    Gf2Matrix system(unknowns, std::vector<std::uint8_t>(unknowns + 1, 0));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            auto& row = system[i * c + j];
            for (std::size_t p = 0; p < r; ++p) row[p * c + j] ^= left(i, p);
            for (std::size_t q = 0; q < c; ++q) row[i * c + q] ^= right(q, j);
            row[unknowns] = rhs(i, j);
        }
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < unknowns && rank < unknowns; ++col) {
        std::size_t pivot = rank;
        while (pivot < unknowns && !system[pivot][col]) ++pivot;
        if (pivot == unknowns) continue;
        std::swap(system[rank], system[pivot]);
        for (std::size_t row = 0; row < unknowns; ++row)
            if (row != rank && system[row][col])
                for (std::size_t j = col; j <= unknowns; ++j) system[row][j] ^= system[rank][j];
        pivot_cols.push_back(col);
        ++rank;
    }
    for (std::size_t row = rank; row < unknowns; ++row)
        if (system[row][unknowns]) return std::nullopt;
    std::vector<std::uint8_t> x(unknowns, 0);
    std::vector<bool> is_pivot(unknowns, false);
    for (auto col : pivot_cols) is_pivot[col] = true;
    for (std::size_t v = 0; v < unknowns; ++v)
        if (!is_pivot[v]) x[v] = rng() & 1;
    for (std::size_t row = 0; row < rank; ++row) {
        std::uint8_t value = system[row][unknowns];
        for (std::size_t v = 0; v < unknowns; ++v)
            if (!is_pivot[v] && system[row][v]) value ^= x[v];
        x[pivot_cols[row]] = value;
    }
    BitMatrix out(r, c);
    out.bits = std::move(x);
    return out;
}

TruncatedMatrix random_matrix(std::size_t n, int k, Rng& rng) {
    TruncatedMatrix m(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.set(i, j, static_cast<std::int64_t>(rng() >> 1));
    return m;
}

std::uint64_t inverse_of_odd(std::uint64_t a) {
    std::uint64_t x = a;
    for (int i = 0; i < 6; ++i) x *= 2 - a * x;
    return x;
}

std::optional<TruncatedMatrix> inverse(const TruncatedMatrix& m) {
    const std::size_t n = m.dimension();
    const int k = m.precision();
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(2 * n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m.residue(i, j);
        a[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && (a[pivot][col] & 1) == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[col], a[pivot]);
        const std::uint64_t inv = inverse_of_odd(a[col][col]);
        for (auto& x : a[col]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const std::uint64_t f = a[r][col];
            for (std::size_t j = 0; j < 2 * n; ++j) a[r][j] -= f * a[col][j];
        }
    }
    TruncatedMatrix out(n, k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out.set(i, j, static_cast<std::int64_t>(a[i][n + j]));
    return out;
}

// Random conjugate of a block diagonal seed made of +-1 entries and 2x2 swaps,
// so every lattice shape occurs.
TruncatedMatrix random_involution(std::size_t n, int k, Rng& rng) {
    TruncatedMatrix seed(n, k);
    const std::size_t swaps = std::uniform_int_distribution<std::size_t>(0, n / 2)(rng);
    std::size_t i = 0;
    for (std::size_t s = 0; s < swaps; ++s, i += 2) {
        seed.set(i, i + 1, 1);
        seed.set(i + 1, i, 1);
    }
    for (; i < n; ++i) seed.set(i, i, (rng() & 1) ? 1 : -1);
    for (;;) {
        auto p = random_matrix(n, k, rng);
        if (auto p_inv = inverse(p)) return p * seed * *p_inv;
    }
}

constexpr int kWorkPrecision = 63;
constexpr int kMaxSamplingPrecision = 56;

// One digit step: z^2 = 1 mod 4 becomes z^2 = 1 mod 8 through a correction 4E.
void lift_to_eight(TruncatedMatrix& z, Rng& rng) {
    const std::size_t n = z.dimension();
    const int k = z.precision();
    const TruncatedMatrix defect = TruncatedMatrix::identity(n, k) - z * z;
    if (!defect.congruent(TruncatedMatrix(n, k), 2)) throw std::logic_error("lifting needs z^2 = 1 mod 4");
    const BitMatrix z_bits = bits_of(z, 0, 0, n, n);
    const auto e = solve_sylvester(z_bits, z_bits, bits_of(defect, 0, 0, n, n, 2), rng);
    if (!e) throw LiftFailure{};
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if ((*e)(r, c)) z.set(r, c, z.at(r, c).signed_value() + 4);
}

TruncatedMatrix halve(const TruncatedMatrix& m) {
    TruncatedMatrix out(m.dimension(), m.precision());
    for (std::size_t i = 0; i < m.dimension(); ++i)
        for (std::size_t j = 0; j < m.dimension(); ++j) {
            if (m.residue(i, j) & 1) throw std::logic_error("halving an odd entry");
            out.set(i, j, static_cast<std::int64_t>(m.residue(i, j) >> 1));
        }
    return out;
}

// z^2 = 1 mod 8 at the working precision; Newton steps z <- z^-1 (z^2 + 1) / 2
// converge to an involution congruent to z modulo 4. Each halving costs the top
// bit, so the result is exact modulo 2^kMaxSamplingPrecision.
TruncatedMatrix newton_involution(TruncatedMatrix z) {
    const std::size_t n = z.dimension();
    const auto one = TruncatedMatrix::identity(n, z.precision());
    for (int step = 0; step < 7; ++step) {
        const auto z_inv = inverse(z);
        if (!z_inv) throw std::logic_error("Newton step on a singular matrix");
        z = *z_inv * (one + halve(z * z - one));
    }
    return z;
}

TruncatedMatrix truncate(const TruncatedMatrix& m, int k) {
    TruncatedMatrix out(m.dimension(), k);
    for (std::size_t i = 0; i < m.dimension(); ++i)
        for (std::size_t j = 0; j < m.dimension(); ++j) out.set(i, j, static_cast<std::int64_t>(m.residue(i, j)));
    return out;
}

// Random L (c x a) with L X + Y L = 0 mod 4.
std::optional<std::vector<std::vector<std::int64_t>>> pattern_corner(const TruncatedMatrix& x, const TruncatedMatrix& y,
                                                                     Rng& rng) {
    const std::size_t a = x.dimension(), c = y.dimension();
    const BitMatrix xb = bits_of(x, 0, 0, a, a), yb = bits_of(y, 0, 0, c, c);
    const auto low = solve_sylvester(yb, xb, BitMatrix(c, a), rng);
    if (!low) return std::nullopt;
    // Carry of (Y L0 + L0 X) into the second digit.
    BitMatrix carry(c, a);
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < a; ++j) {
            std::uint64_t s = 0;
            for (std::size_t p = 0; p < c; ++p) s += y.residue(i, p) * (*low)(p, j);
            for (std::size_t q = 0; q < a; ++q) s += (*low)(i, q) * x.residue(q, j);
            carry(i, j) = (s >> 1) & 1;
        }
    const auto high = solve_sylvester(yb, xb, carry, rng);
    if (!high) return std::nullopt;
    std::vector<std::vector<std::int64_t>> out(c, std::vector<std::int64_t>(a));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < a; ++j) out[i][j] = (*low)(i, j) + 2 * (*high)(i, j);
    return out;
}

// Z = [[X + 4P, 4U], [L + 4N, Y + 4Q]] for random P, Q, U, N.
TruncatedMatrix pattern_matrix(const TruncatedMatrix& x, const TruncatedMatrix& y,
                               const std::vector<std::vector<std::int64_t>>& corner, Rng& rng) {
    const std::size_t a = x.dimension(), c = y.dimension();
    const int k = x.precision();
    TruncatedMatrix z(a + c, k);
    const auto noise = [&] { return (rng() >> 2) << 2; };
    for (std::size_t i = 0; i < a + c; ++i)
        for (std::size_t j = 0; j < a + c; ++j) {
            std::uint64_t v = noise();
            if (i < a && j < a) v += x.residue(i, j);
            if (i >= a && j >= a) v += y.residue(i - a, j - a);
            if (i >= a && j < a) v += static_cast<std::uint64_t>(corner[i - a][j]);
            z.set(i, j, static_cast<std::int64_t>(v));
        }
    return z;
}

void require_sampling_args(std::size_t dim, int k) {
    if (k < 4 || k > kMaxSamplingPrecision)
        throw UnsupportedInput("sampling precision must lie in [4, " + std::to_string(kMaxSamplingPrecision) + "]");
    if (dim == 0) throw UnsupportedInput("dimensions must be positive");
    if (2 * dim >= (std::uint64_t{1} << (k - 1))) throw UnsupportedInput("dimension too large for exact trace recovery");
}

template <class Attempt>
auto with_retries(unsigned budget, std::uint64_t seed, Attempt&& attempt) -> Sampled<decltype(attempt())> {
    unsigned retries = 0;
    for (;;) {
        try {
            return {attempt(), retries};
        } catch (const LiftFailure&) {
            if (++retries > budget)
                throw SamplingFailure("lifting failed " + std::to_string(retries) + " times for seed " +
                                      std::to_string(seed));
        }
    }
}

TruncatedMatrix quarter(const TruncatedMatrix& m) { return halve(halve(m)); }

}  // namespace

Sampled<V4Triple> sample_involution_v4(std::size_t a, std::size_t c, int k, std::uint64_t seed,
                                       unsigned retry_budget) {
    if (a == 0 || c == 0) throw UnsupportedInput("dimensions must be positive");
    require_sampling_args(a + c, k);
    Rng rng(seed);
    return with_retries(retry_budget, seed, [&] {
        const auto x = random_involution(a, kWorkPrecision, rng);
        const auto y = random_involution(c, kWorkPrecision, rng);
        const auto corner = pattern_corner(x, y, rng);
        if (!corner) throw LiftFailure{};
        auto z = pattern_matrix(x, y, *corner, rng);
        lift_to_eight(z, rng);
        return V4Triple(truncate(x, k), truncate(y, k), truncate(newton_involution(std::move(z)), k));
    });
}

Sampled<D8Triple> sample_involution_d8(std::size_t a, int k, std::uint64_t seed, unsigned retry_budget) {
    require_sampling_args(a, k);
    Rng rng(seed);
    return with_retries(retry_budget, seed, [&] {
        const auto base = random_involution(a, kWorkPrecision, rng);
        auto m2 = base + random_matrix(a, kWorkPrecision, rng) * 4;
        lift_to_eight(m2, rng);
        const auto b = quarter(newton_involution(std::move(m2)) - base);
        auto m1 = base + b * 2 + random_matrix(a, kWorkPrecision, rng) * 4;
        lift_to_eight(m1, rng);
        const auto c = quarter(newton_involution(std::move(m1)) - base - b * 2);
        return D8Triple(truncate(base, k), truncate(b, k), truncate(c, k));
    });
}

bool check_trace_identity_v4(const V4Triple& t) {
    return recover_trace(t.z()) == recover_trace(t.x()) + recover_trace(t.y());
}

bool check_trace_identity_d8(const D8Triple& t) {
    recover_trace(t.m3());
    return recover_trace(t.m1()) == recover_trace(t.m2());
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

struct SampleOutcome {
    bool passed = false;
    bool sampling_failed = false;
    unsigned retries = 0;
    std::optional<OracleFailure> failure;
};

template <class Run>
void run_samples(OracleReport& report, unsigned jobs, Run&& run) {
    std::vector<SampleOutcome> outcomes(report.samples);
    detail::parallel_for(report.samples, jobs, [&](std::size_t i) { outcomes[i] = run(report.seed + i); });
    for (auto& o : outcomes) {
        report.passes += o.passed;
        report.sampling_failures += o.sampling_failed;
        report.retries += o.retries;
        if (o.failure) report.failures.push_back(std::move(*o.failure));
    }
}

}  // namespace

OracleReport run_v4_trace_experiment(std::size_t a, std::size_t c, int k, std::size_t samples, std::uint64_t seed,
                                     unsigned jobs) {
    if (a == 0 || c == 0) throw UnsupportedInput("dimensions must be positive");
    require_sampling_args(a + c, k);
    OracleReport report{"v4-trace-identity", a, c, k, samples, seed, 0, 0, 0, {}};
    run_samples(report, jobs, [&](std::uint64_t s) {
        SampleOutcome out;
        try {
            const auto sample = sample_involution_v4(a, c, k, s);
            out.retries = sample.retries;
            const auto& t = sample.value;
            std::string reason;
            try {
                out.passed = check_trace_identity_v4(t);
                if (!out.passed) reason = "tr Z != tr X + tr Y";
            } catch (const DataError& e) {
                reason = e.what();
            }
            if (!out.passed)
                out.failure = OracleFailure{s, reason, {{"X", t.x().residues()}, {"Y", t.y().residues()}, {"Z", t.z().residues()}}};
        } catch (const SamplingFailure&) {
            out.sampling_failed = true;
        }
        return out;
    });
    return report;
}

OracleReport run_d8_trace_experiment(std::size_t a, int k, std::size_t samples, std::uint64_t seed, unsigned jobs) {
    require_sampling_args(a, k);
    OracleReport report{"d8-trace-identity", a, 0, k, samples, seed, 0, 0, 0, {}};
    run_samples(report, jobs, [&](std::uint64_t s) {
        SampleOutcome out;
        try {
            const auto sample = sample_involution_d8(a, k, s);
            out.retries = sample.retries;
            const auto& t = sample.value;
            std::string reason;
            try {
                out.passed = check_trace_identity_d8(t);
                if (!out.passed) reason = "tr M1 != tr M2";
            } catch (const DataError& e) {
                reason = e.what();
            }
            if (!out.passed)
                out.failure = OracleFailure{s, reason, {{"A", t.a().residues()}, {"B", t.b().residues()}, {"C", t.c().residues()}}};
        } catch (const SamplingFailure&) {
            out.sampling_failed = true;
        }
        return out;
    });
    return report;
}

OracleReport v4_pattern_closure(std::size_t a, std::size_t c, int k, std::size_t samples, std::uint64_t seed) {
    require_sampling_args(a + c, k);
    OracleReport report{"v4-pattern-closure", a, c, k, samples, seed, 0, 0, 0, {}};
    run_samples(report, 1, [&](std::uint64_t s) {
        Rng rng(s);
        const auto random_triple = [&] {
            auto x = random_matrix(a, k, rng);
            auto y = random_matrix(c, k, rng);
            std::vector<std::vector<std::int64_t>> corner(c, std::vector<std::int64_t>(a));
            for (auto& row : corner)
                for (auto& v : row) v = static_cast<std::int64_t>(rng() & 3);
            auto z = pattern_matrix(x, y, corner, rng);
            return V4Triple(std::move(x), std::move(y), std::move(z));
        };
        const auto l = random_triple();
        const auto r = random_triple();
        SampleOutcome out;
        try {
            (void)(l * r);
            out.passed = true;
        } catch (const DataError& e) {
            out.failure = OracleFailure{s, e.what(), {{"Z1", l.z().residues()}, {"Z2", r.z().residues()}}};
        }
        return out;
    });
    return report;
}

nlohmann::json to_json(const OracleReport& report) {
    nlohmann::json parameters{{"a", report.a}, {"k", report.k}, {"samples", report.samples}, {"seed", report.seed}};
    if (report.experiment.rfind("v4", 0) == 0) parameters["c"] = report.c;
    nlohmann::json failures = nlohmann::json::array();
    for (const auto& f : report.failures) failures.push_back({{"seed", f.seed}, {"reason", f.reason}, {"matrices", f.matrices}});
    return {{"experiment", report.experiment},
            {"parameters", parameters},
            {"passes", report.passes},
            {"retries", report.retries},
            {"sampling_failures", report.sampling_failures},
            {"failures", failures}};
}

nlohmann::json to_json(const LambdaClosureReport& report) {
    const auto vec = [](const LatticeVector& v) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& x : v) out.push_back(x.get_str());
        return out;
    };
    nlohmann::json products = nlohmann::json::array();
    for (const auto& p : report.products)
        products.push_back({{"left", p.left},
                            {"right", p.right},
                            {"product", vec(p.product)},
                            {"coefficients", p.coefficients ? vec(*p.coefficients) : nlohmann::json(nullptr)}});
    return {{"experiment", "lambda-closure"}, {"closed", report.closed}, {"products", products}};
}

}  // namespace help2p
