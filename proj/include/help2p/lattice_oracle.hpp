#pragma once

#include "help2p/arith.hpp"

#include "json.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace help2p {

class PrecisionError : public DataError {
public:
    using DataError::DataError;
};

// Retry budget exhausted while lifting an involution.
class SamplingFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Residue modulo 2^k, 1 <= k <= 63.
class TruncatedTwoAdicInt {
public:
    static constexpr int default_precision = 16;

    explicit TruncatedTwoAdicInt(std::int64_t value = 0, int precision = default_precision);

    int precision() const { return precision_; }
    std::uint64_t residue() const { return residue_; }
    // Representative in [-2^(k-1), 2^(k-1)).
    std::int64_t signed_value() const;
    // Whether the residue is 0 modulo 2^j, j <= k.
    bool divisible_by_two_power(int j) const;

    TruncatedTwoAdicInt operator-() const;
    TruncatedTwoAdicInt& operator+=(const TruncatedTwoAdicInt& o);
    TruncatedTwoAdicInt& operator-=(const TruncatedTwoAdicInt& o);
    TruncatedTwoAdicInt& operator*=(const TruncatedTwoAdicInt& o);
    friend TruncatedTwoAdicInt operator+(TruncatedTwoAdicInt a, const TruncatedTwoAdicInt& b) { return a += b; }
    friend TruncatedTwoAdicInt operator-(TruncatedTwoAdicInt a, const TruncatedTwoAdicInt& b) { return a -= b; }
    friend TruncatedTwoAdicInt operator*(TruncatedTwoAdicInt a, const TruncatedTwoAdicInt& b) { return a *= b; }
    friend bool operator==(const TruncatedTwoAdicInt&, const TruncatedTwoAdicInt&) = default;

private:
    void require_same(const TruncatedTwoAdicInt& o) const;

    std::uint64_t residue_ = 0;
    int precision_ = default_precision;
};

// Square matrix over Z/2^k.
class TruncatedMatrix {
public:
    TruncatedMatrix(std::size_t dimension, int precision);
    static TruncatedMatrix identity(std::size_t dimension, int precision);
    static TruncatedMatrix from_rows(const std::vector<std::vector<std::int64_t>>& rows, int precision);

    std::size_t dimension() const { return dim_; }
    int precision() const { return precision_; }

    TruncatedTwoAdicInt at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, std::int64_t value);
    std::uint64_t residue(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }
    // Row-major residues.
    const std::vector<std::uint64_t>& residues() const { return data_; }

    TruncatedMatrix& operator+=(const TruncatedMatrix& o);
    TruncatedMatrix& operator-=(const TruncatedMatrix& o);
    TruncatedMatrix& operator*=(std::int64_t s);
    friend TruncatedMatrix operator+(TruncatedMatrix a, const TruncatedMatrix& b) { return a += b; }
    friend TruncatedMatrix operator-(TruncatedMatrix a, const TruncatedMatrix& b) { return a -= b; }
    friend TruncatedMatrix operator*(TruncatedMatrix a, std::int64_t s) { return a *= s; }
    friend TruncatedMatrix operator*(const TruncatedMatrix& a, const TruncatedMatrix& b);
    friend bool operator==(const TruncatedMatrix&, const TruncatedMatrix&) = default;

    TruncatedTwoAdicInt trace() const;
    // Entry-wise congruence modulo 2^j.
    bool congruent(const TruncatedMatrix& o, int j) const;
    bool is_involution() const;

private:
    void require_same(const TruncatedMatrix& o) const;

    std::size_t dim_;
    int precision_;
    std::vector<std::uint64_t> data_;
};

// Integer trace of an involution, recovered from its residue; throws DataError
// if m is not an involution or the residue does not fit the dimension bound.
std::int64_t recover_trace(const TruncatedMatrix& m);

// (X, Y, Z) with Z = [[X', U], [L, Y']] where X' = X, Y' = Y and U = 0 modulo 4.
class V4Triple {
public:
    V4Triple(TruncatedMatrix x, TruncatedMatrix y, TruncatedMatrix z);  // throws DataError

    const TruncatedMatrix& x() const { return x_; }
    const TruncatedMatrix& y() const { return y_; }
    const TruncatedMatrix& z() const { return z_; }
    // Componentwise product.
    friend V4Triple operator*(const V4Triple& l, const V4Triple& r);

private:
    TruncatedMatrix x_, y_, z_;
};

bool satisfies_v4_pattern(const TruncatedMatrix& x, const TruncatedMatrix& y, const TruncatedMatrix& z);

// M1 = A + 2B + 4C, M2 = A + 4B, M3 = A.
class D8Triple {
public:
    D8Triple(TruncatedMatrix a, TruncatedMatrix b, TruncatedMatrix c);

    const TruncatedMatrix& a() const { return a_; }
    const TruncatedMatrix& b() const { return b_; }
    const TruncatedMatrix& c() const { return c_; }
    const TruncatedMatrix& m1() const { return m1_; }
    const TruncatedMatrix& m2() const { return m2_; }
    const TruncatedMatrix& m3() const { return a_; }

private:
    TruncatedMatrix a_, b_, c_, m1_, m2_;
};

// Decomposition of a 2-adic involution lattice into f regular summands of rank
// two and h, l trivial summands with eigenvalue +1, -1.
struct InvolutionShape {
    std::int64_t free_rank = 0;
    std::int64_t plus_rank = 0;
    std::int64_t minus_rank = 0;

    friend auto operator<=>(const InvolutionShape&, const InvolutionShape&) = default;
};

InvolutionShape involution_shape(const TruncatedMatrix& m);

// The order spanned by (1,1,1), (2,4,0), (4,0,0) inside Z^3 with componentwise product.
using LatticeVector = std::array<Integer, 3>;

std::array<LatticeVector, 3> lambda_basis();
// Coefficients on the basis, or nothing if v is not in the order.
std::optional<LatticeVector> lambda_membership(const LatticeVector& v);

struct LambdaProduct {
    std::size_t left = 0, right = 0;
    LatticeVector product;
    std::optional<LatticeVector> coefficients;
};

struct LambdaClosureReport {
    std::vector<LambdaProduct> products;  // all nine ordered pairs
    bool closed = false;
};

LambdaClosureReport lambda_closure_check();

template <class T>
struct Sampled {
    T value;
    unsigned retries = 0;  // unsolvable lifting steps that forced a restart
};

inline constexpr unsigned default_retry_budget = 64;

// X, Y independent random involutions; Z built in the pattern and lifted digit by digit.
Sampled<V4Triple> sample_involution_v4(std::size_t a, std::size_t c, int k, std::uint64_t seed,
                                       unsigned retry_budget = default_retry_budget);
// A a random involution; A + 4B and A + 2B + 4C lifted to involutions.
Sampled<D8Triple> sample_involution_d8(std::size_t a, int k, std::uint64_t seed,
                                       unsigned retry_budget = default_retry_budget);

// tr Z = tr X + tr Y; throws DataError if a component is not an involution or
// the dimension is too large for exact trace recovery.
bool check_trace_identity_v4(const V4Triple& t);
// tr M1 = tr M2, same preconditions.
bool check_trace_identity_d8(const D8Triple& t);

struct OracleFailure {
    std::uint64_t seed = 0;
    std::string reason;
    std::map<std::string, std::vector<std::uint64_t>> matrices;  // row-major residues
};

struct OracleReport {
    std::string experiment;
    std::size_t a = 0, c = 0;
    int k = TruncatedTwoAdicInt::default_precision;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t passes = 0;
    std::size_t retries = 0;
    std::size_t sampling_failures = 0;
    std::vector<OracleFailure> failures;  // in seed order

    bool clean() const { return failures.empty() && passes == samples; }
};

// Sample i uses seed + i.
OracleReport run_v4_trace_experiment(std::size_t a, std::size_t c, int k, std::size_t samples, std::uint64_t seed,
                                     unsigned jobs = 1);
OracleReport run_d8_trace_experiment(std::size_t a, int k, std::size_t samples, std::uint64_t seed, unsigned jobs = 1);
// Products of random pattern triples (not necessarily involutions) stay in the pattern.
OracleReport v4_pattern_closure(std::size_t a, std::size_t c, int k, std::size_t samples, std::uint64_t seed);

nlohmann::json to_json(const OracleReport& report);
nlohmann::json to_json(const LambdaClosureReport& report);

}  // namespace help2p
