#include "int_lattice.hpp"

#include <algorithm>
#include <utility>

namespace help2p::detail {
namespace {

Integer dot(const IntVector& a, const IntVector& b) {
    Integer s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Unimodular operation on columns (i, j) given their current values a, b:
// afterwards column i has value gcd(a, b) and column j has value 0.
void combine(IntVector& ci, IntVector& cj, Integer& a, Integer& b) {
    if (b == 0) return;
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    const Integer ag = a / g, bg = b / g;
    for (std::size_t r = 0; r < ci.size(); ++r) {
        const Integer x = ci[r], y = cj[r];
        ci[r] = s * x + t * y;
        cj[r] = ag * y - bg * x;
    }
    a = g;
    b = 0;
}

// Folds the column values into one column; returns its index (or npos if all vanish).
std::size_t fold(std::vector<IntVector>& columns, std::vector<Integer>& values) {
    std::size_t pivot = values.size();
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] == 0) continue;
        if (pivot == values.size()) {
            pivot = j;
            continue;
        }
        combine(columns[pivot], columns[j], values[pivot], values[j]);
    }
    return pivot;
}

Rational round_nearest(const Rational& x) {
    Integer f;
    const Rational shifted = x + Rational(1, 2);
    mpz_fdiv_q(f.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
    return Rational(f);
}

struct GramSchmidt {
    std::vector<std::vector<Rational>> star;
    std::vector<std::vector<Rational>> mu;
    std::vector<Rational> norm;
};

Rational rdot(const std::vector<Rational>& a, const IntVector& b) {
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

GramSchmidt gram_schmidt(const std::vector<IntVector>& b) {
    GramSchmidt gs;
    const std::size_t k = b.size();
    gs.star.resize(k);
    gs.mu.assign(k, std::vector<Rational>(k, 0));
    gs.norm.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        gs.star[i].assign(b[i].begin(), b[i].end());
        for (std::size_t j = 0; j < i; ++j) {
            gs.mu[i][j] = rdot(gs.star[j], b[i]) / gs.norm[j];
            for (std::size_t r = 0; r < b[i].size(); ++r) gs.star[i][r] -= gs.mu[i][j] * gs.star[j][r];
        }
        gs.norm[i] = 0;
        for (const auto& x : gs.star[i]) gs.norm[i] += x * x;
    }
    return gs;
}

void subtract_multiple(IntVector& target, const IntVector& source, const Integer& q) {
    for (std::size_t r = 0; r < target.size(); ++r) target[r] -= q * source[r];
}

}  // namespace

LatticeBuilder::LatticeBuilder(std::size_t dim) : dim_(dim) {
    for (std::size_t i = 0; i < dim; ++i) {
        IntVector e(dim, 0);
        e[i] = 1;
        columns_.push_back(std::move(e));
    }
}

void LatticeBuilder::add_congruence(const IntVector& row, const Integer& modulus) {
    std::vector<Integer> values;
    for (const auto& c : columns_) {
        Integer v = dot(row, c) % modulus;
        values.push_back(std::move(v));
    }
    const std::size_t pivot = fold(columns_, values);
    if (pivot == values.size()) return;
    Integer g;
    mpz_gcd(g.get_mpz_t(), values[pivot].get_mpz_t(), modulus.get_mpz_t());
    const Integer scale = modulus / g;
    for (auto& x : columns_[pivot]) x *= scale;
    hermite_reduce();
}

void LatticeBuilder::add_equality(const IntVector& row) {
    std::vector<Integer> values;
    for (const auto& c : columns_) values.push_back(dot(row, c));
    const std::size_t pivot = fold(columns_, values);
    if (pivot == values.size()) return;
    columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(pivot));
    hermite_reduce();
}

void LatticeBuilder::hermite_reduce() {
    const std::size_t r = columns_.size();
    std::size_t pivot = 0;
    for (std::size_t row = 0; row < dim_ && pivot < r; ++row) {
        for (std::size_t j = pivot + 1; j < r; ++j) {
            Integer a = columns_[pivot][row], b = columns_[j][row];
            if (a == 0 && b != 0) {
                std::swap(columns_[pivot], columns_[j]);
                continue;
            }
            combine(columns_[pivot], columns_[j], a, b);
        }
        if (columns_[pivot][row] == 0) continue;
        if (columns_[pivot][row] < 0)
            for (auto& x : columns_[pivot]) x = -x;
        const Integer& d = columns_[pivot][row];
        for (std::size_t j = 0; j < pivot; ++j) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), columns_[j][row].get_mpz_t(), d.get_mpz_t());
            if (q != 0) subtract_multiple(columns_[j], columns_[pivot], q);
        }
        ++pivot;
    }
}

std::optional<AffineLattice> slice_last_coordinate(const std::vector<IntVector>& columns, std::size_t dim) {
    auto cols = columns;
    std::vector<Integer> values;
    for (const auto& c : cols) values.push_back(c.at(dim));
    const std::size_t pivot = fold(cols, values);
    if (pivot == values.size() || abs(values[pivot]) != 1) return std::nullopt;
    AffineLattice out;
    out.offset.assign(cols[pivot].begin(), cols[pivot].begin() + static_cast<std::ptrdiff_t>(dim));
    if (values[pivot] < 0)
        for (auto& x : out.offset) x = -x;
    for (std::size_t j = 0; j < cols.size(); ++j)
        if (j != pivot) out.generators.emplace_back(cols[j].begin(), cols[j].begin() + static_cast<std::ptrdiff_t>(dim));
    return out;
}

void lll_reduce(std::vector<IntVector>& b) {
    const std::size_t n = b.size();
    if (n < 2) return;
    const Rational delta(99, 100);
    auto gs = gram_schmidt(b);
    auto size_reduce = [&](std::size_t k, std::size_t l) {
        const Rational q = round_nearest(gs.mu[k][l]);
        if (q == 0) return;
        const Integer qi = q.get_num();
        subtract_multiple(b[k], b[l], qi);
        for (std::size_t j = 0; j < l; ++j) gs.mu[k][j] -= q * gs.mu[l][j];
        gs.mu[k][l] -= q;
    };
    std::size_t k = 1;
    while (k < n) {
        size_reduce(k, k - 1);
        if (gs.norm[k] < (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm[k - 1]) {
            std::swap(b[k], b[k - 1]);
            gs = gram_schmidt(b);
            k = std::max<std::size_t>(1, k - 1);
        } else {
            for (std::size_t l = k - 1; l-- > 0;) size_reduce(k, l);
            ++k;
        }
    }
}

void reduce_offset(IntVector& offset, const std::vector<IntVector>& columns) {
    if (columns.empty()) return;
    const auto gs = gram_schmidt(columns);
    for (std::size_t i = columns.size(); i-- > 0;) {
        const Rational c = round_nearest(rdot(gs.star[i], offset) / gs.norm[i]);
        if (c != 0) subtract_multiple(offset, columns[i], c.get_num());
    }
}

}  // namespace help2p::detail
