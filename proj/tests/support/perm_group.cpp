#include "perm_group.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace help2p::testing {
namespace {

Perm compose(const Perm& a, const Perm& b) {  // apply b, then a
    Perm out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[b[i]];
    return out;
}

Complex root(std::int64_t n, std::int64_t k) {
    const double angle = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
    return std::polar(1.0, angle);
}

std::string label(std::int64_t order, int index) { return std::to_string(order) + static_cast<char>('a' + index); }

bool is_even(const Perm& p) {
    std::vector<bool> seen(p.size(), false);
    int transpositions = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = p[j]) {
            seen[j] = true;
            ++len;
        }
        transpositions += len - 1;
    }
    return transpositions % 2 == 0;
}

}  // namespace

int BruteGroup::order_of(int element) const {
    int o = 1;
    for (int x = element; x != 0; x = product[x][element]) ++o;
    return o;
}

int BruteGroup::power(int element, std::int64_t e) const {
    const int o = order_of(element);
    e = ((e % o) + o) % o;
    int x = 0;
    for (std::int64_t i = 0; i < e; ++i) x = product[x][element];
    return x;
}

BruteGroup brute_force(const std::string& name, int degree, const std::vector<Perm>& generators) {
    BruteGroup g;
    g.name = name;
    Perm id(degree);
    std::iota(id.begin(), id.end(), 0);
    std::map<Perm, int> index{{id, 0}};
    g.elements.push_back(id);
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
        for (const auto& s : generators) {
            Perm next = compose(s, g.elements[i]);
            if (index.emplace(next, static_cast<int>(g.elements.size())).second) g.elements.push_back(std::move(next));
        }
    }
    const int n = static_cast<int>(g.elements.size());
    g.product.assign(n, std::vector<int>(n));
    g.inverse.assign(n, 0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            g.product[a][b] = index.at(compose(g.elements[a], g.elements[b]));
            if (g.product[a][b] == 0) g.inverse[a] = b;
        }

    // Conjugacy classes, sorted by (element order, size, first element).
    std::vector<std::vector<int>> raw;
    std::vector<int> owner(n, -1);
    for (int x = 0; x < n; ++x) {
        if (owner[x] >= 0) continue;
        std::vector<int> cls;
        for (int y = 0; y < n; ++y) {
            const int c = g.product[g.product[y][x]][g.inverse[y]];
            if (owner[c] < 0) {
                owner[c] = static_cast<int>(raw.size());
                cls.push_back(c);
            }
        }
        raw.push_back(std::move(cls));
    }
    std::sort(raw.begin(), raw.end(), [&](const auto& a, const auto& b) {
        const int oa = g.order_of(a[0]), ob = g.order_of(b[0]);
        if (oa != ob) return oa < ob;
        if (a.size() != b.size()) return a.size() < b.size();
        return *std::min_element(a.begin(), a.end()) < *std::min_element(b.begin(), b.end());
    });
    const std::size_t k = raw.size();
    g.class_of.assign(n, 0);
    for (std::size_t c = 0; c < k; ++c) {
        for (int x : raw[c]) g.class_of[x] = c;
        g.representative.push_back(*std::min_element(raw[c].begin(), raw[c].end()));
    }

    // Class algebra: omega(K_i) omega = M_i omega.
    std::vector<Eigen::MatrixXd> m(k, Eigen::MatrixXd::Zero(k, k));
    for (std::size_t c = 0; c < k; ++c) {
        const int z = g.representative[c];
        for (int x = 0; x < n; ++x) m[g.class_of[x]](g.class_of[g.product[g.inverse[x]][z]], c) += 1;
    }
    // m[i](j, c) counts pairs (x in K_i, y in K_j) with xy = z_c, so omega_i omega_j = sum_c m[i](j,c) omega_c.
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> coef(-1, 1);
    Eigen::MatrixXd mix = Eigen::MatrixXd::Zero(k, k);
    for (std::size_t i = 0; i < k; ++i) mix += coef(rng) * m[i];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(mix);
    std::vector<std::vector<Complex>> rows;
    for (std::size_t v = 0; v < k; ++v) {
        Eigen::VectorXcd omega = solver.eigenvectors().col(static_cast<Eigen::Index>(v));
        omega /= omega(0);
        double norm = 0;
        for (std::size_t c = 0; c < k; ++c) norm += std::norm(omega(c)) / static_cast<double>(raw[c].size());
        const double deg = std::sqrt(n / norm);
        std::vector<Complex> row(k);
        for (std::size_t c = 0; c < k; ++c) row[c] = omega(c) * deg / static_cast<double>(raw[c].size());
        rows.push_back(std::move(row));
    }

    // Exact values from eigenvalue multiplicities on each cyclic subgroup.
    auto exact_row = [&](const std::vector<Complex>& row) {
        std::vector<CyclotomicNumber> out;
        for (std::size_t c = 0; c < k; ++c) {
            const int x = g.representative[c];
            const int o = g.order_of(x);
            std::vector<CyclotomicNumber::Term> terms;
            for (int e = 0; e < o; ++e) {
                Complex mu = 0;
                for (int j = 0; j < o; ++j) mu += row[g.class_of[g.power(x, j)]] * root(o, -static_cast<std::int64_t>(j) * e);
                mu /= o;
                const double r = std::round(mu.real());
                if (std::abs(mu - Complex(r, 0)) > 1e-6 || r < 0) throw std::runtime_error("non-integral multiplicity");
                if (r != 0) terms.emplace_back(e, Rational(static_cast<long>(r)));
            }
            out.push_back(CyclotomicNumber::from_terms(o, terms).compressed());
        }
        return out;
    };
    std::vector<std::pair<std::vector<CyclotomicNumber>, std::vector<Complex>>> both;
    for (const auto& row : rows) both.emplace_back(exact_row(row), row);
    std::sort(both.begin(), both.end(), [](const auto& a, const auto& b) {
        // Degree ascending, then values descending, so the trivial character comes first.
        const auto key = [](const std::vector<Complex>& r) {
            std::vector<std::pair<double, double>> v;
            for (const auto& z : r) v.emplace_back(-std::round(z.real() * 1e6), -std::round(z.imag() * 1e6));
            v[0].first = -v[0].first;
            return v;
        };
        return key(a.second) < key(b.second);
    });

    std::vector<ClassData> classes;
    std::map<std::int64_t, int> per_order;
    std::int64_t exponent = 1;
    for (std::size_t c = 0; c < k; ++c) {
        const std::int64_t o = g.order_of(g.representative[c]);
        exponent = std::lcm(exponent, o);
        classes.push_back({label(o, per_order[o]++), o, static_cast<long>(raw[c].size()), {}});
    }
    for (std::size_t c = 0; c < k; ++c)
        for (std::int64_t r : prime_divisors(exponent))
            classes[c].power_maps[r] = classes[g.class_of[g.power(g.representative[c], r)]].label;

    std::vector<std::vector<CyclotomicNumber>> exact;
    for (auto& [e, num] : both) {
        exact.push_back(e);
        g.numeric.push_back(num);
    }
    g.table = std::make_unique<CharacterTable>(n, name, std::move(classes), std::move(exact));
    return g;
}

BruteGroup symmetric_group(int n) {
    Perm cycle(n), swap(n);
    std::iota(swap.begin(), swap.end(), 0);
    std::swap(swap[0], swap[1]);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return brute_force("S" + std::to_string(n), n, {cycle, swap});
}

BruteGroup alternating_group(int n) {
    std::vector<Perm> gens;
    for (int i = 2; i < n; ++i) {
        Perm p(n);
        std::iota(p.begin(), p.end(), 0);
        p[0] = 1, p[1] = i, p[i] = 0;
        if (!is_even(p)) throw std::logic_error("3-cycle expected");
        gens.push_back(p);
    }
    return brute_force("A" + std::to_string(n), n, gens);
}

BruteGroup cyclic_group(int n) {
    Perm cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    return brute_force("C" + std::to_string(n), n, {cycle});
}

BruteGroup trivial_group() { return brute_force("1", 1, {}); }

int regular_rep_multiplicity(const BruteGroup& g, std::size_t chi, int element, std::int64_t k) {
    const int n = static_cast<int>(g.elements.size());
    const int o = g.order_of(element);
    const auto& row = g.numeric.at(chi);
    const double degree = row[0].real();
    auto left = [&](int h) {
        Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(n, n);
        for (int x = 0; x < n; ++x) l(g.product[h][x], x) = 1;
        return l;
    };
    Eigen::MatrixXcd central = Eigen::MatrixXcd::Zero(n, n);
    for (int h = 0; h < n; ++h) central += std::conj(row[g.class_of[h]]) * left(h);
    central *= degree / n;
    Eigen::MatrixXcd spectral = Eigen::MatrixXcd::Zero(n, n);
    for (int j = 0; j < o; ++j) spectral += root(o, -static_cast<std::int64_t>(j) * k) * left(g.power(element, j));
    spectral /= o;
    // Commuting orthogonal projectors: the product is one, with eigenvalues 0 and 1.
    const Eigen::MatrixXcd projector = central * spectral;
    const Eigen::MatrixXcd hermitian = (projector + projector.adjoint()) / 2.0;
    if ((projector - hermitian).norm() > 1e-8) throw std::runtime_error("projector is not self-adjoint");
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(hermitian, Eigen::EigenvaluesOnly).eigenvalues();
    const double mult = static_cast<double>((ev.array() > 0.5).count()) / degree;
    const long rounded = std::lround(mult);
    if (std::abs(mult - static_cast<double>(rounded)) > 1e-9) throw std::runtime_error("fractional multiplicity");
    return static_cast<int>(rounded);
}

}  // namespace help2p::testing
