#include "help2p/help.hpp"

#include "int_lattice.hpp"
#include "lattice_search.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace help2p {
namespace {

using detail::IntVector;
using detail::parallel_for;

std::int64_t exact_int64(const Rational& r) {
    if (r.get_den() != 1 || !r.get_num().fits_slong_p()) throw DataError("expected a 64-bit integer, got " + to_string(r));
    return r.get_num().get_si();
}

// Integer traces Tr_{Q(zeta_m)/Q}(chi(c) zeta_m^-k) for every level m | n.
class TraceCache {
public:
    TraceCache(const CharacterTable& table, std::int64_t n) : size_(table.size()), chars_(table.characters().size()) {
        for (auto m : divisors(n)) {
            if (m == 1) continue;
            auto& v = values_[m];
            v.assign(chars_ * size_ * static_cast<std::size_t>(m), 0);
            for (std::size_t c = 1; c < size_; ++c) {
                if (m % table.element_order(c) != 0) continue;
                for (std::size_t chi = 0; chi < chars_; ++chi)
                    for (std::int64_t k = 0; k < m; ++k)
                        v[index(chi, c, k, m)] = exact_int64(trace_over(table.value(chi, c), m, -k));
            }
        }
    }
    std::int64_t at(std::int64_t m, std::size_t chi, std::size_t c, std::int64_t k) const {
        return values_.at(m)[index(chi, c, mod(k, m), m)];
    }

private:
    std::size_t index(std::size_t chi, std::size_t c, std::int64_t k, std::int64_t m) const {
        return (chi * size_ + c) * static_cast<std::size_t>(m) + static_cast<std::size_t>(k);
    }
    std::size_t size_, chars_;
    std::map<std::int64_t, std::vector<std::int64_t>> values_;
};

struct Level {
    std::int64_t m = 0;
    std::vector<std::size_t> unknowns;
    std::vector<std::pair<std::int64_t, std::int64_t>> box;
    std::vector<IntVector> order_congruences;  // rows over (x, t), modulus m
};

// eps_c = sum over chi, k of mu(chi, k) w(chi, c, k) with mu >= 0 and sum_k mu = chi(1).
std::vector<std::pair<std::int64_t, std::int64_t>> derived_box(const CharacterTable& table, std::int64_t m,
                                                                const std::vector<std::size_t>& unknowns,
                                                                std::int64_t margin) {
    std::vector<std::pair<std::int64_t, std::int64_t>> box;
    const Rational phi(euler_phi(m));
    for (auto c : unknowns) {
        Rational lo = 0, hi = 0;
        const Rational scale = phi * Rational(table.centralizer_order(c));
        for (std::size_t chi = 0; chi < table.characters().size(); ++chi) {
            const auto conj = table.value(chi, c).conjugate();
            Rational wmin, wmax;
            for (std::int64_t k = 0; k < m; ++k) {
                const Rational w = trace_over(conj, m, k) / scale;
                if (k == 0 || w < wmin) wmin = w;
                if (k == 0 || w > wmax) wmax = w;
            }
            const Rational deg(table.degree(chi));
            lo += deg * wmin;
            hi += deg * wmax;
        }
        Integer l, h;
        mpz_cdiv_q(l.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(h.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        box.emplace_back(to_int64(l) - margin, to_int64(h) + margin);
    }
    return box;
}

Level make_level(const CharacterTable& table, std::int64_t m, std::int64_t margin) {
    Level level;
    level.m = m;
    const auto base = base_constraints(table, m);
    level.unknowns = base.unknowns;
    level.box = derived_box(table, m, level.unknowns, margin);
    const std::size_t s = level.unknowns.size();
    for (auto r : prime_divisors(m)) {
        if (r == m) continue;
        IntVector row(s + 1, 0);
        bool any = false;
        for (std::size_t i = 0; i < s; ++i)
            if (table.element_order(level.unknowns[i]) == r) row[i] = m / r, any = true;
        if (any) level.order_congruences.push_back(std::move(row));
    }
    return level;
}

// m * mu forms over (x, constant), deduplicated.
std::vector<std::vector<std::int64_t>> multiplicity_forms(const CharacterTable& table, const TraceCache& traces,
                                                          const Level& level, const CandidateChain& lower) {
    const std::int64_t m = level.m;
    const std::size_t s = level.unknowns.size();
    std::set<std::vector<std::int64_t>> seen;
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t chi = 0; chi < table.characters().size(); ++chi) {
        const std::int64_t degree = to_int64(table.degree(chi));
        for (std::int64_t k = 0; k < m; ++k) {
            std::vector<std::int64_t> form(s + 1, 0);
            for (std::size_t i = 0; i < s; ++i) form[i] = traces.at(m, chi, level.unknowns[i], k);
            std::int64_t constant = degree;
            for (const auto& [d, v] : lower.levels) {
                if (d >= m || m % d != 0) continue;
                for (const auto& [cls, eps] : v.entries) constant += eps * traces.at(d, chi, cls, k);
            }
            form[s] = constant;
            if (seen.insert(form).second) out.push_back(std::move(form));
        }
    }
    return out;
}

IntVector to_row(const LinearForm& form, const std::vector<std::size_t>& unknowns) {
    Integer den = 1;
    for (const auto& [cls, c] : form.coefficients) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), form.constant.get_den_mpz_t());
    IntVector row(unknowns.size() + 1, 0);
    for (const auto& [cls, c] : form.coefficients) {
        const auto it = std::find(unknowns.begin(), unknowns.end(), cls);
        if (it == unknowns.end()) {
            if (c != 0) throw DataError("provider constraint on a class outside the support");
            continue;
        }
        const Rational scaled = c * den;
        row[static_cast<std::size_t>(it - unknowns.begin())] = scaled.get_num();
    }
    const Rational scaled = form.constant * den;
    row.back() = scaled.get_num();
    return row;
}

// Search space for one level and one lower chain.
struct Prepared {
    bool empty = false;
    std::size_t forms = 0;
    std::size_t rank = 0;
    IntVector offset;
    std::vector<IntVector> generators;
    std::vector<std::vector<std::int64_t>> form_rows;
    std::vector<IntVector> equalities;
    std::unique_ptr<detail::LatticeSearch> search;
};

Prepared prepare(const CharacterTable& table, const TraceCache& traces, const Level& level,
                 const CandidateChain& lower, const std::vector<Constraint>& provider_equalities) {
    Prepared prep;
    const std::int64_t m = level.m;
    const std::size_t s = level.unknowns.size();
    prep.form_rows = multiplicity_forms(table, traces, level, lower);
    prep.forms = prep.form_rows.size();
    if (s == 0) {
        prep.empty = true;
        return prep;
    }

    detail::LatticeBuilder lattice(s + 1);
    const Integer modulus(m);
    for (const auto& row : level.order_congruences) lattice.add_congruence(row, modulus);
    for (const auto& f : prep.form_rows) {
        bool zero = true;
        for (std::size_t i = 0; i < s; ++i) zero &= f[i] == 0;
        if (zero) {
            if (f[s] < 0 || f[s] % m != 0) {
                prep.empty = true;
                return prep;
            }
            continue;
        }
        lattice.add_congruence(IntVector(f.begin(), f.end()), modulus);
    }
    IntVector augmentation(s + 1, 1);
    augmentation[s] = -1;
    prep.equalities.push_back(augmentation);
    for (const auto& c : provider_equalities) prep.equalities.push_back(to_row(c.form, level.unknowns));
    for (const auto& e : prep.equalities) lattice.add_equality(e);

    auto sliced = detail::slice_last_coordinate(lattice.basis(), s);
    if (!sliced) {
        prep.empty = true;
        return prep;
    }
    detail::lll_reduce(sliced->generators);
    detail::reduce_offset(sliced->offset, sliced->generators);
    prep.offset = sliced->offset;
    prep.generators = sliced->generators;
    const std::size_t r = prep.generators.size();
    prep.rank = r;

    detail::SearchProblem problem;
    std::set<std::pair<std::vector<Integer>, Integer>> seen_rows;
    auto add_row = [&](std::vector<Integer> row, Integer rhs) {
        if (std::all_of(row.begin(), row.end(), [](const Integer& x) { return x == 0; })) {
            if (rhs > 0) prep.empty = true;
            return;
        }
        if (seen_rows.emplace(row, rhs).second) {
            problem.rows.push_back(std::move(row));
            problem.rhs.push_back(std::move(rhs));
        }
    };
    // Forms: f . (offset + G z) + c >= 0.
    for (const auto& f : prep.form_rows) {
        std::vector<Integer> row(r, 0);
        Integer at_offset = f[s];
        for (std::size_t i = 0; i < s; ++i) {
            if (f[i] == 0) continue;
            at_offset += Integer(f[i]) * prep.offset[i];
            for (std::size_t j = 0; j < r; ++j) row[j] += Integer(f[i]) * prep.generators[j][i];
        }
        add_row(std::move(row), -at_offset);
    }
    // Box on every coordinate of x.
    for (std::size_t i = 0; i < s; ++i) {
        std::vector<Integer> up(r), down(r);
        for (std::size_t j = 0; j < r; ++j) {
            up[j] = prep.generators[j][i];
            down[j] = -prep.generators[j][i];
        }
        add_row(std::move(up), Integer(level.box[i].first) - prep.offset[i]);
        add_row(std::move(down), prep.offset[i] - Integer(level.box[i].second));
    }
    if (prep.empty) return prep;
    if (r == 0) {
        prep.search = std::make_unique<detail::LatticeSearch>(problem);
        return prep;
    }

    // Box on z through an invertible square block of the generator matrix.
    std::vector<std::vector<Rational>> mat(s, std::vector<Rational>(r));
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < r; ++j) mat[i][j] = prep.generators[j][i];
    std::vector<std::size_t> chosen;
    {
        auto work = mat;
        for (std::size_t i = 0; i < s && chosen.size() < r; ++i) {
            std::size_t col = r;
            for (std::size_t j = 0; j < r; ++j)
                if (work[i][j] != 0) {
                    col = j;
                    break;
                }
            if (col == r) continue;
            chosen.push_back(i);
            for (std::size_t i2 = i + 1; i2 < s; ++i2) {
                if (work[i2][col] == 0) continue;
                const Rational f = work[i2][col] / work[i][col];
                for (std::size_t j = 0; j < r; ++j) work[i2][j] -= f * work[i][j];
            }
        }
    }
    if (chosen.size() != r) throw DataError("lattice generators are dependent");
    // Inverse of the chosen block by Gauss-Jordan.
    std::vector<std::vector<Rational>> a(r, std::vector<Rational>(2 * r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < r; ++j) a[i][j] = mat[chosen[i]][j];
        a[i][r + i] = 1;
    }
    for (std::size_t col = 0; col < r; ++col) {
        std::size_t piv = col;
        while (a[piv][col] == 0) ++piv;
        std::swap(a[piv], a[col]);
        const Rational inv = 1 / a[col][col];
        for (auto& x : a[col]) x *= inv;
        for (std::size_t i = 0; i < r; ++i) {
            if (i == col || a[i][col] == 0) continue;
            const Rational f = a[i][col];
            for (std::size_t j = 0; j < 2 * r; ++j) a[i][j] -= f * a[col][j];
        }
    }
    for (std::size_t j = 0; j < r; ++j) {
        Rational lo = 0, hi = 0;
        for (std::size_t i = 0; i < r; ++i) {
            const Rational& coeff = a[j][r + i];
            const std::size_t x = chosen[i];
            const Rational low = Rational(level.box[x].first) - prep.offset[x];
            const Rational high = Rational(level.box[x].second) - prep.offset[x];
            lo += coeff >= 0 ? coeff * low : coeff * high;
            hi += coeff >= 0 ? coeff * high : coeff * low;
        }
        Integer l, h;
        mpz_cdiv_q(l.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
        mpz_fdiv_q(h.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
        problem.lower.push_back(l);
        problem.upper.push_back(h);
    }
    prep.search = std::make_unique<detail::LatticeSearch>(problem);
    return prep;
}

std::vector<std::int64_t> point(const Prepared& prep, const std::vector<std::int64_t>& z) {
    std::vector<std::int64_t> x;
    for (std::size_t i = 0; i < prep.offset.size(); ++i) {
        Integer v = prep.offset[i];
        for (std::size_t j = 0; j < z.size(); ++j) v += prep.generators[j][i] * z[j];
        x.push_back(to_int64(v));
    }
    return x;
}

bool verify_point(const Prepared& prep, const Level& level, const std::vector<std::int64_t>& x) {
    const std::size_t s = x.size();
    auto dot = [&](const auto& row) -> Integer {
        Integer v = 0;
        for (std::size_t i = 0; i < s; ++i) v += Integer(row[i]) * x[i];
        return v + Integer(row[s]);
    };
    for (const auto& f : prep.form_rows) {
        const Integer v = dot(f);
        if (v < 0 || v % level.m != 0) return false;
    }
    for (const auto& row : level.order_congruences)
        if (dot(row) % level.m != 0) return false;
    for (const auto& e : prep.equalities)
        if (dot(e) != 0) return false;
    return true;
}

AugmentationVector to_vector(const Level& level, const std::vector<std::int64_t>& x) {
    AugmentationVector v{level.m, {}};
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) v.entries[level.unknowns[i]] = x[i];
    return v;
}

// Joins the complete chains of the maximal proper divisors of m into lower chains for m.
std::vector<CandidateChain> lower_chains(std::int64_t m, const std::map<std::int64_t, std::vector<CandidateChain>>& sols,
                                         std::size_t limit) {
    std::vector<CandidateChain> acc{CandidateChain{m, {}}};
    for (auto r : prime_divisors(m)) {
        if (r == m) continue;
        std::vector<CandidateChain> next;
        for (const auto& base : acc) {
            for (const auto& part : sols.at(m / r)) {
                bool compatible = true;
                for (const auto& [d, v] : part.levels) {
                    const auto it = base.levels.find(d);
                    if (it != base.levels.end() && !(it->second == v)) {
                        compatible = false;
                        break;
                    }
                }
                if (!compatible) continue;
                CandidateChain merged = base;
                for (const auto& [d, v] : part.levels) merged.levels.emplace(d, v);
                next.push_back(std::move(merged));
                if (next.size() > limit)
                    throw UnsupportedInput("more than " + std::to_string(limit) + " lower chains at order " +
                                           std::to_string(m) + "; pin the lower levels");
            }
        }
        acc = std::move(next);
    }
    return acc;
}

struct LevelResult {
    std::vector<CandidateChain> chains;
    LevelCertificate certificate;
    std::map<std::pair<std::string, std::string>, std::size_t> summary;
};

LevelResult solve_level(const CharacterTable& table, const TraceCache& traces, const Level& level,
                        const std::vector<CandidateChain>& lowers, const ProviderList& providers, bool top,
                        const SolveOptions& options) {
    LevelResult result;
    auto& cert = result.certificate;
    cert.order = level.m;
    cert.unknowns = level.unknowns;
    cert.box = level.box;
    cert.lower_chains = lowers.size();

    std::vector<std::vector<Constraint>> extra(lowers.size());
    std::vector<Prepared> preps(lowers.size());
    parallel_for(lowers.size(), options.jobs, [&](std::size_t i) {
        if (top)
            for (const auto& p : providers)
                if (p->applies(level.m))
                    for (auto& c : p->equalities(table, lowers[i], level.m)) extra[i].push_back(std::move(c));
        preps[i] = prepare(table, traces, level, lowers[i], extra[i]);
    });

    struct Task {
        std::size_t chain;
        std::int64_t first;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < preps.size(); ++i) {
        const auto& prep = preps[i];
        cert.forms = std::max(cert.forms, prep.forms);
        cert.lattice_rank = std::max(cert.lattice_rank, prep.rank);
        if (prep.empty || !prep.search || prep.search->infeasible()) continue;
        if (prep.search->dimension() == 0) {
            tasks.push_back({i, 0});
            continue;
        }
        for (auto v = prep.search->first_lower(); v <= prep.search->first_upper(); ++v) tasks.push_back({i, v});
    }

    std::vector<std::vector<CandidateChain>> found(tasks.size());
    std::vector<detail::SearchStats> stats(tasks.size());
    parallel_for(tasks.size(), options.jobs, [&](std::size_t t) {
        const auto& prep = preps[tasks[t].chain];
        const auto& lower = lowers[tasks[t].chain];
        auto visit = [&](const std::vector<std::int64_t>& z) {
            const auto x = point(prep, z);
            if (!verify_point(prep, level, x)) {
                std::string d;
                for (auto v : x) d += std::to_string(v) + " ";
                throw DataError("search returned a point violating its constraints: " + d);
            }
            CandidateChain chain = lower;
            chain.levels[level.m] = to_vector(level, x);
            if (top)
                for (const auto& p : providers)
                    if (p->applies(level.m) && !p->accepts(table, chain)) return;
            found[t].push_back(std::move(chain));
        };
        if (prep.search->dimension() == 0)
            stats[t] = prep.search->run_all(options.node_budget, visit);
        else
            stats[t] = prep.search->run(tasks[t].first, options.node_budget, visit);
    });

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        cert.nodes += stats[t].nodes;
        cert.complete &= stats[t].complete;
        for (auto& c : found[t]) result.chains.push_back(std::move(c));
    }
    std::sort(result.chains.begin(), result.chains.end());
    result.chains.erase(std::unique(result.chains.begin(), result.chains.end()), result.chains.end());
    cert.survivors = result.chains.size();

    if (top) {
        auto& sum = result.summary;
        sum[{"equality", provenance::augmentation}] = 1;
        sum[{"congruence", provenance::order_congruence}] = level.order_congruences.size();
        std::size_t forms = 0;
        for (const auto& p : preps) forms = std::max(forms, p.forms);
        sum[{"congruence", provenance::multiplicity}] = forms;
        sum[{"nonnegativity", provenance::multiplicity}] = forms;
        for (const auto& p : providers) {
            if (!p->applies(level.m)) continue;
            std::size_t count = 0;
            for (const auto& e : extra)
                count = std::max<std::size_t>(count, static_cast<std::size_t>(std::count_if(
                                                         e.begin(), e.end(), [&](const Constraint& c) { return c.provenance == p->provenance(); })));
            auto& slot = sum[{"equality", p->provenance()}];
            slot = std::max(slot, count);
        }
    }
    return result;
}

}  // namespace

SolutionSet solve(const CharacterTable& table, std::int64_t n, const ProviderList& providers,
                  const SolveOptions& options) {
    if (n < 2) throw UnsupportedInput("unit order must be at least 2");
    SolutionSet out;
    out.unit_order = n;
    out.constraints.push_back({"support", provenance::order_support, base_constraints(table, n).unknowns.size()});
    if (table.exponent() % n != 0) {
        out.early_verdict = "unit order " + std::to_string(n) + " does not divide the exponent " +
                            std::to_string(table.exponent()) + " (" + provenance::exponent + ")";
        out.constraints.push_back({"equality", provenance::exponent, 1});
        return out;
    }
    const TraceCache traces(table, n);

    std::map<std::int64_t, std::vector<CandidateChain>> sols;
    std::vector<std::int64_t> orders;
    if (options.pinned_lower) {
        const auto& pinned = *options.pinned_lower;
        for (auto d : divisors(n))
            if (d > 1 && d < n && !pinned.levels.count(d))
                throw UnsupportedInput("pinned chain lacks level " + std::to_string(d));
        CandidateChain lower{n, {}};
        for (const auto& [d, v] : pinned.levels)
            if (d < n) lower.levels[d] = v;
        sols[0] = {lower};
        orders.push_back(n);
    } else {
        for (auto m : divisors(n))
            if (m > 1) orders.push_back(m);
    }

    for (auto m : orders) {
        const bool top = m == n;
        const Level level = make_level(table, m, options.box_margin);
        const auto lowers = options.pinned_lower ? sols.at(0) : lower_chains(m, sols, options.lower_chain_limit);
        auto result = solve_level(table, traces, level, lowers, providers, top, options);
        out.complete &= result.certificate.complete;
        out.certificate.push_back(result.certificate);
        if (top)
            for (const auto& [key, count] : result.summary) out.constraints.push_back({key.first, key.second, count});
        for (auto& c : result.chains) c.unit_order = m;
        sols[m] = std::move(result.chains);
        if (sols[m].empty() && !top) {
            out.early_verdict = "no admissible partial augmentations at order " + std::to_string(m);
            return out;
        }
    }
    out.survivors = std::move(sols[n]);
    for (auto& c : out.survivors) c.unit_order = n;
    return out;
}

}  // namespace help2p
