#include "lattice_search.hpp"

#include "float_lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace help2p::detail {
namespace {

using i128 = __int128;

std::int64_t checked_int64(const Integer& v) {
    if (!v.fits_slong_p()) throw DataError("search coefficient exceeds 64-bit range: " + to_string(v));
    return v.get_si();
}

i128 floor_div(i128 a, i128 b) {
    i128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

bool add_to(i128& acc, i128 x) { return !__builtin_add_overflow(acc, x, &acc); }

bool mul_add(i128& acc, i128 a, i128 b) {
    i128 p;
    return !__builtin_mul_overflow(a, b, &p) && add_to(acc, p);
}

// Restriction of the system to the free variables at one node.
struct NodeSystem {
    std::vector<std::vector<std::int64_t>> rows;  // over free variables, box rows appended
    std::vector<i128> rhs;
};

// Upper bound on objective . w from a nonnegative row combination `y`:
// objective . w <= (max over the box of r . w - Y . rhs) / S with Y = floor(S y) and
// r = S objective + sum Y_i row_i. Returns nullopt if the arithmetic overflows.
std::optional<i128> certified_max(const NodeSystem& sys, const std::vector<std::int64_t>& objective,
                                  const Eigen::VectorXd& y, const std::vector<std::int64_t>& lo,
                                  const std::vector<std::int64_t>& hi) {
    const std::size_t k = objective.size();
    const double ymax = y.size() ? y.maxCoeff() : 0.0;
    int e = 52;
    if (ymax > 1) e -= static_cast<int>(std::ceil(std::log2(ymax)));
    e = std::clamp(e, 0, 60);
    const i128 scale = static_cast<i128>(1) << e;
    std::vector<i128> r(k);
    for (std::size_t j = 0; j < k; ++j) r[j] = scale * objective[j];
    i128 yh = 0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double scaled = std::floor(std::ldexp(y(i), e));
        if (scaled <= 0) continue;
        if (scaled > 9.2e18) return std::nullopt;
        const i128 yi = static_cast<std::int64_t>(scaled);
        const auto& row = sys.rows[static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < k; ++j)
            if (row[j] != 0 && !mul_add(r[j], yi, row[j])) return std::nullopt;
        if (!mul_add(yh, yi, sys.rhs[static_cast<std::size_t>(i)])) return std::nullopt;
    }
    i128 value = 0;
    for (std::size_t j = 0; j < k; ++j)
        if (r[j] != 0 && !mul_add(value, r[j], r[j] > 0 ? hi[j] : lo[j])) return std::nullopt;
    if (!add_to(value, -yh)) return std::nullopt;
    return floor_div(value, scale);
}

}  // namespace

LatticeSearch::LatticeSearch(const SearchProblem& problem) {
    for (const auto& row : problem.rows) {
        std::vector<std::int64_t> r;
        for (const auto& x : row) r.push_back(checked_int64(x));
        rows_.push_back(std::move(r));
    }
    for (const auto& x : problem.rhs) rhs_.push_back(checked_int64(x));
    for (const auto& x : problem.lower) lower_.push_back(checked_int64(x));
    for (const auto& x : problem.upper) upper_.push_back(checked_int64(x));
    const std::size_t k = lower_.size();
    order_.resize(k);
    std::iota(order_.begin(), order_.end(), 0);
    for (std::size_t j = 0; j < k; ++j)
        if (lower_[j] > upper_[j]) infeasible_ = true;
    if (infeasible_ || k == 0) return;
    for (int pass = 0; pass < 2 && !infeasible_; ++pass) {
        for (std::size_t j = 0; j < k; ++j) {
            const auto b = variable_range(rhs_, order_, j);
            if (b.empty) {
                infeasible_ = true;
                break;
            }
            lower_[j] = b.lo;
            upper_[j] = b.hi;
        }
    }
    std::stable_sort(order_.begin(), order_.end(),
                     [&](std::size_t a, std::size_t b) { return upper_[a] - lower_[a] < upper_[b] - lower_[b]; });
}

LatticeSearch::Bounds LatticeSearch::variable_range(const std::vector<i128>& residual,
                                                    const std::vector<std::size_t>& free_vars, std::size_t var) const {
    const std::size_t k = free_vars.size();
    Bounds out{false, lower_[var], upper_[var]};
    NodeSystem sys;
    std::vector<std::int64_t> lo(k), hi(k);
    std::size_t pos = k;
    for (std::size_t j = 0; j < k; ++j) {
        lo[j] = lower_[free_vars[j]];
        hi[j] = upper_[free_vars[j]];
        if (free_vars[j] == var) pos = j;
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::vector<std::int64_t> r(k);
        bool any = false;
        for (std::size_t j = 0; j < k; ++j) any |= (r[j] = rows_[i][free_vars[j]]) != 0;
        if (!any) {
            if (residual[i] > 0) return {true, 0, 0};
            continue;
        }
        sys.rows.push_back(std::move(r));
        sys.rhs.push_back(residual[i]);
    }
    const std::size_t real_rows = sys.rows.size();
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::int64_t> up(k, 0), down(k, 0);
        up[j] = 1;
        down[j] = -1;
        sys.rows.push_back(std::move(up));
        sys.rhs.push_back(lo[j]);
        sys.rows.push_back(std::move(down));
        sys.rhs.push_back(-static_cast<i128>(hi[j]));
    }
    const auto n = static_cast<Eigen::Index>(sys.rows.size());
    const auto m = static_cast<Eigen::Index>(k);
    Eigen::MatrixXd a(m, n);
    Eigen::VectorXd cost(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) a(j, i) = static_cast<double>(sys.rows[i][j]);
        cost(i) = -static_cast<double>(sys.rhs[i]);
    }

    for (int sign : {1, -1}) {
        std::vector<std::int64_t> objective(k, 0);
        objective[pos] = sign;
        Eigen::VectorXd rhs(m);
        std::vector<Eigen::Index> basis;
        for (std::size_t j = 0; j < k; ++j) {
            rhs(static_cast<Eigen::Index>(j)) = -objective[j];
            basis.push_back(static_cast<Eigen::Index>(real_rows + 2 * j + (objective[j] > 0 ? 1 : 0)));
        }
        const auto lp = minimize_standard_form(a, rhs, cost, basis);
        if (lp.status == LpOutcome::Status::Unbounded) {
            const std::vector<std::int64_t> zero(k, 0);
            const auto v = certified_max(sys, zero, lp.point, lo, hi);
            if (v && *v < 0) return {true, 0, 0};
            continue;
        }
        if (lp.status != LpOutcome::Status::Optimal) continue;
        const auto v = certified_max(sys, objective, lp.point, lo, hi);
        if (!v) continue;
        if (sign > 0)
            out.hi = static_cast<std::int64_t>(std::min<i128>(out.hi, *v));
        else
            out.lo = static_cast<std::int64_t>(std::max<i128>(out.lo, -*v));
    }
    out.empty = out.lo > out.hi;
    return out;
}

SearchStats LatticeSearch::run(std::int64_t value, std::uint64_t node_budget,
                               const std::function<void(const std::vector<std::int64_t>&)>& visit) const {
    SearchStats stats;
    const std::size_t k = lower_.size();
    if (infeasible_ || k == 0) return stats;
    std::vector<std::int64_t> w(k, 0);
    std::vector<i128> residual = rhs_;
    auto assign = [&](std::size_t var, std::int64_t v, int sign) {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            residual[i] -= static_cast<i128>(sign) * rows_[i][var] * v;
    };
    bool aborted = false;
    std::function<void(std::size_t)> dfs = [&](std::size_t depth) {
        if (aborted) return;
        if (depth == k) {
            for (const auto& r : residual)
                if (r > 0) return;
            visit(w);
            return;
        }
        const std::size_t var = order_[depth];
        i128 lo = lower_[var], hi = upper_[var];
        if (depth + 1 == k) {
            for (std::size_t i = 0; i < rows_.size() && lo <= hi; ++i) {
                const std::int64_t a = rows_[i][var];
                if (a > 0) lo = std::max(lo, ceil_div(residual[i], a));
                if (a < 0) hi = std::min(hi, floor_div(residual[i], a));
            }
        } else {
            if (node_budget && stats.nodes >= node_budget) {
                aborted = true;
                stats.complete = false;
                return;
            }
            ++stats.nodes;
            const std::vector<std::size_t> free_vars(order_.begin() + static_cast<std::ptrdiff_t>(depth), order_.end());
            const auto b = variable_range(residual, free_vars, var);
            if (b.empty) return;
            lo = b.lo;
            hi = b.hi;
        }
        for (i128 v = lo; v <= hi && !aborted; ++v) {
            w[var] = static_cast<std::int64_t>(v);
            assign(var, w[var], 1);
            dfs(depth + 1);
            assign(var, w[var], -1);
        }
        w[var] = 0;
    };
    const std::size_t first = order_[0];
    if (value < lower_[first] || value > upper_[first]) return stats;
    w[first] = value;
    assign(first, value, 1);
    dfs(1);
    return stats;
}

SearchStats LatticeSearch::run_all(std::uint64_t node_budget,
                                   const std::function<void(const std::vector<std::int64_t>&)>& visit) const {
    SearchStats total;
    if (lower_.empty()) {
        for (const auto& r : rhs_)
            if (r > 0) return total;
        visit({});
        return total;
    }
    if (infeasible_) return total;
    for (std::int64_t v = first_lower(); v <= first_upper(); ++v) {
        if (node_budget && total.nodes >= node_budget) {
            total.complete = false;
            break;
        }
        const auto s = run(v, node_budget ? node_budget - total.nodes : 0, visit);
        total.nodes += s.nodes;
        if (!s.complete) {
            total.complete = false;
            break;
        }
    }
    return total;
}

}  // namespace help2p::detail
