#pragma once

#include "help2p/arith.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace help2p::detail {

// All integer w with rows[i] . w >= rhs[i] and lower <= w <= upper.
struct SearchProblem {
    std::vector<std::vector<Integer>> rows;
    std::vector<Integer> rhs;
    std::vector<Integer> lower, upper;
};

struct SearchStats {
    std::uint64_t nodes = 0;
    bool complete = true;
};

// Depth-first enumeration. Interior nodes are pruned with LP bounds computed in
// floating point and certified by exact integer duality; the last coordinate is
// resolved by exact row propagation, so every reported point satisfies every row.
class LatticeSearch {
public:
    explicit LatticeSearch(const SearchProblem& problem);

    bool infeasible() const { return infeasible_; }
    // Range of the first coordinate in search order (empty when infeasible).
    std::int64_t first_lower() const { return lower_.empty() ? 0 : lower_[order_[0]]; }
    std::int64_t first_upper() const { return lower_.empty() ? 0 : upper_[order_[0]]; }
    std::size_t dimension() const { return lower_.size(); }

    // Visits every point whose first search coordinate equals `value`, in
    // lexicographic search order. A budget of 0 means unlimited.
    SearchStats run(std::int64_t value, std::uint64_t node_budget,
                    const std::function<void(const std::vector<std::int64_t>&)>& visit) const;

    // Convenience: the whole range, sequentially.
    SearchStats run_all(std::uint64_t node_budget, const std::function<void(const std::vector<std::int64_t>&)>& visit) const;

private:
    struct Bounds {
        bool empty = false;
        std::int64_t lo = 0, hi = 0;
    };
    // Certified range of variable `var` given the residual right-hand sides and the
    // set of still-free variables.
    Bounds variable_range(const std::vector<__int128>& residual, const std::vector<std::size_t>& free_vars,
                          std::size_t var) const;

    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<__int128> rhs_;
    std::vector<std::int64_t> lower_, upper_;
    std::vector<std::size_t> order_;
    bool infeasible_ = false;
};

}  // namespace help2p::detail
