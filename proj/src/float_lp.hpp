#pragma once

#include <Eigen/Dense>

#include <vector>

namespace help2p::detail {

struct LpOutcome {
    enum class Status { Optimal, Unbounded, Failed };
    Status status = Status::Failed;
    // Optimal: a (near-)optimal point. Unbounded: a ray with A ray = 0, cost . ray < 0.
    Eigen::VectorXd point;
};

// Revised simplex for min cost.y subject to A y = rhs, y >= 0, started from a
// caller-supplied feasible basis. Floating point; callers certify the result.
LpOutcome minimize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, const Eigen::VectorXd& cost,
                                 std::vector<Eigen::Index> basis);

}  // namespace help2p::detail
