#include "float_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace help2p::detail {

LpOutcome minimize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& rhs, const Eigen::VectorXd& cost,
                                 std::vector<Eigen::Index> basis) {
    using Eigen::Index;
    constexpr double tol = 1e-9;
    const Index m = a.rows(), n = a.cols();
    LpOutcome out;
    std::vector<char> in_basis(static_cast<std::size_t>(n), 0);
    for (Index b : basis) in_basis[static_cast<std::size_t>(b)] = 1;

    Eigen::MatrixXd bmat(m, m);
    Eigen::VectorXd cb(m);
    int degenerate_run = 0;
    const long max_iterations = 50L * (n + m) + 1000;
    for (long iteration = 0; iteration < max_iterations; ++iteration) {
        for (Index i = 0; i < m; ++i) {
            bmat.col(i) = a.col(basis[static_cast<std::size_t>(i)]);
            cb(i) = cost(basis[static_cast<std::size_t>(i)]);
        }
        const Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);
        const Eigen::VectorXd xb = lu.solve(rhs);
        const Eigen::VectorXd pi = lu.transpose().solve(cb);
        const Eigen::VectorXd reduced = cost - a.transpose() * pi;

        const bool bland = degenerate_run > 30;
        Index entering = -1;
        double best = -tol * (1 + cost.lpNorm<Eigen::Infinity>());
        for (Index j = 0; j < n; ++j) {
            if (in_basis[static_cast<std::size_t>(j)] || reduced(j) >= best) continue;
            entering = j;
            if (bland) break;
            best = reduced(j);
        }
        if (entering < 0) {
            out.status = LpOutcome::Status::Optimal;
            out.point = Eigen::VectorXd::Zero(n);
            for (Index i = 0; i < m; ++i) out.point(basis[static_cast<std::size_t>(i)]) = std::max(0.0, xb(i));
            return out;
        }
        const Eigen::VectorXd dir = lu.solve(a.col(entering));
        Index leaving = -1;
        double ratio = std::numeric_limits<double>::infinity();
        for (Index i = 0; i < m; ++i) {
            if (dir(i) <= tol) continue;
            const double r = std::max(0.0, xb(i)) / dir(i);
            if (r < ratio - 1e-12 ||
                (r <= ratio + 1e-12 && leaving >= 0 &&
                 basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leaving)])) {
                ratio = std::min(ratio, r);
                leaving = i;
            }
        }
        if (leaving < 0) {
            out.status = LpOutcome::Status::Unbounded;
            out.point = Eigen::VectorXd::Zero(n);
            out.point(entering) = 1;
            for (Index i = 0; i < m; ++i) out.point(basis[static_cast<std::size_t>(i)]) = std::max(0.0, -dir(i));
            return out;
        }
        degenerate_run = ratio < 1e-12 ? degenerate_run + 1 : 0;
        in_basis[static_cast<std::size_t>(basis[static_cast<std::size_t>(leaving)])] = 0;
        in_basis[static_cast<std::size_t>(entering)] = 1;
        basis[static_cast<std::size_t>(leaving)] = entering;
    }
    return out;
}

}  // namespace help2p::detail
