#include "cocirc/optimizer.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>

namespace cocirc {

namespace {

struct Iterate {
    std::vector<double> free;  // theta_0..theta_{n-2}
    double value = 0.0;
    std::vector<double> grad;  // full n-vector
    double grad_norm = 0.0;
};

bool strictly_inside(const std::vector<double>& free) {
    if (!(free.front() > 0.0)) return false;
    for (std::size_t i = 1; i < free.size(); ++i)
        if (!(free[i] > free[i - 1])) return false;
    return free.back() < kTwoPi;
}

double free_grad_norm(const std::vector<double>& grad) {
    double g = 0.0;
    for (std::size_t k = 0; k + 1 < grad.size(); ++k) g = std::max(g, std::abs(grad[k]));
    return g;
}

// Evaluates value and gradient; returns false on collision or if the point
// leaves the ordered set.
bool evaluate(const MassVector& m, double alpha, std::vector<double> free, Iterate& out) {
    if (!strictly_inside(free)) return false;
    try {
        const AngleConfig theta = AngleConfig::from_free(free);
        out.value = potential(m, theta, alpha);
        out.grad = potential_gradient(m, theta, alpha);
    } catch (const CollisionError&) {
        return false;
    }
    if (!std::isfinite(out.value)) return false;
    out.free = std::move(free);
    out.grad_norm = free_grad_norm(out.grad);
    return true;
}

Eigen::VectorXd search_direction(const MassVector& m, double alpha, const Iterate& it) {
    const std::size_t n = m.size();
    const std::size_t dim = n - 1;
    Eigen::VectorXd g(dim);
    for (std::size_t k = 0; k < dim; ++k) g[static_cast<Eigen::Index>(k)] = it.grad[k];

    const auto full = potential_hessian(m, AngleConfig::from_free(it.free), alpha);
    Eigen::MatrixXd h(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j)
            h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = full[i * n + j];

    Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() == Eigen::Success) {
        Eigen::VectorXd d = -llt.solve(g);
        if (d.allFinite() && d.dot(g) < 0.0) return d;
    }
    return -g;
}

}  // namespace

MinimizeResult minimize_potential(const MassVector& m, double alpha, const MinimizeOptions& opts) {
    check_alpha(alpha);
    if (!(opts.grad_tol > 0.0)) throw std::invalid_argument("grad_tol must be positive");
    if (opts.max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
    const std::size_t n = m.size();
    const AngleConfig start = opts.initial.value_or(AngleConfig::regular(n));
    if (start.size() != n) throw DimensionError("initial configuration has wrong size");

    Iterate cur;
    if (!evaluate(m, alpha, {start.values().begin(), start.values().end() - 1}, cur))
        throw CollisionError(0, 0, 0.0);

    MinimizeResult res{AngleConfig::from_free(cur.free), 0, cur.grad_norm, false, {cur.value}};
    constexpr double eps = std::numeric_limits<double>::epsilon();

    std::size_t iter = 0;
    while (cur.grad_norm > opts.grad_tol && iter < opts.max_iters) {
        const Eigen::VectorXd d = search_direction(m, alpha, cur);
        const double slack = 64.0 * eps * std::max(1.0, std::abs(cur.value));

        bool accepted = false;
        for (double t = 1.0; t > 1e-20; t *= 0.5) {
            std::vector<double> trial(cur.free);
            for (std::size_t k = 0; k < trial.size(); ++k) trial[k] += t * d[static_cast<Eigen::Index>(k)];
            Iterate next;
            if (!evaluate(m, alpha, std::move(trial), next)) continue;
            // Once decrease is below round-off, fall back to the gradient as merit.
            const bool decrease = next.value < cur.value;
            const bool flat = next.value <= cur.value + slack && next.grad_norm < cur.grad_norm;
            if (decrease || flat) {
                cur = std::move(next);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++iter;
        res.objective_trace.push_back(cur.value);
    }

    res.theta_min = AngleConfig::from_free(cur.free);
    res.iterations = iter;
    res.final_grad_norm = cur.grad_norm;
    res.converged = cur.grad_norm <= opts.grad_tol;
    return res;
}

std::vector<double> finite_difference_gradient(const MassVector& m, const AngleConfig& theta, double alpha,
                                               double step) {
    check_dimensions(m, theta);
    if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
    const std::size_t n = theta.size();
    std::vector<double> angles(theta.values().begin(), theta.values().end());
    std::vector<double> grad(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double prev = k == 0 ? angles[n - 1] - kTwoPi : angles[k - 1];
        const double next = k + 1 == n ? angles[0] + kTwoPi : angles[k + 1];
        if (!(angles[k] - step > prev) || !(angles[k] + step < next))
            throw InfeasibleStepError("finite-difference step breaks angle ordering");
        const double saved = angles[k];
        angles[k] = saved + step;
        const double up = potential(m, angles, alpha);
        angles[k] = saved - step;
        const double down = potential(m, angles, alpha);
        angles[k] = saved;
        grad[k] = (up - down) / (2.0 * step);
    }
    return grad;
}

}  // namespace cocirc
