#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cocirc/core.hpp"

namespace cocirc {

struct MinimizeOptions {
    double grad_tol = 1e-12;
    std::size_t max_iters = 10000;
    std::optional<AngleConfig> initial;  // regular n-gon when empty
};

struct MinimizeResult {
    AngleConfig theta_min;
    std::size_t iterations = 0;
    double final_grad_norm = 0.0;
    bool converged = false;
    // Objective after each accepted iterate, starting with the initial point.
    std::vector<double> objective_trace;
};

/// Minimizes U_alpha over the free angles theta_0..theta_{n-2}, theta_{n-1} = 2*pi.
///
/// The restricted Hessian is positive definite on the open ordered set, so the
/// critical point is unique. Each iteration takes a Newton step when the
/// Cholesky factorization succeeds and a steepest-descent step otherwise, then
/// halves the step until the angles stay ordered and the objective does not
/// increase. Once the objective stalls at round-off level the merit switches
/// to the gradient norm. Non-convergence is reported through `converged`.
MinimizeResult minimize_potential(const MassVector& m, double alpha, const MinimizeOptions& opts = {});

class InfeasibleStepError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Central differences of U_alpha in every angle. Each perturbation is applied
/// to theta_k alone; the gauge entry may move above 2*pi, which the potential
/// tolerates because only differences matter.
std::vector<double> finite_difference_gradient(const MassVector& m, const AngleConfig& theta, double alpha,
                                               double step);

}  // namespace cocirc
