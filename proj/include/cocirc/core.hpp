#pragma once
/**
 * core.hpp - geometric and energetic primitives for bodies on the unit circle.
 *
 * Bodies are indexed 0..n-1 in code; angles live in the gauge-fixed set
 * 0 < theta_0 < ... < theta_{n-1} = 2*pi.
 */

#include <array>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cocirc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Chords shorter than this are treated as collisions.
inline constexpr double kCollisionThreshold = 1e-13;

class CollisionError : public std::domain_error {
public:
    CollisionError(std::size_t i, std::size_t j, double r);
    std::size_t first() const { return i_; }
    std::size_t second() const { return j_; }

private:
    std::size_t i_, j_;
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered positive masses; the order is the placement order on the circle.
class MassVector {
public:
    explicit MassVector(std::vector<double> masses);

    std::size_t size() const { return masses_.size(); }
    double operator[](std::size_t i) const { return masses_[i]; }
    std::span<const double> values() const { return masses_; }
    double total() const;

    static MassVector equal(std::size_t n, double value = 1.0);

    friend bool operator==(const MassVector&, const MassVector&) = default;

private:
    std::vector<double> masses_;
};

/// Strictly increasing angles with the last pinned at exactly 2*pi.
class AngleConfig {
public:
    explicit AngleConfig(std::vector<double> angles);

    std::size_t size() const { return angles_.size(); }
    double operator[](std::size_t i) const { return angles_[i]; }
    std::span<const double> values() const { return angles_; }

    /// theta_k = 2*pi*(k+1)/n.
    static AngleConfig regular(std::size_t n);

    /// Build from the n-1 free angles; appends the 2*pi gauge entry.
    static AngleConfig from_free(std::span<const double> free_angles);

    friend bool operator==(const AngleConfig&, const AngleConfig&) = default;

private:
    std::vector<double> angles_;
};

/// Symmetric matrix of inverse chord powers with zero diagonal.
class InteractionMatrix {
public:
    InteractionMatrix(std::size_t n, double alpha, std::vector<double> entries);

    std::size_t size() const { return n_; }
    double alpha() const { return alpha_; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    double max_entry() const;

private:
    std::size_t n_;
    double alpha_;
    std::vector<double> entries_;
};

struct CentrednessDiagnostics {
    std::array<double, 2> center_of_mass{0.0, 0.0};
    double com_norm = 0.0;
    std::vector<double> row_sums;
    double row_spread = 0.0;
    double lambda_estimate = 0.0;
    double grad_norm = 0.0;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// |2 sin((theta_j - theta_k)/2)|; throws CollisionError below the threshold.
double chord_distance(double theta_j, double theta_k);

std::vector<std::array<double, 2>> positions(const AngleConfig& theta);

/// U_alpha = sum_{i<j} m_i m_j r_ij^-alpha.
double potential(const MassVector& m, const AngleConfig& theta, double alpha);

/// Same sum over raw angles; only collisions are checked, not ordering or gauge.
double potential(const MassVector& m, std::span<const double> theta, double alpha);

/// Analytic dU/dtheta_k = -(alpha/2) m_k sum_j m_j r_kj^-alpha cot((theta_k - theta_j)/2).
std::vector<double> potential_gradient(const MassVector& m, const AngleConfig& theta, double alpha);

/// Hessian of U_alpha in all n angles (row-major, n*n). It is a weighted
/// graph Laplacian, positive semidefinite with the constant vector as kernel.
std::vector<double> potential_hessian(const MassVector& m, const AngleConfig& theta, double alpha);

InteractionMatrix interaction_matrix(const AngleConfig& theta, double alpha);

/// v^T H v.
double quadratic_form(const InteractionMatrix& h, std::span<const double> v);

CentrednessDiagnostics centredness_diagnostics(const MassVector& m, const AngleConfig& theta,
                                               double alpha);

void check_alpha(double alpha);
void check_dimensions(const MassVector& m, const AngleConfig& theta);

}  // namespace cocirc
