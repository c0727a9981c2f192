#include "cocirc/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cocirc {

namespace {

std::string collision_message(std::size_t i, std::size_t j, double r) {
    std::ostringstream os;
    os << "collision between bodies " << i << " and " << j << " (chord " << r << ")";
    return os.str();
}

struct HalfAngle {
    double sin_half;
    double cos_half;
    double chord;
};

HalfAngle half_angle(std::span<const double> theta, std::size_t i, std::size_t j) {
    const double half = 0.5 * (theta[i] - theta[j]);
    const double s = std::sin(half);
    const double r = 2.0 * std::abs(s);
    if (r < kCollisionThreshold) throw CollisionError(i, j, r);
    return {s, std::cos(half), r};
}

}  // namespace

CollisionError::CollisionError(std::size_t i, std::size_t j, double r)
    : std::domain_error(collision_message(i, j, r)), i_(i), j_(j) {}

MassVector::MassVector(std::vector<double> masses) : masses_(std::move(masses)) {
    if (masses_.size() < 3) throw std::invalid_argument("mass vector needs at least 3 bodies");
    for (double x : masses_) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument("masses must be finite and strictly positive");
    }
}

double MassVector::total() const {
    CompensatedSum acc;
    for (double x : masses_) acc.add(x);
    return acc.value();
}

MassVector MassVector::equal(std::size_t n, double value) {
    return MassVector(std::vector<double>(n, value));
}

AngleConfig::AngleConfig(std::vector<double> angles) : angles_(std::move(angles)) {
    if (angles_.size() < 3) throw std::invalid_argument("angle configuration needs at least 3 bodies");
    if (angles_.back() != kTwoPi) throw std::invalid_argument("last angle must equal 2*pi");
    if (!(angles_.front() > 0.0)) throw std::invalid_argument("first angle must be positive");
    for (std::size_t i = 1; i < angles_.size(); ++i) {
        if (!(angles_[i] > angles_[i - 1]))
            throw std::invalid_argument("angles must be strictly increasing");
    }
}

AngleConfig AngleConfig::regular(std::size_t n) {
    std::vector<double> a(n);
    for (std::size_t k = 0; k + 1 < n; ++k) a[k] = kTwoPi * static_cast<double>(k + 1) / static_cast<double>(n);
    if (n > 0) a[n - 1] = kTwoPi;
    return AngleConfig(std::move(a));
}

AngleConfig AngleConfig::from_free(std::span<const double> free_angles) {
    std::vector<double> a(free_angles.begin(), free_angles.end());
    a.push_back(kTwoPi);
    return AngleConfig(std::move(a));
}

InteractionMatrix::InteractionMatrix(std::size_t n, double alpha, std::vector<double> entries)
    : n_(n), alpha_(alpha), entries_(std::move(entries)) {
    if (entries_.size() != n_ * n_) throw DimensionError("interaction matrix storage mismatch");
}

double InteractionMatrix::max_entry() const {
    return entries_.empty() ? 0.0 : *std::max_element(entries_.begin(), entries_.end());
}

void CompensatedSum::add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("alpha must be positive");
}

void check_dimensions(const MassVector& m, const AngleConfig& theta) {
    if (m.size() != theta.size()) throw DimensionError("mass and angle dimensions differ");
}

double chord_distance(double theta_j, double theta_k) {
    const double r = std::abs(2.0 * std::sin(0.5 * (theta_j - theta_k)));
    if (r < kCollisionThreshold) throw CollisionError(0, 1, r);
    return r;
}

std::vector<std::array<double, 2>> positions(const AngleConfig& theta) {
    std::vector<std::array<double, 2>> q(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) q[i] = {std::cos(theta[i]), std::sin(theta[i])};
    // The gauge angle is exactly 2*pi; pin the point instead of trusting sin(2*pi).
    q.back() = {1.0, 0.0};
    return q;
}

double potential(const MassVector& m, const AngleConfig& theta, double alpha) {
    check_dimensions(m, theta);
    return potential(m, theta.values(), alpha);
}

double potential(const MassVector& m, std::span<const double> theta, double alpha) {
    check_alpha(alpha);
    if (m.size() != theta.size()) throw DimensionError("mass and angle dimensions differ");
    const std::size_t n = m.size();
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto h = half_angle(theta, i, j);
            acc.add(m[i] * m[j] * std::pow(h.chord, -alpha));
        }
    }
    return acc.value();
}

std::vector<double> potential_gradient(const MassVector& m, const AngleConfig& theta, double alpha) {
    check_alpha(alpha);
    check_dimensions(m, theta);
    const std::size_t n = m.size();
    std::vector<CompensatedSum> acc(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = k + 1; j < n; ++j) {
            const auto h = half_angle(theta.values(), k, j);
            // Antisymmetric in (k, j): cot flips sign with the angle difference.
            const double t = m[k] * m[j] * std::pow(h.chord, -alpha) * h.cos_half / h.sin_half;
            acc[k].add(t);
            acc[j].add(-t);
        }
    }
    std::vector<double> grad(n);
    for (std::size_t k = 0; k < n; ++k) grad[k] = -0.5 * alpha * acc[k].value();
    return grad;
}

std::vector<double> potential_hessian(const MassVector& m, const AngleConfig& theta, double alpha) {
    check_alpha(alpha);
    check_dimensions(m, theta);
    const std::size_t n = m.size();
    std::vector<double> hess(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = k + 1; j < n; ++j) {
            const auto h = half_angle(theta.values(), k, j);
            const double cot = h.cos_half / h.sin_half;
            const double csc2 = 1.0 / (h.sin_half * h.sin_half);
            const double w = 0.25 * alpha * m[k] * m[j] * std::pow(h.chord, -alpha) * (alpha * cot * cot + csc2);
            hess[k * n + j] = -w;
            hess[j * n + k] = -w;
            hess[k * n + k] += w;
            hess[j * n + j] += w;
        }
    }
    return hess;
}

InteractionMatrix interaction_matrix(const AngleConfig& theta, double alpha) {
    check_alpha(alpha);
    const std::size_t n = theta.size();
    std::vector<double> e(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::pow(half_angle(theta.values(), i, j).chord, -alpha);
            e[i * n + j] = v;
            e[j * n + i] = v;
        }
    }
    return InteractionMatrix(n, alpha, std::move(e));
}

double quadratic_form(const InteractionMatrix& h, std::span<const double> v) {
    const std::size_t n = h.size();
    if (v.size() != n) throw DimensionError("quadratic form dimension mismatch");
    CompensatedSum acc;
    for (std::size_t i = 0; i < n; ++i) {
        if (v[i] == 0.0) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (v[j] == 0.0) continue;
            acc.add(2.0 * v[i] * v[j] * h(i, j));
        }
    }
    return acc.value();
}

CentrednessDiagnostics centredness_diagnostics(const MassVector& m, const AngleConfig& theta,
                                               double alpha) {
    check_alpha(alpha);
    check_dimensions(m, theta);
    const std::size_t n = m.size();
    const auto q = positions(theta);
    const auto h = interaction_matrix(theta, alpha);

    CentrednessDiagnostics d;
    CompensatedSum cx, cy;
    for (std::size_t i = 0; i < n; ++i) {
        cx.add(m[i] * q[i][0]);
        cy.add(m[i] * q[i][1]);
    }
    const double total = m.total();
    d.center_of_mass = {cx.value() / total, cy.value() / total};
    d.com_norm = std::hypot(d.center_of_mass[0], d.center_of_mass[1]);

    d.row_sums.resize(n);
    CompensatedSum mean;
    for (std::size_t k = 0; k < n; ++k) {
        CompensatedSum s;
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) s.add(m[j] * h(k, j));
        d.row_sums[k] = s.value();
        mean.add(d.row_sums[k]);
    }
    const auto [lo, hi] = std::minmax_element(d.row_sums.begin(), d.row_sums.end());
    d.row_spread = *hi - *lo;
    d.lambda_estimate = 0.5 * alpha * mean.value() / static_cast<double>(n);

    for (double g : potential_gradient(m, theta, alpha)) d.grad_norm = std::max(d.grad_norm, std::abs(g));
    return d;
}

}  // namespace cocirc
