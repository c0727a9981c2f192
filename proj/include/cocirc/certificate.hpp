#pragma once
/**
 * certificate.hpp - quadratic-form nonexistence certificates.
 *
 * For a converged minimizer theta_m, any g in D_n with
 *     (g m - m)^T H_m (g m - m) < 0
 * shows that (m, theta_m) is not a centered co-circular central
 * configuration. The converse does not hold: a nonnegative table proves
 * nothing, so CENTERED_CANDIDATE is an empirical label only.
 */

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cocirc/core.hpp"
#include "cocirc/optimizer.hpp"
#include "cocirc/symmetry.hpp"

namespace cocirc {

class NotConvergedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotApplicableError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class OrderingError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CertificateResult {
    DihedralElement best_element;
    double best_value = 0.0;
    std::vector<double> all_values;  // indexed like enumerate_group(n)
    double neg_margin = 0.0;
    bool is_negative = false;
};

/// 1e-10 * (1 + max_ij H_ij * max_i m_i^2).
double default_neg_margin(const MassVector& m, const InteractionMatrix& h);

/// H(g m - m) for every element of D_n at an arbitrary configuration.
std::vector<double> certificate_values(const MassVector& m, const AngleConfig& theta, double alpha);

CertificateResult certificate_search(const MassVector& m, const MinimizeResult& minimizer, double alpha,
                                     std::optional<double> neg_margin = std::nullopt);

/// Rotates the pattern so that an antipodal special pair sits at n/2 and n.
/// Returns nullopt when n is odd or no pair is separated by n/2 - 1 bodies.
std::optional<SpecialMassPattern> align_antipodal(const SpecialMassPattern& p);

/// -2 (1 - m_q)^2 r_{q, n-q}^-alpha where q is the special position that is
/// not in the antipodal pair {n/2, n}. Throws NotApplicableError otherwise.
double antipodal_certificate_value(const SpecialMassPattern& p, const AngleConfig& theta_m, double alpha);

/// 1/AC^a + 1/BD^a - (1/AD^a + 1/BC^a) for indices in counterclockwise order.
double quadrilateral_gap(const AngleConfig& theta, std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                         double alpha);

enum class VerdictTag { CertifiedNotCC, NotCentered, CenteredCandidate, Unconverged };

std::string_view to_string(VerdictTag tag);

struct ClassifyTolerances {
    double grad_tol = 1e-12;
    double center_tol = 1e-8;
    std::optional<double> neg_margin;  // default_neg_margin when empty
    std::size_t max_iters = 10000;
};

struct Verdict {
    VerdictTag tag = VerdictTag::Unconverged;
    MinimizeResult minimizer;
    CentrednessDiagnostics diagnostics;
    std::optional<CertificateResult> certificate;  // empty when unconverged
};

Verdict classify(const MassVector& m, double alpha, const ClassifyTolerances& tols = {});

}  // namespace cocirc
