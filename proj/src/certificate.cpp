#include "cocirc/certificate.hpp"

#include <algorithm>
#include <cmath>

namespace cocirc {

double default_neg_margin(const MassVector& m, const InteractionMatrix& h) {
    const double mmax = *std::max_element(m.values().begin(), m.values().end());
    return 1e-10 * (1.0 + h.max_entry() * mmax * mmax);
}

namespace {

std::vector<double> values_with(const MassVector& m, const InteractionMatrix& h) {
    const std::size_t n = m.size();
    std::vector<double> out;
    out.reserve(2 * n);
    std::vector<double> v(n);
    for (const auto& g : enumerate_group(n)) {
        for (std::size_t i = 0; i < n; ++i) v[i] = m[source_index(g, i, n)] - m[i];
        out.push_back(quadratic_form(h, v));
    }
    return out;
}

}  // namespace

std::vector<double> certificate_values(const MassVector& m, const AngleConfig& theta, double alpha) {
    check_dimensions(m, theta);
    return values_with(m, interaction_matrix(theta, alpha));
}

CertificateResult certificate_search(const MassVector& m, const MinimizeResult& minimizer, double alpha,
                                     std::optional<double> neg_margin) {
    if (!minimizer.converged) throw NotConvergedError("certificate search needs a converged minimizer");
    check_dimensions(m, minimizer.theta_min);
    const auto h = interaction_matrix(minimizer.theta_min, alpha);

    CertificateResult r;
    r.all_values = values_with(m, h);
    const auto group = enumerate_group(m.size());
    const auto best = std::min_element(r.all_values.begin(), r.all_values.end());
    r.best_value = *best;
    r.best_element = group[static_cast<std::size_t>(best - r.all_values.begin())];
    r.neg_margin = neg_margin.value_or(default_neg_margin(m, h));
    r.is_negative = r.best_value < -r.neg_margin;
    return r;
}

std::optional<SpecialMassPattern> align_antipodal(const SpecialMassPattern& p) {
    p.validate();
    const std::size_t n = p.n;
    if (n % 2 != 0) return std::nullopt;
    const std::size_t half = n / 2;
    if (p.pos_l == half || p.pos_s == half) return p;
    if (p.pos_s - p.pos_l != half) return std::nullopt;

    // Pair (l, s): rotate by P^s so that s lands on n and l on n/2.
    SpecialMassPattern q;
    q.n = n;
    q.rotation = (p.rotation + p.pos_s) % n;
    q.val_n = p.val_s;
    const std::size_t old_n_moves_to = n - p.pos_s;
    if (old_n_moves_to < half) {
        q.pos_l = old_n_moves_to;
        q.val_l = p.val_n;
        q.pos_s = half;
        q.val_s = p.val_l;
    } else {
        q.pos_l = half;
        q.val_l = p.val_l;
        q.pos_s = old_n_moves_to;
        q.val_s = p.val_n;
    }
    return q;
}

double antipodal_certificate_value(const SpecialMassPattern& p, const AngleConfig& theta_m, double alpha) {
    p.validate();
    if (p.n % 2 != 0) throw NotApplicableError("antipodal certificate needs even n");
    if (theta_m.size() != p.n) throw DimensionError("pattern and configuration sizes differ");
    const std::size_t half = p.n / 2;
    std::size_t q = 0;
    double mq = 0.0;
    if (p.pos_s == half) {
        q = p.pos_l;
        mq = p.val_l;
    } else if (p.pos_l == half) {
        q = p.pos_s;
        mq = p.val_s;
    } else {
        throw NotApplicableError("no special pair at positions n/2 and n");
    }
    const double r = chord_distance(theta_m[q - 1], theta_m[p.n - q - 1]);
    return -2.0 * (1.0 - mq) * (1.0 - mq) * std::pow(r, -alpha);
}

double quadrilateral_gap(const AngleConfig& theta, std::size_t a, std::size_t b, std::size_t c, std::size_t d,
                         double alpha) {
    check_alpha(alpha);
    const std::size_t n = theta.size();
    if (a >= n || b >= n || c >= n || d >= n) throw OrderingError("quadrilateral index out of range");
    const std::size_t ob = (b + n - a) % n, oc = (c + n - a) % n, od = (d + n - a) % n;
    if (!(0 < ob && ob < oc && oc < od)) throw OrderingError("quadrilateral indices are not in counterclockwise order");
    auto inv = [&](std::size_t i, std::size_t j) { return std::pow(chord_distance(theta[i], theta[j]), -alpha); };
    return (inv(a, c) + inv(b, d)) - (inv(a, d) + inv(b, c));
}

std::string_view to_string(VerdictTag tag) {
    switch (tag) {
        case VerdictTag::CertifiedNotCC: return "CERTIFIED_NOT_CC";
        case VerdictTag::NotCentered: return "NOT_CENTERED";
        case VerdictTag::CenteredCandidate: return "CENTERED_CANDIDATE";
        case VerdictTag::Unconverged: return "UNCONVERGED";
    }
    return "UNKNOWN";
}

Verdict classify(const MassVector& m, double alpha, const ClassifyTolerances& tols) {
    MinimizeOptions opts;
    opts.grad_tol = tols.grad_tol;
    opts.max_iters = tols.max_iters;

    Verdict v{VerdictTag::Unconverged, minimize_potential(m, alpha, opts), {}, std::nullopt};
    v.diagnostics = centredness_diagnostics(m, v.minimizer.theta_min, alpha);
    if (!v.minimizer.converged) {
        v.tag = VerdictTag::Unconverged;
        return v;
    }
    v.certificate = certificate_search(m, v.minimizer, alpha, tols.neg_margin);
    if (v.certificate->is_negative)
        v.tag = VerdictTag::CertifiedNotCC;
    else if (v.diagnostics.com_norm <= tols.center_tol && v.diagnostics.row_spread <= tols.center_tol)
        v.tag = VerdictTag::CenteredCandidate;
    else
        v.tag = VerdictTag::NotCentered;
    return v;
}

}  // namespace cocirc
