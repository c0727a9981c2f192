#pragma once
/**
 * analysis.hpp - integer sign calculus for three special masses.
 *
 * With specials at 1-based positions l < s < n, write
 *   p1 = (l - n/2)(s - n/2)
 *   p2 = (s - l - n/2)(n - l - n/2)
 *   p3 = (l + n - s - n/2)(n - s - n/2)
 * A centered configuration forces sign(p1) = sign((m_l-1)(m_s-1)),
 * sign(p2) = sign((m_s-1)(m_n-1)) and sign(p3) = sign((m_l-1)(m_n-1)).
 * A zero factor means two specials are antipodal, which is settled by the
 * closed-form reflection certificate instead.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "cocirc/symmetry.hpp"

namespace cocirc {

using Rational = boost::rational<std::int64_t>;

struct SideProducts {
    Rational p1, p2, p3;

    std::array<Rational, 3> as_array() const { return {p1, p2, p3}; }
    bool has_zero_factor = false;  // antipodal special pair
};

/// Throws std::invalid_argument unless 1 <= l < s < n.
SideProducts side_predicates(std::int64_t l, std::int64_t s, std::int64_t n);

/// Maps sign(m_l-1), sign(m_s-1), sign(m_n-1) to the required signs of (p1, p2, p3).
/// Throws std::invalid_argument on a zero sign.
std::array<int, 3> required_signs(const std::array<int, 3>& signs);

struct SignConstraintSystem {
    SideProducts products;
    std::array<int, 3> required{};
    std::vector<int> violated;  // 1-based constraint numbers
};

SignConstraintSystem sign_system(std::int64_t l, std::int64_t s, std::int64_t n, const std::array<int, 3>& signs);

enum class PredictionTag { AntipodalCertificate, LemmaChainInfeasible, HypothesesNotMet, SignSystemSatisfiable };

std::string_view to_string(PredictionTag tag);

struct PredictionVerdict {
    PredictionTag tag = PredictionTag::HypothesesNotMet;
    std::string witness;
    std::optional<SignConstraintSystem> system;
};

PredictionVerdict predict_nonexistence(const SpecialMassPattern& p, double value_tol = 1e-9);

struct TheoremCheckReport {
    std::int64_t n_max = 0;
    std::uint64_t patterns = 0;           // (n, l, s, signs) tuples enumerated
    std::uint64_t antipodal_routed = 0;   // excluded from the sign system
    std::uint64_t sign_systems = 0;       // non-antipodal tuples checked
    std::uint64_t symmetric_capable = 0;  // equal-sign pair with equal arc gaps
    std::uint64_t satisfiable = 0;        // must be zero
    std::array<std::uint64_t, 3> violated_count{};
    // Tuples where the violated set is a single constraint, per constraint.
    std::array<std::uint64_t, 3> sole_violation{};
    std::vector<std::string> satisfiable_examples;
    bool passed() const { return satisfiable == 0; }
};

TheoremCheckReport exhaustive_theorem_check(std::int64_t n_max);

enum class LemmaCase { OppositeSigns, SameSignsMirror, SameSignsStraddle };

std::string_view to_string(LemmaCase c);

/// The reflection certificate written out pairwise, for a mass vector in the
/// lemma frame (specials at l, s, n with the case's position constraints).
double lemma_expansion(LemmaCase c, const SpecialMassPattern& p, const InteractionMatrix& h);

struct LemmaTrial {
    LemmaCase lemma_case;
    std::size_t n = 0;
    double alpha = 0.0;
    std::vector<double> masses;
    bool converged = false;
    double reflection_value = 0.0;
    double expansion_value = 0.0;
    double relative_mismatch = 0.0;
    double neg_margin = 0.0;
    // The same instance relabeled by a rotation; `relabeled_pair` names the
    // special pair that carries the violation in the new frame.
    std::size_t rotation = 0;
    std::string relabeled_pair;
    double relabeled_best_value = 0.0;
    bool passed = false;
};

struct LemmaSuiteReport {
    std::size_t trials = 0;
    std::size_t failures = 0;
    std::size_t unconverged = 0;
    double max_relative_mismatch = 0.0;
    double max_reflection_value = -1e300;  // closest to zero
    std::array<std::size_t, 3> per_case{};
    std::vector<LemmaTrial> rows;
    bool passed() const { return failures == 0 && unconverged == 0; }
};

struct LemmaSuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 200;
    std::size_t n_min = 5;
    std::size_t n_max = 10;
    std::vector<double> alphas{0.5, 1.0, 2.0};
    double mismatch_tol = 1e-10;
};

LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opts);

}  // namespace cocirc
