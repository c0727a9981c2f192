#pragma once
/**
 * suites.hpp - named verification suites driven by `cocirc verify` and the
 * acceptance test. Each suite returns counts, worst-case margins and a
 * pass flag; none of them throws on a failed check.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocirc/certificate.hpp"
#include "cocirc/report.hpp"

namespace cocirc {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t trials = 0;   // 0: the suite's default
    std::size_t n = 0;        // 0: the suite's default range
    std::int64_t n_max = 200;  // theorem-integer
    ClassifyTolerances tols;
    unsigned threads = 0;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::size_t checks = 0;
    std::size_t failures = 0;
    std::map<std::string, double> metrics;  // worst-case margins and counts
    std::vector<std::string> notes;
    // Present for suites that classify mass vectors.
    std::optional<ReportSummary> summary;
};

const std::vector<std::string_view>& suite_names();

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);

SuiteResult regular_suite(const SuiteOptions& opts);        // regular n-gon recovery
SuiteResult gradient_suite(const SuiteOptions& opts);       // analytic vs finite differences
SuiteResult equivariance_suite(const SuiteOptions& opts);   // theta_{gm} = g theta_m
SuiteResult quadrilateral_suite(const SuiteOptions& opts);  // quadrilateral_gap < 0
SuiteResult antipodal_suite(const SuiteOptions& opts);      // closed-form reflection value
SuiteResult lemma_chain_suite(const SuiteOptions& opts);
SuiteResult theorem_integer_suite(const SuiteOptions& opts);
SuiteResult two_unequal_suite(const SuiteOptions& opts);
SuiteResult two_groups_suite(const SuiteOptions& opts);
/// Three-special numeric sweep: random triples per sign case plus equal-pair cases.
SuiteResult three_special_suite(const SuiteOptions& opts);

std::string format_suite(const SuiteResult& r);

}  // namespace cocirc
