#pragma once
/**
 * scan.hpp - deterministic batch classification over mass-vector grids.
 *
 * Jobs are generated sequentially from one seeded engine, evaluated by a
 * worker pool, and returned in generation order, so a fixed seed gives a
 * byte-identical report regardless of thread count.
 */

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cocirc/certificate.hpp"
#include "cocirc/report.hpp"

namespace cocirc {

struct GridValues {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;

    /// Evenly spaced points lo..hi; an exact 1.0 is dropped.
    std::vector<double> points() const;
};

/// Parses "lo:hi:count". Throws std::invalid_argument.
GridValues parse_grid(const std::string& text);

struct ScanSpec {
    std::vector<std::size_t> n_list;
    std::vector<double> alpha_list;

    // Explicit mass vectors; each is classified for every alpha. n_list is
    // ignored for these.
    std::vector<std::vector<double>> masses;

    // Three-special generator. Without `special` every 1 <= l < s < n is used.
    std::optional<std::pair<std::size_t, std::size_t>> special;
    std::optional<std::array<double, 3>> values;  // fixed (m_l, m_s, m_n)
    std::optional<GridValues> grid;               // every triple from the grid
    std::size_t random_triples = 0;               // per sign case, distinct values
    bool two_equal = false;                       // equal-pair patterns that are not symmetric
    std::pair<double, double> above_one{1.1, 4.0};
    std::pair<double, double> below_one{0.2, 0.9};

    bool equal_controls = false;    // one all-ones row per n
    std::size_t two_unequal = 0;    // per n: n-2 unit masses and two others
    std::size_t two_groups = 0;     // per n: two groups of equal masses

    std::uint64_t seed = 1;
    ClassifyTolerances tols;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct ScanJob {
    std::vector<double> masses;
    double alpha = 0.0;
};

struct ScanResult {
    std::vector<ReportRow> rows;
    ReportSummary summary;
};

/// Throws std::invalid_argument on an empty or inconsistent spec.
std::vector<ScanJob> build_jobs(const ScanSpec& spec);

ScanResult run_scan(const ScanSpec& spec);

/// Classifies one mass vector and attaches the three-special prediction when
/// the vector has exactly three non-unit masses.
std::pair<ReportRow, Verdict> classify_row(const std::vector<double>& masses, double alpha,
                                           const ClassifyTolerances& tols);

}  // namespace cocirc
