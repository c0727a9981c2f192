#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cocirc/analysis.hpp"
#include "cocirc/certificate.hpp"

namespace cocirc {

/// One classified mass vector. Field order is the CSV column order.
struct ReportRow {
    std::size_t n = 0;
    double alpha = 0.0;
    std::vector<double> masses;
    std::optional<std::size_t> l, s;  // present for three-special patterns
    std::vector<double> theta;
    double grad_norm = 0.0;
    double com_norm = 0.0;
    double row_spread = 0.0;
    double lambda_estimate = 0.0;
    std::string best_g;               // empty when unconverged
    std::optional<double> cert_value;  // empty when unconverged
    std::string prediction_tag;       // "NONE" without a three-special pattern
    std::string verdict_tag;
};

struct ReportSummary {
    std::map<std::string, std::size_t> verdict_counts;
    std::map<std::string, std::size_t> prediction_counts;
    std::size_t rows = 0;
    // Rows whose prediction rules out a centered configuration but whose
    // verdict is CENTERED_CANDIDATE.
    std::size_t prediction_conflicts = 0;
    // Rows with a negative certificate that nonetheless pass both centredness
    // tolerances.
    std::size_t soundness_violations = 0;
    // Converged rows without a negative certificate whose com_norm is at or
    // below kNearCenter; such rows are neither certified nor clearly off-center.
    std::size_t uncertified_near_center = 0;
    std::size_t unconverged = 0;
    // Smallest com_norm among all converged rows.
    std::optional<double> min_com_norm;
    // Smallest com_norm among converged rows without a negative certificate.
    std::optional<double> min_com_norm_uncertified;
};

inline constexpr double kNearCenter = 1e-6;

ReportRow make_row(const MassVector& m, double alpha, const Verdict& verdict,
                   const std::optional<PredictionVerdict>& prediction, double unit_tol = 1e-9);

/// Counts tags and runs the consistency checks. `center_tol` is the
/// tolerance used to classify; negativity uses each row's own verdict.
void accumulate(ReportSummary& summary, const ReportRow& row, const Verdict& verdict, double center_tol);

extern const std::vector<std::string> kCsvColumns;

/// "%.17g"; round-trips every finite double.
std::string format_double(double x);

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows, const ReportSummary& summary);
void write_json(std::ostream& os, const std::vector<ReportRow>& rows, const ReportSummary& summary);

/// Human-readable block for a single row.
void write_text(std::ostream& os, const ReportRow& row);

}  // namespace cocirc
