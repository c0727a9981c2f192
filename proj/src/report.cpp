#include "cocirc/report.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace cocirc {

const std::vector<std::string> kCsvColumns{
    "n",         "alpha",      "masses",          "l",      "s",          "theta",          "grad_norm",
    "com_norm",  "row_spread", "lambda_estimate", "best_g", "cert_value", "prediction_tag", "verdict_tag"};

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

ReportRow make_row(const MassVector& m, double alpha, const Verdict& verdict,
                   const std::optional<PredictionVerdict>& prediction, double unit_tol) {
    ReportRow row;
    row.n = m.size();
    row.alpha = alpha;
    row.masses.assign(m.values().begin(), m.values().end());
    if (const auto p = special_positions(m, unit_tol); p && p->rotation == 0) {
        row.l = p->pos_l;
        row.s = p->pos_s;
    }
    const auto th = verdict.minimizer.theta_min.values();
    row.theta.assign(th.begin(), th.end());
    row.grad_norm = verdict.diagnostics.grad_norm;
    row.com_norm = verdict.diagnostics.com_norm;
    row.row_spread = verdict.diagnostics.row_spread;
    row.lambda_estimate = verdict.diagnostics.lambda_estimate;
    if (verdict.certificate) {
        row.best_g = to_string(verdict.certificate->best_element);
        row.cert_value = verdict.certificate->best_value;
    }
    row.prediction_tag = prediction ? std::string(to_string(prediction->tag)) : "NONE";
    row.verdict_tag = std::string(to_string(verdict.tag));
    return row;
}

void accumulate(ReportSummary& summary, const ReportRow& row, const Verdict& verdict, double center_tol) {
    ++summary.rows;
    ++summary.verdict_counts[row.verdict_tag];
    ++summary.prediction_counts[row.prediction_tag];
    const bool rules_out = row.prediction_tag == to_string(PredictionTag::AntipodalCertificate) ||
                           row.prediction_tag == to_string(PredictionTag::LemmaChainInfeasible);
    if (rules_out && verdict.tag == VerdictTag::CenteredCandidate) ++summary.prediction_conflicts;
    if (!verdict.certificate) {
        ++summary.unconverged;
        return;
    }
    if (!summary.min_com_norm || row.com_norm < *summary.min_com_norm) summary.min_com_norm = row.com_norm;
    const bool centered = row.com_norm <= center_tol && row.row_spread <= center_tol;
    if (verdict.certificate->is_negative) {
        if (centered) ++summary.soundness_violations;
        return;
    }
    if (row.com_norm <= kNearCenter) ++summary.uncertified_near_center;
    if (!summary.min_com_norm_uncertified || row.com_norm < *summary.min_com_norm_uncertified)
        summary.min_com_norm_uncertified = row.com_norm;
}

namespace {

std::string join(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ';';
        out += format_double(v[i]);
    }
    return out;
}

template <typename T>
std::string opt_cell(const std::optional<T>& v) {
    if (!v) return "";
    if constexpr (std::is_floating_point_v<T>)
        return format_double(*v);
    else
        return std::to_string(*v);
}

std::string summary_line(const ReportSummary& s) {
    std::string out = "# rows=" + std::to_string(s.rows);
    for (const auto& [tag, count] : s.verdict_counts) out += " " + tag + "=" + std::to_string(count);
    out += " prediction_conflicts=" + std::to_string(s.prediction_conflicts);
    out += " soundness_violations=" + std::to_string(s.soundness_violations);
    out += " uncertified_near_center=" + std::to_string(s.uncertified_near_center);
    out += " min_com_norm=" + (s.min_com_norm ? format_double(*s.min_com_norm) : std::string("none"));
    out += " min_com_norm_uncertified=" +
           (s.min_com_norm_uncertified ? format_double(*s.min_com_norm_uncertified) : std::string("none"));
    return out;
}

nlohmann::ordered_json summary_json(const ReportSummary& s) {
    nlohmann::ordered_json j;
    j["rows"] = s.rows;
    j["verdict_counts"] = s.verdict_counts;
    j["prediction_counts"] = s.prediction_counts;
    j["prediction_conflicts"] = s.prediction_conflicts;
    j["soundness_violations"] = s.soundness_violations;
    j["uncertified_near_center"] = s.uncertified_near_center;
    j["unconverged"] = s.unconverged;
    j["min_com_norm"] = s.min_com_norm ? nlohmann::ordered_json(*s.min_com_norm) : nlohmann::ordered_json();
    j["min_com_norm_uncertified"] =
        s.min_com_norm_uncertified ? nlohmann::ordered_json(*s.min_com_norm_uncertified) : nlohmann::ordered_json();
    return j;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<ReportRow>& rows, const ReportSummary& summary) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) os << (i ? "," : "") << kCsvColumns[i];
    os << '\n';
    for (const auto& r : rows) {
        os << r.n << ',' << format_double(r.alpha) << ',' << join(r.masses) << ',' << opt_cell(r.l) << ','
           << opt_cell(r.s) << ',' << join(r.theta) << ',' << format_double(r.grad_norm) << ','
           << format_double(r.com_norm) << ',' << format_double(r.row_spread) << ','
           << format_double(r.lambda_estimate) << ',' << r.best_g << ',' << opt_cell(r.cert_value) << ','
           << r.prediction_tag << ',' << r.verdict_tag << '\n';
    }
    os << summary_line(summary) << '\n';
}

void write_json(std::ostream& os, const std::vector<ReportRow>& rows, const ReportSummary& summary) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["rows"] = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json j;
        j["n"] = r.n;
        j["alpha"] = r.alpha;
        j["masses"] = r.masses;
        j["l"] = r.l ? ordered_json(*r.l) : ordered_json();
        j["s"] = r.s ? ordered_json(*r.s) : ordered_json();
        j["theta"] = r.theta;
        j["grad_norm"] = r.grad_norm;
        j["com_norm"] = r.com_norm;
        j["row_spread"] = r.row_spread;
        j["lambda_estimate"] = r.lambda_estimate;
        j["best_g"] = r.best_g.empty() ? ordered_json() : ordered_json(r.best_g);
        j["cert_value"] = r.cert_value ? ordered_json(*r.cert_value) : ordered_json();
        j["prediction_tag"] = r.prediction_tag;
        j["verdict_tag"] = r.verdict_tag;
        doc["rows"].push_back(std::move(j));
    }
    doc["summary"] = summary_json(summary);
    os << doc.dump(2) << '\n';
}

void write_text(std::ostream& os, const ReportRow& r) {
    os << "n               " << r.n << '\n'
       << "alpha           " << format_double(r.alpha) << '\n'
       << "masses          " << join(r.masses) << '\n';
    if (r.l) os << "specials (l,s)  " << *r.l << "," << *r.s << '\n';
    os << "theta           " << join(r.theta) << '\n'
       << "grad_norm       " << format_double(r.grad_norm) << '\n'
       << "com_norm        " << format_double(r.com_norm) << '\n'
       << "row_spread      " << format_double(r.row_spread) << '\n'
       << "lambda_estimate " << format_double(r.lambda_estimate) << '\n'
       << "best_g          " << (r.best_g.empty() ? "-" : r.best_g) << '\n'
       << "cert_value      " << (r.cert_value ? format_double(*r.cert_value) : "-") << '\n'
       << "prediction      " << r.prediction_tag << '\n'
       << "verdict         " << r.verdict_tag << '\n';
}

}  // namespace cocirc
