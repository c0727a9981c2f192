// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "cocirc/suites.hpp"

using namespace cocirc;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double x) { return format_double(x); }

double metric(const SuiteResult& r, const std::string& key) {
    const auto it = r.metrics.find(key);
    return it == r.metrics.end() ? 0.0 : it->second;
}

std::string first_note(const SuiteResult& r) { return r.notes.empty() ? "" : "; " + r.notes.front(); }

std::size_t soundness_total = 0;
std::size_t classified_rows = 0;

void collect(const SuiteResult& r) {
    if (!r.summary) return;
    soundness_total += r.summary->soundness_violations;
    classified_rows += r.summary->rows;
}

Outcome regular_recovery() {
    const auto r = regular_suite({});
    return {r.passed, std::to_string(r.checks) + " runs, max angle error " + num(metric(r, "max_angle_error")) +
                          ", max com_norm " + num(metric(r, "max_com_norm")) + ", max row_spread " +
                          num(metric(r, "max_row_spread")) + first_note(r)};
}

Outcome gradient_oracle() {
    const auto r = gradient_suite({});
    return {r.passed, std::to_string(r.checks) + " instances, max fd error/(1+|grad|) " +
                          num(metric(r, "max_fd_error_scaled")) + ", max |sum|/scale " +
                          num(metric(r, "max_sum_scaled")) + first_note(r)};
}

Outcome equivariance() {
    const auto r = equivariance_suite({});
    return {r.passed, std::to_string(r.checks) + " (m, g) pairs, max angle error " +
                          num(metric(r, "max_angle_error")) + ", max relative U change " +
                          num(metric(r, "max_potential_rel")) + first_note(r)};
}

Outcome quadrilateral(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = quadrilateral_suite({});
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double worst = metric(r, "max_gap");
    return {r.passed && worst < 0.0 && seconds < 10.0,
            std::to_string(r.checks) + " evaluations, max gap " + num(worst) + ", " + num(seconds) + " s" +
                first_note(r)};
}

Outcome antipodal() {
    const auto r = antipodal_suite({});
    return {r.passed, std::to_string(r.checks / 2) + " patterns, max relative mismatch " +
                          num(metric(r, "max_relative_mismatch")) + ", reflection not the minimum in " +
                          num(metric(r, "not_minimum")) + " patterns, worst excess over minimum (relative) " +
                          num(metric(r, "max_gap_to_minimum_rel"))};
}

Outcome lemma_chain() {
    const auto r = lemma_chain_suite({});
    return {r.passed, std::to_string(r.checks) + " trials, " + std::to_string(r.failures) +
                          " failures, max relative mismatch " + num(metric(r, "max_relative_mismatch")) +
                          ", largest reflection value " + num(metric(r, "max_reflection_value")) + first_note(r)};
}

Outcome theorem_integer(double& seconds) {
    SuiteOptions o;
    o.n_max = 200;
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = theorem_integer_suite(o);
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {r.passed && seconds < 5.0, num(metric(r, "sign_systems")) + " sign systems, " +
                                           num(metric(r, "satisfiable")) + " satisfiable, " +
                                           num(metric(r, "antipodal_routed")) + " antipodal, " + num(seconds) + " s"};
}

Outcome numeric_sweep(double& seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = three_special_suite({});
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    collect(r);
    const std::string min_un =
        r.metrics.count("min_com_norm_uncertified") ? num(metric(r, "min_com_norm_uncertified")) : "none";
    return {r.passed && seconds < 600.0,
            num(metric(r, "rows")) + " rows, " + num(metric(r, "centered_candidate")) + " CENTERED_CANDIDATE, " +
                num(metric(r, "certified")) + " certified, " + num(metric(r, "uncertified_near_center")) +
                " uncertified with com_norm <= 1e-6, min com_norm " + num(metric(r, "min_com_norm")) +
                ", min com_norm without certificate " + min_un + ", " + num(seconds) + " s" + first_note(r)};
}

Outcome regressions() {
    const auto a = two_unequal_suite({});
    const auto b = two_groups_suite({});
    collect(a);
    collect(b);
    const double centered = metric(a, "centered_candidate") + metric(b, "centered_candidate");
    return {a.passed && b.passed && centered == 0.0,
            "two-unequal " + num(metric(a, "rows")) + " rows, two-groups " + num(metric(b, "rows")) + " rows, " +
                num(centered) + " CENTERED_CANDIDATE" + first_note(a) + first_note(b)};
}

Outcome soundness() {
    return {soundness_total == 0 && classified_rows > 0,
            std::to_string(classified_rows) + " classified rows, " + std::to_string(soundness_total) +
                " with a negative certificate inside the centredness tolerances"};
}

}  // namespace

int main() {
    double t4 = 0, t7 = 0, t8 = 0;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 regular-polygon recovery", regular_recovery},
        {"2 gradient oracle", gradient_oracle},
        {"3 equivariance", equivariance},
        {"4 four-point chord inequality", [&] { return quadrilateral(t4); }},
        {"5 antipodal reflection anchor", antipodal},
        {"6 lemma expansions", lemma_chain},
        {"7 integer sign engine", [&] { return theorem_integer(t7); }},
        {"8 three-special numeric sweep", [&] { return numeric_sweep(t8); }},
        {"9 two-unequal and two-groups regression", regressions},
        {"10 soundness cross-check", soundness},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("criterion %s: %s - %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed ? 1 : 0;
}
