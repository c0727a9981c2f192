// cocirc - classify mass vectors, run grid scans and verification suites.
//
// Exit status: 0 success, 1 a verification suite failed, 2 usage error or
// unwritable output, 3 the minimizer did not converge.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "cocirc/scan.hpp"
#include "cocirc/suites.hpp"

namespace {

using namespace cocirc;

constexpr int kExitSuiteFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnconverged = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw UsageError("cannot parse number '" + item + "'");
        }
        if (used != item.size()) throw UsageError("cannot parse number '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty list");
    return out;
}

struct CommonFlags {
    std::vector<std::size_t> n_list;
    std::vector<double> alpha_list;
    std::vector<std::string> masses;
    std::vector<std::size_t> special;
    std::vector<double> values;
    std::string grid;
    std::uint64_t seed = 1;
    ClassifyTolerances tols;
    double neg_margin = 0.0;
    std::string out;
    std::string format = "csv";
    unsigned threads = 0;

    void add_tolerances(CLI::App* app) {
        app->add_option("--grad-tol", tols.grad_tol, "Gradient tolerance for convergence")->capture_default_str();
        app->add_option("--center-tol", tols.center_tol, "Tolerance on com_norm and row_spread")
            ->capture_default_str();
        app->add_option("--neg-margin", neg_margin, "Negativity margin (default scales with the data)");
        app->add_option("--max-iters", tols.max_iters, "Minimizer iteration cap")->capture_default_str();
    }

    void add_pattern(CLI::App* app) {
        app->add_option("--special", special, "Special positions l,s (1-based; third special at n)")
            ->delimiter(',')
            ->expected(2);
        app->add_option("--values", values, "Special values m_l,m_s,m_n")->delimiter(',')->expected(3);
    }

    void add_output(CLI::App* app) {
        app->add_option("--out", out, "Output file");
        app->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    }

    void finalize(const CLI::App* app) {
        if (app->count("--neg-margin")) tols.neg_margin = neg_margin;
        if (!special.empty() && special.size() != 2) throw UsageError("--special needs l,s");
        if (!values.empty() && values.size() != 3) throw UsageError("--values needs three numbers");
    }
};

void emit(const CommonFlags& f, const std::vector<ReportRow>& rows, const ReportSummary& summary) {
    std::ostringstream buf;
    if (f.format == "json")
        write_json(buf, rows, summary);
    else
        write_csv(buf, rows, summary);
    if (f.out.empty()) {
        std::cout << buf.str();
        return;
    }
    std::ofstream file(f.out, std::ios::binary);
    if (!file) throw UsageError("cannot write to '" + f.out + "'");
    file << buf.str();
    file.close();
    if (!file) throw UsageError("cannot write to '" + f.out + "'");
}

int cmd_classify(CommonFlags& f, const CLI::App* app) {
    f.finalize(app);
    if (f.alpha_list.size() != 1) throw UsageError("classify needs exactly one --alpha");
    std::vector<double> m;
    if (!f.masses.empty()) {
        if (f.masses.size() != 1 || !f.special.empty() || !f.values.empty())
            throw UsageError("classify takes one --masses list or --n with --special and --values");
        m = parse_list(f.masses.front());
    } else {
        if (f.n_list.size() != 1 || f.special.empty() || f.values.empty())
            throw UsageError("classify needs --masses, or --n with --special and --values");
        SpecialMassPattern p{f.n_list[0], f.special[0], f.special[1], f.values[0], f.values[1], f.values[2], 0};
        p.validate();
        const auto mv = p.masses();
        m.assign(mv.values().begin(), mv.values().end());
    }
    if (m.size() < 3) throw UsageError("need at least 3 masses");

    auto [row, verdict] = classify_row(m, f.alpha_list[0], f.tols);
    ReportSummary summary;
    accumulate(summary, row, verdict, f.tols.center_tol);
    write_text(std::cout, row);
    if (app->count("--format") || !f.out.empty()) {
        if (f.out.empty()) std::cout << '\n';
        emit(f, {row}, summary);
    }
    return verdict.tag == VerdictTag::Unconverged ? kExitUnconverged : 0;
}

int cmd_scan(CommonFlags& f, const CLI::App* app, std::size_t random_triples, bool two_equal, bool controls,
             std::size_t two_unequal, std::size_t two_groups) {
    f.finalize(app);
    ScanSpec spec;
    spec.n_list = f.n_list;
    spec.alpha_list = f.alpha_list;
    for (const auto& m : f.masses) spec.masses.push_back(parse_list(m));
    if (!f.special.empty()) spec.special = std::make_pair(f.special[0], f.special[1]);
    if (!f.values.empty()) spec.values = std::array<double, 3>{f.values[0], f.values[1], f.values[2]};
    if (!f.grid.empty()) spec.grid = parse_grid(f.grid);
    spec.random_triples = random_triples;
    spec.two_equal = two_equal;
    spec.equal_controls = controls;
    spec.two_unequal = two_unequal;
    spec.two_groups = two_groups;
    spec.seed = f.seed;
    spec.tols = f.tols;
    spec.threads = f.threads;

    const auto result = run_scan(spec);
    emit(f, result.rows, result.summary);
    if (!f.out.empty()) {
        std::ostringstream tail;
        write_csv(tail, {}, result.summary);
        const std::string text = tail.str();
        std::cout << text.substr(text.find('\n') + 1);
    }
    return result.summary.unconverged ? kExitUnconverged : 0;
}

int cmd_verify(CommonFlags& f, const CLI::App* app, const std::string& suite, std::size_t trials,
               std::int64_t n_max) {
    f.finalize(app);
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) throw UsageError("unknown suite '" + suite + "'");
    if (f.n_list.size() > 1) throw UsageError("verify takes a single --n");
    SuiteOptions opts;
    opts.seed = f.seed;
    opts.trials = trials;
    opts.n = f.n_list.empty() ? 0 : f.n_list[0];
    opts.n_max = n_max;
    opts.tols = f.tols;
    opts.threads = f.threads;
    const auto r = run_suite(suite, opts);
    std::cout << format_suite(r);
    return r.passed ? 0 : kExitSuiteFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centered co-circular configuration classifier"};
    app.set_config("--config", "", "Config file whose keys mirror the flags");
    app.require_subcommand(1);

    CommonFlags f;

    auto* classify = app.add_subcommand("classify", "Classify a single mass vector");
    classify->add_option("--alpha", f.alpha_list, "Potential exponent")->delimiter(',')->required();
    classify->add_option("--masses", f.masses, "Comma-separated masses");
    classify->add_option("--n", f.n_list, "Number of bodies (with --special/--values)")->delimiter(',');
    f.add_pattern(classify);
    f.add_tolerances(classify);
    f.add_output(classify);

    std::size_t random_triples = 0, two_unequal = 0, two_groups = 0;
    bool two_equal = false, controls = false;
    auto* scan = app.add_subcommand("scan", "Classify a grid of mass vectors");
    scan->add_option("--n", f.n_list, "Comma list of body counts")->delimiter(',');
    scan->add_option("--alpha", f.alpha_list, "Comma list of exponents")->delimiter(',')->required();
    scan->add_option("--masses", f.masses, "Explicit mass vector (repeatable)");
    f.add_pattern(scan);
    scan->add_option("--grid-values", f.grid, "Special values on a grid lo:hi:count");
    scan->add_option("--random-triples", random_triples, "Random special triples per sign case");
    scan->add_flag("--two-equal", two_equal, "Add equal-pair patterns that are not ordered symmetrically");
    scan->add_flag("--controls", controls, "Add an equal-mass control row per n");
    scan->add_option("--two-unequal", two_unequal, "Random instances with n-2 unit masses per n");
    scan->add_option("--two-groups", two_groups, "Random instances with two groups of equal masses per n");
    scan->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    scan->add_option("--threads", f.threads, "Worker threads (0: all cores)");
    f.add_tolerances(scan);
    f.add_output(scan);

    std::string suite;
    std::size_t trials = 0;
    std::int64_t n_max = 200;
    auto* verify = app.add_subcommand("verify", "Run a verification suite");
    std::string suite_help = "Suite:";
    for (auto s : suite_names()) suite_help += " " + std::string(s);
    verify->add_option("suite", suite, suite_help)->required();
    verify->add_option("--trials", trials, "Trial count (0: suite default)");
    verify->add_option("--n", f.n_list, "Fix the number of bodies");
    verify->add_option("--n-max", n_max, "Largest n for theorem-integer")->capture_default_str();
    verify->add_option("--seed", f.seed, "Random seed")->capture_default_str();
    verify->add_option("--threads", f.threads, "Worker threads (0: all cores)");
    f.add_tolerances(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*classify) return cmd_classify(f, classify);
        if (*scan) return cmd_scan(f, scan, random_triples, two_equal, controls, two_unequal, two_groups);
        if (*verify) return cmd_verify(f, verify, suite, trials, n_max);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUnconverged;
    }
    return kExitUsage;
}
