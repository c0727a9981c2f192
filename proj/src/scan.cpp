#include "cocirc/scan.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <stdexcept>
#include <thread>

#include "cocirc/analysis.hpp"

namespace cocirc {

std::vector<double> GridValues::points() const {
    std::vector<double> out;
    if (count == 0) return out;
    if (count == 1) {
        if (lo != 1.0) out.push_back(lo);
        return out;
    }
    for (std::size_t i = 0; i < count; ++i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
        if (x != 1.0) out.push_back(x);
    }
    return out;
}

GridValues parse_grid(const std::string& text) {
    const auto a = text.find(':');
    const auto b = a == std::string::npos ? a : text.find(':', a + 1);
    if (b == std::string::npos) throw std::invalid_argument("grid must be lo:hi:count");
    GridValues g;
    try {
        std::size_t used = 0;
        g.lo = std::stod(text.substr(0, a));
        g.hi = std::stod(text.substr(a + 1, b - a - 1));
        const std::string c = text.substr(b + 1);
        const long long cnt = std::stoll(c, &used);
        if (used != c.size() || cnt < 1) throw std::invalid_argument("count");
        g.count = static_cast<std::size_t>(cnt);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid must be lo:hi:count with positive count");
    }
    if (!(g.lo > 0.0) || g.hi < g.lo) throw std::invalid_argument("grid needs 0 < lo <= hi");
    return g;
}

namespace {

class JobBuilder {
public:
    explicit JobBuilder(const ScanSpec& spec) : spec_(spec), rng_(spec.seed) {}

    std::vector<ScanJob> build() {
        for (const auto& m : spec_.masses) {
            MassVector checked(m);  // validates
            (void)checked;
            for (double a : spec_.alpha_list) jobs_.push_back({m, a});
        }
        for (std::size_t n : spec_.n_list) {
            if (n < 3) throw std::invalid_argument("n must be at least 3");
            if (spec_.equal_controls) add(std::vector<double>(n, 1.0));
            if (three_special_requested()) three_special(n);
            for (std::size_t k = 0; k < spec_.two_unequal; ++k) two_unequal(n);
            for (std::size_t k = 0; k < spec_.two_groups; ++k) two_groups(n);
        }
        return std::move(jobs_);
    }

private:
    bool three_special_requested() const {
        return spec_.values || spec_.grid || spec_.random_triples > 0 || spec_.two_equal;
    }

    void add(const std::vector<double>& m) {
        for (double a : spec_.alpha_list) jobs_.push_back({m, a});
    }

    double draw(int sign) {
        const auto [lo, hi] = sign > 0 ? spec_.above_one : spec_.below_one;
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    double draw_any() { return draw(std::bernoulli_distribution(0.5)(rng_) ? 1 : -1); }

    void add_pattern(std::size_t n, std::size_t l, std::size_t s, double vl, double vs, double vn) {
        std::vector<double> m(n, 1.0);
        m[l - 1] = vl;
        m[s - 1] = vs;
        m[n - 1] = vn;
        add(m);
    }

    void three_special(std::size_t n) {
        if (n < 4) throw std::invalid_argument("three-special patterns need n >= 4");
        std::vector<std::pair<std::size_t, std::size_t>> places;
        if (spec_.special) {
            const auto [l, s] = *spec_.special;
            if (!(1 <= l && l < s && s < n)) throw std::invalid_argument("--special needs 1 <= l < s < n");
            places.emplace_back(l, s);
        } else {
            for (std::size_t l = 1; l + 1 < n; ++l)
                for (std::size_t s = l + 1; s < n; ++s) places.emplace_back(l, s);
        }
        std::vector<double> grid;
        if (spec_.grid) grid = spec_.grid->points();

        for (const auto& [l, s] : places) {
            if (spec_.values) {
                const auto& v = *spec_.values;
                add_pattern(n, l, s, v[0], v[1], v[2]);
            }
            for (double a : grid)
                for (double b : grid)
                    for (double c : grid) add_pattern(n, l, s, a, b, c);
            for (int mask = 0; mask < 8; ++mask) {
                const std::array<int, 3> sg{mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1};
                for (std::size_t t = 0; t < spec_.random_triples; ++t) {
                    double a = draw(sg[0]), b = draw(sg[1]), c = draw(sg[2]);
                    while (b == a) b = draw(sg[1]);
                    while (c == a || c == b) c = draw(sg[2]);
                    add_pattern(n, l, s, a, b, c);
                }
            }
            if (spec_.two_equal) two_equal(n, l, s);
        }
    }

    // For each choice of equal pair and each sign of the pair and of the odd
    // one out, one instance unless the placement is symmetric.
    void two_equal(std::size_t n, std::size_t l, std::size_t s) {
        for (int pair = 0; pair < 3; ++pair) {
            for (int mask = 0; mask < 4; ++mask) {
                const double eq = draw(mask & 1 ? 1 : -1);
                double odd = draw(mask & 2 ? 1 : -1);
                while (odd == eq) odd = draw(mask & 2 ? 1 : -1);
                std::array<double, 3> v{eq, eq, eq};
                v[static_cast<std::size_t>(2 - pair)] = odd;  // pair 0: (l,s) equal, 1: (l,n), 2: (s,n)
                SpecialMassPattern p{n, l, s, v[0], v[1], v[2], 0};
                if (is_ordered_symmetrically(p)) continue;
                add_pattern(n, l, s, v[0], v[1], v[2]);
            }
        }
    }

    void two_unequal(std::size_t n) {
        std::vector<double> m(n, 1.0);
        const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
        std::size_t j = std::uniform_int_distribution<std::size_t>(0, n - 2)(rng_);
        if (j >= i) ++j;
        m[i] = draw_any();
        m[j] = draw_any();
        add(m);
    }

    void two_groups(std::size_t n) {
        // Random nonconstant split; group values drawn independently and distinct.
        std::vector<int> group(n);
        do {
            for (auto& g : group) g = std::bernoulli_distribution(0.5)(rng_) ? 1 : 0;
        } while (std::all_of(group.begin(), group.end(), [&](int g) { return g == group[0]; }));
        const double a = std::uniform_real_distribution<double>(0.2, 4.0)(rng_);
        double b = a;
        while (std::abs(b - a) < 1e-3) b = std::uniform_real_distribution<double>(0.2, 4.0)(rng_);
        std::vector<double> m(n);
        for (std::size_t k = 0; k < n; ++k) m[k] = group[k] ? a : b;
        add(m);
    }

    const ScanSpec& spec_;
    std::mt19937_64 rng_;
    std::vector<ScanJob> jobs_;
};

}  // namespace

std::vector<ScanJob> build_jobs(const ScanSpec& spec) {
    if (spec.alpha_list.empty()) throw std::invalid_argument("scan needs at least one alpha");
    for (double a : spec.alpha_list) check_alpha(a);
    if (spec.masses.empty() && spec.n_list.empty()) throw std::invalid_argument("scan needs --n or --masses");
    if (!spec.masses.empty() && (spec.special || spec.values || spec.grid || spec.random_triples || spec.two_equal))
        throw std::invalid_argument("explicit masses exclude pattern flags");
    if (!spec.n_list.empty() && !spec.equal_controls && !spec.values && !spec.grid && spec.random_triples == 0 &&
        !spec.two_equal && spec.two_unequal == 0 && spec.two_groups == 0)
        throw std::invalid_argument("scan over n needs a mass generator");
    if (spec.values) {
        for (double v : *spec.values)
            if (!(v > 0.0) || v == 1.0) throw std::invalid_argument("special values must be positive and differ from 1");
    }
    return JobBuilder(spec).build();
}

std::pair<ReportRow, Verdict> classify_row(const std::vector<double>& masses, double alpha,
                                           const ClassifyTolerances& tols) {
    const MassVector m(masses);
    Verdict v = classify(m, alpha, tols);
    std::optional<PredictionVerdict> pred;
    if (const auto p = special_positions(m)) pred = predict_nonexistence(*p);
    ReportRow row = make_row(m, alpha, v, pred);
    return {std::move(row), std::move(v)};
}

ScanResult run_scan(const ScanSpec& spec) {
    const auto jobs = build_jobs(spec);
    struct Slot {
        std::optional<ReportRow> row;
        std::optional<Verdict> verdict;
        std::string error;
    };
    std::vector<Slot> slots(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) {
            try {
                auto [row, v] = classify_row(jobs[i].masses, jobs[i].alpha, spec.tols);
                slots[i].row = std::move(row);
                slots[i].verdict = std::move(v);
            } catch (const std::exception& e) {
                slots[i].error = e.what();
            }
        }
    };
    unsigned threads = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(jobs.size(), 1)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    ScanResult out;
    out.rows.reserve(jobs.size());
    for (auto& s : slots) {
        if (!s.row) throw std::runtime_error("scan job failed: " + s.error);
        accumulate(out.summary, *s.row, *s.verdict, spec.tols.center_tol);
        out.rows.push_back(std::move(*s.row));
    }
    return out;
}

}  // namespace cocirc
