#include "cocirc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "cocirc/certificate.hpp"
#include "cocirc/optimizer.hpp"

namespace cocirc {

namespace {

// Boost's mixed rational/integer comparisons recurse forever under C++20
// rewritten operators, so signs are read from the normalized numerator.
int sign_of(const Rational& r) { return r.numerator() > 0 ? 1 : (r.numerator() < 0 ? -1 : 0); }

std::string format_rational(const Rational& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

std::string describe_violation(const SignConstraintSystem& sys) {
    std::ostringstream os;
    const auto ps = sys.products.as_array();
    for (std::size_t k = 0; k < sys.violated.size(); ++k) {
        const int c = sys.violated[k];
        if (k) os << "; ";
        os << "p" << c << " = " << format_rational(ps[c - 1]) << " violates required "
           << (sys.required[c - 1] > 0 ? "> 0" : "< 0");
    }
    return os.str();
}

}  // namespace

SideProducts side_predicates(std::int64_t l, std::int64_t s, std::int64_t n) {
    if (!(1 <= l && l < s && s < n)) throw std::invalid_argument("side predicates need 1 <= l < s < n");
    const Rational half(n, 2);
    const Rational a1 = Rational(l) - half, b1 = Rational(s) - half;
    const Rational a2 = Rational(s - l) - half, b2 = Rational(n - l) - half;
    const Rational a3 = Rational(l + n - s) - half, b3 = Rational(n - s) - half;
    SideProducts out{a1 * b1, a2 * b2, a3 * b3};
    for (const auto& f : {a1, b1, a2, b2, a3, b3})
        if (f.numerator() == 0) out.has_zero_factor = true;
    return out;
}

std::array<int, 3> required_signs(const std::array<int, 3>& signs) {
    for (int x : signs)
        if (x == 0) throw std::invalid_argument("special masses must differ from 1");
    const auto sg = [](int x) { return x > 0 ? 1 : -1; };
    const int sl = sg(signs[0]), ss = sg(signs[1]), sn = sg(signs[2]);
    return {sl * ss, ss * sn, sl * sn};
}

SignConstraintSystem sign_system(std::int64_t l, std::int64_t s, std::int64_t n, const std::array<int, 3>& signs) {
    SignConstraintSystem sys;
    sys.products = side_predicates(l, s, n);
    sys.required = required_signs(signs);
    const auto ps = sys.products.as_array();
    for (int c = 0; c < 3; ++c)
        if (sign_of(ps[c]) != sys.required[c]) sys.violated.push_back(c + 1);
    return sys;
}

std::string_view to_string(PredictionTag tag) {
    switch (tag) {
        case PredictionTag::AntipodalCertificate: return "ANTIPODAL_CERTIFICATE";
        case PredictionTag::LemmaChainInfeasible: return "LEMMA_CHAIN_INFEASIBLE";
        case PredictionTag::HypothesesNotMet: return "HYPOTHESES_NOT_MET";
        case PredictionTag::SignSystemSatisfiable: return "SIGN_SYSTEM_SATISFIABLE";
    }
    return "UNKNOWN";
}

PredictionVerdict predict_nonexistence(const SpecialMassPattern& p, double value_tol) {
    p.validate();
    const auto n = static_cast<std::int64_t>(p.n);
    const auto l = static_cast<std::int64_t>(p.pos_l);
    const auto s = static_cast<std::int64_t>(p.pos_s);

    PredictionVerdict out;
    if (side_predicates(l, s, n).has_zero_factor) {
        const auto aligned = align_antipodal(p);
        out.tag = PredictionTag::AntipodalCertificate;
        std::ostringstream os;
        if (2 * s == n)
            os << "specials at " << s << " and " << n;
        else if (2 * l == n)
            os << "specials at " << l << " and " << n;
        else
            os << "specials at " << l << " and " << s;
        os << " are separated by " << n / 2 - 1 << " bodies";
        if (aligned) os << "; reflection certificate after rotation P^" << aligned->rotation;
        out.witness = os.str();
        return out;
    }

    if (is_ordered_symmetrically(p, value_tol)) {
        out.tag = PredictionTag::HypothesesNotMet;
        out.witness = "two equal specials are ordered symmetrically about the third";
        return out;
    }

    const std::array<int, 3> signs{p.sign_l(), p.sign_s(), p.sign_n()};
    auto sys = sign_system(l, s, n, signs);

    // An equal pair can be labeled either way round; both labelings must fail.
    std::string note;
    if (std::abs(p.val_l - p.val_s) <= value_tol || std::abs(p.val_s - p.val_n) <= value_tol ||
        std::abs(p.val_l - p.val_n) <= value_tol) {
        note = " (equal pair; both labelings give the same signs)";
        if (symmetric_conventions_disagree(p, value_tol)) note += " [shortest-arc reading would call this symmetric]";
    }

    out.tag = sys.violated.empty() ? PredictionTag::SignSystemSatisfiable : PredictionTag::LemmaChainInfeasible;
    out.witness = sys.violated.empty() ? "all three side constraints satisfiable" : describe_violation(sys);
    out.witness += note;
    out.system = std::move(sys);
    return out;
}

TheoremCheckReport exhaustive_theorem_check(std::int64_t n_max) {
    if (n_max < 4) throw std::invalid_argument("n_max must be at least 4");
    TheoremCheckReport rep;
    rep.n_max = n_max;
    for (std::int64_t n = 4; n <= n_max; ++n) {
        for (std::int64_t l = 1; l < n - 1; ++l) {
            for (std::int64_t s = l + 1; s < n; ++s) {
                const auto prod = side_predicates(l, s, n);
                const auto ps = prod.as_array();
                const std::array<int, 3> psign{sign_of(ps[0]), sign_of(ps[1]), sign_of(ps[2])};
                // Arc gaps between specials: (l,s), (s,n), (n,l).
                const std::int64_t g_ls = s - l - 1, g_sn = n - s - 1, g_nl = l - 1;
                for (int mask = 0; mask < 8; ++mask) {
                    const std::array<int, 3> signs{mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1};
                    ++rep.patterns;
                    if (prod.has_zero_factor) {
                        ++rep.antipodal_routed;
                        continue;
                    }
                    ++rep.sign_systems;
                    const bool sym = (signs[0] == signs[1] && g_nl == g_sn) ||
                                     (signs[1] == signs[2] && g_ls == g_nl) ||
                                     (signs[0] == signs[2] && g_ls == g_sn);
                    if (sym) ++rep.symmetric_capable;

                    const auto req = required_signs(signs);
                    int violated = 0, last = -1;
                    for (int c = 0; c < 3; ++c) {
                        if (psign[c] != req[c]) {
                            ++violated;
                            last = c;
                            ++rep.violated_count[c];
                        }
                    }
                    if (violated == 1) ++rep.sole_violation[last];
                    if (violated == 0) {
                        ++rep.satisfiable;
                        if (rep.satisfiable_examples.size() < 10) {
                            std::ostringstream os;
                            os << "n=" << n << " l=" << l << " s=" << s << " signs=" << signs[0] << "," << signs[1]
                               << "," << signs[2];
                            rep.satisfiable_examples.push_back(os.str());
                        }
                    }
                }
            }
        }
    }
    return rep;
}

std::string_view to_string(LemmaCase c) {
    switch (c) {
        case LemmaCase::OppositeSigns: return "opposite-signs";
        case LemmaCase::SameSignsMirror: return "same-signs-mirror";
        case LemmaCase::SameSignsStraddle: return "same-signs-straddle";
    }
    return "unknown";
}

double lemma_expansion(LemmaCase c, const SpecialMassPattern& p, const InteractionMatrix& h) {
    const std::size_t n = p.n, l = p.pos_l, s = p.pos_s;
    auto H = [&](std::size_t i, std::size_t j) { return h(i - 1, j - 1); };
    const double ml = p.val_l, ms = p.val_s;
    switch (c) {
        case LemmaCase::OppositeSigns: {
            // l < s < n/2; reflection moves l -> n-l, s -> n-s.
            const double bracket = -H(l, s) + H(l, n - s) + H(s, n - l) - H(n - s, n - l);
            return -2.0 * (1 - ml) * (1 - ml) * H(l, n - l) - 2.0 * (1 - ms) * (1 - ms) * H(s, n - s) +
                   2.0 * (1 - ml) * (ms - 1) * bracket;
        }
        case LemmaCase::SameSignsMirror:
            // l + s = n: the reflection swaps the two specials.
            return -2.0 * (ml - ms) * (ml - ms) * H(l, s);
        case LemmaCase::SameSignsStraddle: {
            // l < n-s < n/2 < s < n-l.
            const double bracket = -H(l, n - s) + H(l, s) + H(n - s, n - l) - H(s, n - l);
            return -2.0 * (1 - ml) * (1 - ml) * H(l, n - l) - 2.0 * (1 - ms) * (1 - ms) * H(s, n - s) +
                   2.0 * (ml - 1) * (ms - 1) * bracket;
        }
    }
    throw std::logic_error("unknown lemma case");
}

namespace {

struct LemmaInstance {
    LemmaCase lemma_case;
    SpecialMassPattern pattern;
};

double draw_special(std::mt19937_64& rng, int sign) {
    return sign > 0 ? std::uniform_real_distribution<double>(1.1, 4.0)(rng)
                    : std::uniform_real_distribution<double>(0.2, 0.9)(rng);
}

std::size_t draw_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

// Rejection-samples positions for the chosen case; returns nullopt if n admits none.
std::optional<LemmaInstance> draw_instance(std::mt19937_64& rng, LemmaCase c, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> admissible;
    for (std::size_t l = 1; l + 1 < n; ++l) {
        for (std::size_t s = l + 1; s < n; ++s) {
            const bool ok = [&] {
                switch (c) {
                    case LemmaCase::OppositeSigns: return 2 * s < n;
                    case LemmaCase::SameSignsMirror: return 2 * l < n && l + s == n;
                    case LemmaCase::SameSignsStraddle: return 2 * l < n && 2 * s > n && l + s < n;
                }
                return false;
            }();
            if (ok) admissible.emplace_back(l, s);
        }
    }
    if (admissible.empty()) return std::nullopt;
    const auto [l, s] = admissible[draw_index(rng, 0, admissible.size() - 1)];

    SpecialMassPattern p;
    p.n = n;
    p.pos_l = l;
    p.pos_s = s;
    const int sl = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    const int ss = c == LemmaCase::OppositeSigns ? -sl : sl;
    const int sn = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    p.val_l = draw_special(rng, sl);
    p.val_s = draw_special(rng, ss);
    while (c == LemmaCase::SameSignsMirror && std::abs(p.val_s - p.val_l) < 1e-3) p.val_s = draw_special(rng, ss);
    p.val_n = draw_special(rng, sn);
    return LemmaInstance{c, p};
}

std::string violating_pair_name(const SpecialMassPattern& relabeled, std::size_t rotation, const SpecialMassPattern& orig) {
    // Original frame specials at l, s carry the violation. Track where they land.
    const std::size_t n = orig.n;
    const std::size_t r = rotation % n;
    auto moved = [&](std::size_t pos) { return (pos + 2 * n - r - 1) % n + 1; };
    const std::size_t a = moved(orig.pos_l), b = moved(orig.pos_s);
    auto role = [&](std::size_t q) {
        if (q == relabeled.pos_l) return 'l';
        if (q == relabeled.pos_s) return 's';
        return 'n';
    };
    std::string pair{role(a), role(b)};
    std::sort(pair.begin(), pair.end(), [](char x, char y) {
        auto rank = [](char ch) { return ch == 'l' ? 0 : ch == 's' ? 1 : 2; };
        return rank(x) < rank(y);
    });
    return "(" + std::string(1, pair[0]) + "," + std::string(1, pair[1]) + ")";
}

}  // namespace

LemmaSuiteReport run_lemma_suite(const LemmaSuiteOptions& opts) {
    if (opts.n_min < 5 || opts.n_max < opts.n_min) throw std::invalid_argument("lemma suite needs 5 <= n_min <= n_max");
    if (opts.alphas.empty()) throw std::invalid_argument("lemma suite needs at least one alpha");
    LemmaSuiteReport rep;
    rep.trials = opts.trials;

    for (std::size_t t = 0; t < opts.trials; ++t) {
        std::seed_seq seq{opts.seed, static_cast<std::uint64_t>(t)};
        std::mt19937_64 rng(seq);
        const auto c = static_cast<LemmaCase>(t % 3);
        std::optional<LemmaInstance> inst;
        std::size_t n = 0;
        while (!inst) {
            n = draw_index(rng, opts.n_min, opts.n_max);
            inst = draw_instance(rng, c, n);
        }
        const double alpha = opts.alphas[draw_index(rng, 0, opts.alphas.size() - 1)];
        const MassVector m = inst->pattern.masses();

        LemmaTrial row;
        row.lemma_case = c;
        row.n = n;
        row.alpha = alpha;
        row.masses.assign(m.values().begin(), m.values().end());
        ++rep.per_case[static_cast<std::size_t>(c)];

        const auto mr = minimize_potential(m, alpha);
        row.converged = mr.converged;
        if (!mr.converged) {
            ++rep.unconverged;
            rep.rows.push_back(std::move(row));
            continue;
        }
        const auto h = interaction_matrix(mr.theta_min, alpha);
        const auto cert = certificate_search(m, mr, alpha);
        row.reflection_value = cert.all_values[n];  // enumerate_group: index n is S
        row.expansion_value = lemma_expansion(c, inst->pattern, h);
        row.relative_mismatch = std::abs(row.reflection_value - row.expansion_value) /
                                std::max(std::abs(row.expansion_value), std::numeric_limits<double>::min());
        row.neg_margin = cert.neg_margin;

        // Relabel by a random rotation and rerun the full search from scratch.
        row.rotation = draw_index(rng, 1, n - 1);
        const MassVector rotated = act_on_masses(rotation_element(row.rotation, n), m);
        const auto rp = special_positions(rotated);
        row.relabeled_pair = rp ? violating_pair_name(*rp, row.rotation + rp->rotation, inst->pattern) : "?";
        const auto rr = minimize_potential(rotated, alpha);
        bool relabeled_ok = false;
        if (rr.converged) {
            const auto rc = certificate_search(rotated, rr, alpha);
            row.relabeled_best_value = rc.best_value;
            relabeled_ok = rc.is_negative;
        }

        row.passed = row.reflection_value < -row.neg_margin && row.relative_mismatch <= opts.mismatch_tol &&
                     cert.best_value <= row.reflection_value && relabeled_ok;
        if (!row.passed) ++rep.failures;
        rep.max_relative_mismatch = std::max(rep.max_relative_mismatch, row.relative_mismatch);
        rep.max_reflection_value = std::max(rep.max_reflection_value, row.reflection_value);
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

}  // namespace cocirc
