#include <gtest/gtest.h>

#include <cmath>

#include "cocirc/analysis.hpp"
#include "cocirc/certificate.hpp"

using namespace cocirc;

namespace {

int sgn(std::int64_t x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// The products scaled by 4 so everything stays in integers.
std::array<std::int64_t, 3> scaled_products(std::int64_t l, std::int64_t s, std::int64_t n) {
    return {(2 * l - n) * (2 * s - n), (2 * (s - l) - n) * (2 * (n - l) - n),
            (2 * (l + n - s) - n) * (2 * (n - s) - n)};
}

bool any_zero_factor(std::int64_t l, std::int64_t s, std::int64_t n) {
    for (std::int64_t f : {2 * l - n, 2 * s - n, 2 * (s - l) - n, 2 * (n - l) - n, 2 * (l + n - s) - n, 2 * (n - s) - n})
        if (f == 0) return true;
    return false;
}

Rational R(std::int64_t a, std::int64_t b = 1) { return Rational(a, b); }

}  // namespace

TEST(SidePredicates, Examples) {
    const auto a = side_predicates(1, 2, 6);
    EXPECT_EQ(a.p1, R(2));
    EXPECT_EQ(a.p2, R(-4));
    EXPECT_EQ(a.p3, R(2));
    EXPECT_FALSE(a.has_zero_factor);
    const auto b = side_predicates(4, 5, 6);
    EXPECT_EQ(b.p1, R(2));
    EXPECT_EQ(b.p2, R(2));
    EXPECT_EQ(b.p3, R(-4));
    EXPECT_TRUE(side_predicates(3, 4, 6).has_zero_factor);
    EXPECT_TRUE(side_predicates(1, 2, 4).has_zero_factor);
    // Odd n keeps the half as a fraction: (1 - 5/2)(2 - 5/2) = 3/4.
    EXPECT_EQ(side_predicates(1, 2, 5).p1, R(3, 4));
    EXPECT_THROW(side_predicates(2, 2, 5), std::invalid_argument);
    EXPECT_THROW(side_predicates(0, 2, 5), std::invalid_argument);
    EXPECT_THROW(side_predicates(1, 5, 5), std::invalid_argument);
}

TEST(SidePredicates, MatchIntegerOracleAndReflection) {
    for (std::int64_t n = 4; n <= 40; ++n)
        for (std::int64_t l = 1; l < n - 1; ++l)
            for (std::int64_t s = l + 1; s < n; ++s) {
                const auto p = side_predicates(l, s, n);
                const auto q = scaled_products(l, s, n);
                EXPECT_EQ(p.p1 * 4, R(q[0]));
                EXPECT_EQ(p.p2 * 4, R(q[1]));
                EXPECT_EQ(p.p3 * 4, R(q[2]));
                EXPECT_EQ(p.has_zero_factor, any_zero_factor(l, s, n));
                // Reflection swaps the roles of l and s and exchanges p2 with p3.
                const auto r = side_predicates(n - s, n - l, n);
                EXPECT_EQ(r.p1, p.p1);
                EXPECT_EQ(r.p2, p.p3);
                EXPECT_EQ(r.p3, p.p2);
            }
}

TEST(RequiredSigns, Examples) {
    EXPECT_EQ(required_signs({1, 1, 1}), (std::array<int, 3>{1, 1, 1}));
    EXPECT_EQ(required_signs({-1, 1, 1}), (std::array<int, 3>{-1, 1, -1}));
    EXPECT_EQ(required_signs({-1, -1, 1}), (std::array<int, 3>{1, -1, -1}));
    EXPECT_THROW(required_signs({0, 1, 1}), std::invalid_argument);
}

TEST(Predict, Examples) {
    const auto a = predict_nonexistence(SpecialMassPattern{6, 1, 2, 2.0, 3.0, 4.0, 0});
    EXPECT_EQ(a.tag, PredictionTag::LemmaChainInfeasible);
    ASSERT_TRUE(a.system);
    EXPECT_EQ(a.system->violated, std::vector<int>{2});
    EXPECT_NE(a.witness.find("p2"), std::string::npos);

    EXPECT_EQ(predict_nonexistence(SpecialMassPattern{4, 1, 2, 3, 2, 5, 0}).tag, PredictionTag::AntipodalCertificate);
    EXPECT_EQ(predict_nonexistence(SpecialMassPattern{5, 2, 3, 2, 2, 3, 0}).tag, PredictionTag::HypothesesNotMet);
    EXPECT_EQ(to_string(PredictionTag::LemmaChainInfeasible), "LEMMA_CHAIN_INFEASIBLE");
}

TEST(Predict, NeverSatisfiableOffSymmetry) {
    for (std::size_t n = 4; n <= 14; ++n)
        for (std::size_t l = 1; l + 1 < n; ++l)
            for (std::size_t s = l + 1; s < n; ++s)
                for (int mask = 0; mask < 8; ++mask) {
                    const double vl = mask & 1 ? 2.0 : 0.5, vs = mask & 2 ? 3.0 : 0.25, vn = mask & 4 ? 1.5 : 0.75;
                    const auto v = predict_nonexistence(SpecialMassPattern{n, l, s, vl, vs, vn, 0});
                    EXPECT_NE(v.tag, PredictionTag::SignSystemSatisfiable);
                    EXPECT_NE(v.tag, PredictionTag::HypothesesNotMet);
                    if (v.tag == PredictionTag::LemmaChainInfeasible) EXPECT_FALSE(v.system->violated.empty());
                }
}

TEST(ExhaustiveCheck, MatchesBruteForce) {
    for (std::int64_t n_max : {4, 6, 12}) {
        const auto rep = exhaustive_theorem_check(n_max);
        std::uint64_t patterns = 0, antipodal = 0, satisfiable = 0;
        for (std::int64_t n = 4; n <= n_max; ++n)
            for (std::int64_t l = 1; l < n - 1; ++l)
                for (std::int64_t s = l + 1; s < n; ++s)
                    for (int mask = 0; mask < 8; ++mask) {
                        ++patterns;
                        if (any_zero_factor(l, s, n)) {
                            ++antipodal;
                            continue;
                        }
                        const int a = mask & 1 ? 1 : -1, b = mask & 2 ? 1 : -1, c = mask & 4 ? 1 : -1;
                        const auto q = scaled_products(l, s, n);
                        if (sgn(q[0]) == a * b && sgn(q[1]) == b * c && sgn(q[2]) == a * c) ++satisfiable;
                    }
        EXPECT_EQ(rep.patterns, patterns);
        EXPECT_EQ(rep.antipodal_routed, antipodal);
        EXPECT_EQ(rep.sign_systems, patterns - antipodal);
        EXPECT_EQ(rep.satisfiable, satisfiable);
        EXPECT_EQ(satisfiable, 0u);
        EXPECT_TRUE(rep.passed());
    }
    EXPECT_THROW(exhaustive_theorem_check(3), std::invalid_argument);
}

TEST(ExhaustiveCheck, SixBodyTable) {
    // n = 6 by hand: 10 placements x 8 sign triples; placements with a factor
    // 0 are those touching position 3 or with s - l = 3.
    const auto rep = exhaustive_theorem_check(6);
    std::uint64_t six_antipodal = 0;
    for (std::int64_t l = 1; l < 5; ++l)
        for (std::int64_t s = l + 1; s < 6; ++s)
            if (l == 3 || s == 3 || s - l == 3) six_antipodal += 8;
    EXPECT_EQ(six_antipodal, 6u * 8u);
    EXPECT_EQ(rep.satisfiable, 0u);
}

TEST(LemmaExpansion, MatchesSearchAndQuadrilateral) {
    const SpecialMassPattern p{6, 1, 2, 2.0, 0.5, 3.0, 0};
    const auto m = p.masses();
    const auto r = minimize_potential(m, 1.0);
    ASSERT_TRUE(r.converged);
    const auto h = interaction_matrix(r.theta_min, 1.0);
    const auto c = certificate_search(m, r, 1.0);
    const double e = lemma_expansion(LemmaCase::OppositeSigns, p, h);
    EXPECT_NEAR(c.all_values[6], e, 1e-10 * std::abs(e));
    EXPECT_LT(e, 0.0);
    // The bracket is the four-point gap at (s, n-s, n-l, l).
    const double bracket = -h(0, 1) + h(0, 3) + h(1, 4) - h(3, 4);
    EXPECT_NEAR(bracket, quadrilateral_gap(r.theta_min, 1, 3, 4, 0, 1.0), 1e-14);

    const SpecialMassPattern mirror{7, 2, 5, 3.0, 1.5, 0.4, 0};
    const auto mm = mirror.masses();
    const auto rm = minimize_potential(mm, 2.0);
    const auto hm = interaction_matrix(rm.theta_min, 2.0);
    const auto cm = certificate_values(mm, rm.theta_min, 2.0);
    EXPECT_NEAR(cm[7], lemma_expansion(LemmaCase::SameSignsMirror, mirror, hm), 1e-12);
    EXPECT_NEAR(cm[7], -2.0 * 1.5 * 1.5 * hm(1, 4), 1e-12);
}

TEST(LemmaSuite, SmallRunPasses) {
    LemmaSuiteOptions o;
    o.trials = 30;
    const auto rep = run_lemma_suite(o);
    EXPECT_TRUE(rep.passed());
    EXPECT_EQ(rep.rows.size(), 30u);
    EXPECT_EQ(rep.per_case[0] + rep.per_case[1] + rep.per_case[2], 30u);
    EXPECT_LE(rep.max_relative_mismatch, 1e-10);
    EXPECT_LT(rep.max_reflection_value, 0.0);
    const auto again = run_lemma_suite(o);
    for (std::size_t i = 0; i < rep.rows.size(); ++i) EXPECT_EQ(rep.rows[i].masses, again.rows[i].masses);
}
