#include <gtest/gtest.h>

#include <numbers>
#include <random>
#include <set>

#include "cocirc/optimizer.hpp"
#include "cocirc/symmetry.hpp"

using namespace cocirc;
using std::numbers::pi;

namespace {

std::vector<double> vals(const MassVector& m) { return {m.values().begin(), m.values().end()}; }

}  // namespace

TEST(Dihedral, GeneratorsOnMasses) {
    const MassVector m({1, 2, 3, 4});
    EXPECT_EQ(vals(act_on_masses(rotation_element(1, 4), m)), (std::vector<double>{2, 3, 4, 1}));
    EXPECT_EQ(vals(act_on_masses(reflection_element(), m)), (std::vector<double>{3, 2, 1, 4}));
    EXPECT_EQ(vals(act_on_masses(identity_element(), m)), vals(m));
}

TEST(Dihedral, ComposeMatchesSuccessiveActions) {
    const std::size_t n = 7;
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i * i + 1);
    const auto group = enumerate_group(n);
    for (const auto& a : group)
        for (const auto& b : group) {
            const auto ab = compose(a, b, n);
            EXPECT_EQ(act_on_vector(ab, v), act_on_vector(a, act_on_vector(b, v)));
        }
}

TEST(Dihedral, InverseAndEnumeration) {
    for (std::size_t n : {3u, 5u, 8u}) {
        const auto group = enumerate_group(n);
        EXPECT_EQ(group.size(), 2 * n);
        std::vector<double> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i);
        std::set<std::vector<double>> prints;
        for (const auto& g : group) {
            prints.insert(act_on_vector(g, v));
            EXPECT_EQ(compose(g, inverse(g, n), n), identity_element());
            EXPECT_EQ(act_on_vector(compose(inverse(g, n), g, n), v), v);
        }
        EXPECT_EQ(prints.size(), 2 * n);
    }
    EXPECT_EQ(enumerate_group(4)[4], reflection_element());
}

TEST(Dihedral, RenderingRoundTrips) {
    EXPECT_EQ(to_string(identity_element()), "I");
    EXPECT_EQ(to_string(reflection_element()), "S");
    EXPECT_EQ(to_string(DihedralElement{3, false}), "P^3");
    EXPECT_EQ(to_string(DihedralElement{2, true}), "P^2 S");
    for (const auto& g : enumerate_group(6)) EXPECT_EQ(parse_element(to_string(g), 6), g);
    EXPECT_EQ(parse_element("P", 6), rotation_element(1, 6));
    EXPECT_THROW(parse_element("P^6", 6), std::invalid_argument);
    EXPECT_THROW(parse_element("Q", 6), std::invalid_argument);
    EXPECT_THROW(parse_element("P^x", 6), std::invalid_argument);
}

TEST(AngleAction, RegularPolygonFixedAndInvolution) {
    for (std::size_t n : {3u, 6u, 9u}) {
        const auto reg = AngleConfig::regular(n);
        for (const auto& g : enumerate_group(n)) {
            const auto moved = act_on_angles(g, reg);
            for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(moved[k], reg[k], 1e-14);
        }
    }
    const AngleConfig c({pi / 2, pi, 3 * pi / 2, kTwoPi});
    const auto twice = act_on_angles(reflection_element(), act_on_angles(reflection_element(), c));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(twice[k], c[k], 1e-15);
}

TEST(AngleAction, ComposesLikeMasses) {
    const AngleConfig c({0.4, 1.9, 2.2, 3.7, 5.0, kTwoPi});
    const auto group = enumerate_group(6);
    for (const auto& a : group)
        for (const auto& b : group) {
            const auto lhs = act_on_angles(compose(a, b, 6), c);
            const auto rhs = act_on_angles(a, act_on_angles(b, c));
            for (std::size_t k = 0; k < 6; ++k) EXPECT_NEAR(lhs[k], rhs[k], 1e-13);
        }
}

TEST(AngleAction, MinimizerIsEquivariant) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = 4 + t;
        std::vector<double> mm(n);
        for (auto& x : mm) x = std::uniform_real_distribution<double>(0.2, 4.0)(rng);
        const MassVector m(mm);
        const auto base = minimize_potential(m, 1.0);
        for (const auto& g : enumerate_group(n)) {
            const auto moved = minimize_potential(act_on_masses(g, m), 1.0);
            const auto pred = act_on_angles(g, base.theta_min);
            for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(moved.theta_min[k], pred[k], 1e-8);
        }
    }
}

TEST(SpecialPositions, DetectsAndRotates) {
    const auto p = special_positions(MassVector({1, 1, 2, 1, 3, 0.5}));
    ASSERT_TRUE(p);
    EXPECT_EQ(p->n, 6u);
    EXPECT_EQ(p->pos_l, 3u);
    EXPECT_EQ(p->pos_s, 5u);
    EXPECT_EQ(p->val_n, 0.5);
    EXPECT_EQ(p->rotation, 0u);
    EXPECT_FALSE(special_positions(MassVector::equal(5)));
    EXPECT_FALSE(special_positions(MassVector({1, 2, 1, 3})));

    const MassVector m({2, 1, 3, 1, 1, 0.5, 1});
    const auto q = special_positions(m);
    ASSERT_TRUE(q);
    // Rotating by the reported amount puts the last special at position n.
    EXPECT_EQ(vals(act_on_masses(rotation_element(q->rotation, 7), m)), vals(q->masses()));
}

TEST(SymmetricOrdering, FigureConventionAndCounterexamples) {
    SpecialMassPattern fig{5, 2, 3, 2.0, 2.0, 3.0, 0};
    EXPECT_TRUE(is_ordered_symmetrically(fig));
    SpecialMassPattern distinct{5, 2, 3, 2.0, 2.5, 3.0, 0};
    EXPECT_FALSE(is_ordered_symmetrically(distinct));
    SpecialMassPattern six{6, 1, 3, 2.0, 2.0, 3.0, 0};
    EXPECT_FALSE(is_ordered_symmetrically(six));
    EXPECT_EQ(arc_gap(six, 1, 6), 0u);
    EXPECT_EQ(arc_gap(six, 3, 6), 2u);
    EXPECT_EQ(arc_gap(six, 1, 3), 1u);
    // Equal pair at l and n; symmetric only when s sits midway between them.
    SpecialMassPattern mirror{7, 2, 4, 2.0, 3.0, 2.0, 0};
    EXPECT_EQ(arc_gap(mirror, 2, 4), 1u);
    EXPECT_EQ(arc_gap(mirror, 4, 7), 2u);
    EXPECT_FALSE(is_ordered_symmetrically(mirror));
    SpecialMassPattern mirror2{8, 2, 5, 2.0, 3.0, 2.0, 0};
    EXPECT_TRUE(is_ordered_symmetrically(mirror2));
}

TEST(SpecialPattern, Validation) {
    EXPECT_THROW((SpecialMassPattern{5, 3, 2, 2, 2, 2, 0}.validate()), std::invalid_argument);
    EXPECT_THROW((SpecialMassPattern{5, 1, 2, 1.0, 2, 2, 0}.validate()), std::invalid_argument);
    EXPECT_NO_THROW((SpecialMassPattern{5, 1, 2, 0.5, 2, 2, 0}.validate()));
}
