#pragma once
/**
 * symmetry.hpp - the dihedral group D_n acting on mass labelings and on
 * gauge-fixed angle configurations.
 *
 * An element g = P^h S^e acts on masses as the matrix product, so S is
 * applied first:
 *   (P m)_i = m_{i+1 mod n}
 *   (S m)_i = m_{n-i} for i < n, (S m)_n = m_n        (1-based)
 * The paired angle action applies the affine maps of the same shape:
 *   (P theta)_i = theta_{i+1} - theta_1,  (S theta)_i = theta_n - theta_{n-i}
 * with the last entry kept at 2*pi. Both are evaluated as index maps.
 */

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cocirc/core.hpp"

namespace cocirc {

struct DihedralElement {
    std::size_t rotation = 0;  // h in [0, n)
    bool reflected = false;    // e

    friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

DihedralElement identity_element();
DihedralElement rotation_element(std::size_t h, std::size_t n);
DihedralElement reflection_element();

/// Matrix product a*b, i.e. apply b first.
DihedralElement compose(const DihedralElement& a, const DihedralElement& b, std::size_t n);
DihedralElement inverse(const DihedralElement& g, std::size_t n);

/// (g m)_i = m_{sigma_g(i)}, 0-based.
std::size_t source_index(const DihedralElement& g, std::size_t i, std::size_t n);

std::vector<double> act_on_vector(const DihedralElement& g, std::span<const double> v);
MassVector act_on_masses(const DihedralElement& g, const MassVector& m);
AngleConfig act_on_angles(const DihedralElement& g, const AngleConfig& theta);

/// Identity first, then P^1..P^{n-1}, then S, P S, ..., P^{n-1} S.
std::vector<DihedralElement> enumerate_group(std::size_t n);

/// "I", "P^h", "S", "P^h S".
std::string to_string(const DihedralElement& g);
/// Inverse of to_string; also accepts "P" for P^1. Throws std::invalid_argument.
DihedralElement parse_element(std::string_view text, std::size_t n);

/// Positions are 1-based as in the usual (l, s, n) convention; the third
/// special mass is at position n after `rotation` applications of P.
struct SpecialMassPattern {
    std::size_t n = 0;
    std::size_t pos_l = 0;
    std::size_t pos_s = 0;
    double val_l = 0.0;
    double val_s = 0.0;
    double val_n = 0.0;
    std::size_t rotation = 0;  // P^rotation was applied to the input masses

    /// Throws std::invalid_argument unless 1 <= l < s < n and values are positive and != 1.
    void validate() const;
    int sign_l() const { return val_l > 1.0 ? 1 : -1; }
    int sign_s() const { return val_s > 1.0 ? 1 : -1; }
    int sign_n() const { return val_n > 1.0 ? 1 : -1; }

    /// Unit masses with the three specials placed at l, s, n.
    MassVector masses() const;
};

std::optional<SpecialMassPattern> special_positions(const MassVector& m, double unit_tol = 1e-9);

/// Bodies strictly between special positions a and b on the arc that avoids
/// the remaining special position. Positions are 1-based.
std::size_t arc_gap(const SpecialMassPattern& p, std::size_t a, std::size_t b);

bool is_ordered_symmetrically(const SpecialMassPattern& p, double value_tol = 1e-9);

/// Alternative reading: compare the shorter circular body counts from each
/// equal mass to the third, ignoring where the other equal mass sits. Only
/// used to flag patterns where the two readings disagree.
bool is_ordered_symmetrically_shortest_arc(const SpecialMassPattern& p, double value_tol = 1e-9);

inline bool symmetric_conventions_disagree(const SpecialMassPattern& p, double value_tol = 1e-9) {
    return is_ordered_symmetrically(p, value_tol) != is_ordered_symmetrically_shortest_arc(p, value_tol);
}

}  // namespace cocirc
