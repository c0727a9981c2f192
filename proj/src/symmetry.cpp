#include "cocirc/symmetry.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cocirc {

DihedralElement identity_element() { return {0, false}; }

DihedralElement rotation_element(std::size_t h, std::size_t n) { return {h % n, false}; }

DihedralElement reflection_element() { return {0, true}; }

DihedralElement compose(const DihedralElement& a, const DihedralElement& b, std::size_t n) {
    // S P^h = P^{-h} S
    const std::size_t moved = a.reflected ? (n - b.rotation % n) % n : b.rotation % n;
    return {(a.rotation + moved) % n, a.reflected != b.reflected};
}

DihedralElement inverse(const DihedralElement& g, std::size_t n) {
    if (g.reflected) return g;
    return {(n - g.rotation % n) % n, false};
}

std::size_t source_index(const DihedralElement& g, std::size_t i, std::size_t n) {
    const std::size_t j = (i + g.rotation) % n;
    return g.reflected ? (2 * n - 2 - j) % n : j;
}

std::vector<double> act_on_vector(const DihedralElement& g, std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = v[source_index(g, i, n)];
    return out;
}

MassVector act_on_masses(const DihedralElement& g, const MassVector& m) {
    return MassVector(act_on_vector(g, m.values()));
}

AngleConfig act_on_angles(const DihedralElement& g, const AngleConfig& theta) {
    const std::size_t n = theta.size();
    std::vector<double> a(theta.values().begin(), theta.values().end());
    if (g.reflected) {
        std::vector<double> r(n);
        for (std::size_t i = 0; i + 1 < n; ++i) r[i] = kTwoPi - a[n - 2 - i];
        r[n - 1] = kTwoPi;
        a = std::move(r);
    }
    const std::size_t h = g.rotation % n;
    if (h != 0) {
        std::vector<double> r(n);
        const double origin = a[h - 1];
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const std::size_t idx = i + h;
            r[i] = idx < n ? a[idx] - origin : (a[idx - n] + kTwoPi) - origin;
        }
        r[n - 1] = kTwoPi;
        a = std::move(r);
    }
    return AngleConfig(std::move(a));
}

std::vector<DihedralElement> enumerate_group(std::size_t n) {
    if (n < 3) throw std::invalid_argument("dihedral group needs n >= 3");
    std::vector<DihedralElement> out;
    out.reserve(2 * n);
    for (std::size_t h = 0; h < n; ++h) out.push_back({h, false});
    for (std::size_t h = 0; h < n; ++h) out.push_back({h, true});
    return out;
}

std::string to_string(const DihedralElement& g) {
    if (g.rotation == 0) return g.reflected ? "S" : "I";
    std::string s = "P^" + std::to_string(g.rotation);
    if (g.reflected) s += " S";
    return s;
}

DihedralElement parse_element(std::string_view text, std::size_t n) {
    auto bad = [&] { return std::invalid_argument("cannot parse group element '" + std::string(text) + "'"); };
    if (text == "I") return identity_element();
    if (text == "S") return reflection_element();
    if (text.empty() || text.front() != 'P') throw bad();
    text.remove_prefix(1);
    bool reflected = false;
    if (text.ends_with(" S")) {
        reflected = true;
        text.remove_suffix(2);
    }
    std::size_t h = 1;
    if (!text.empty()) {
        if (text.front() != '^') throw bad();
        text.remove_prefix(1);
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), h);
        if (ec != std::errc() || ptr != text.data() + text.size()) throw bad();
    }
    if (h >= n) throw bad();
    return {h, reflected};
}

void SpecialMassPattern::validate() const {
    if (!(1 <= pos_l && pos_l < pos_s && pos_s < n)) throw std::invalid_argument("special positions need 1 <= l < s < n");
    for (double v : {val_l, val_s, val_n}) {
        if (!(v > 0.0) || v == 1.0) throw std::invalid_argument("special masses must be positive and differ from 1");
    }
}

MassVector SpecialMassPattern::masses() const {
    validate();
    std::vector<double> m(n, 1.0);
    m[pos_l - 1] = val_l;
    m[pos_s - 1] = val_s;
    m[n - 1] = val_n;
    return MassVector(std::move(m));
}

std::optional<SpecialMassPattern> special_positions(const MassVector& m, double unit_tol) {
    const std::size_t n = m.size();
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(m[i] - 1.0) > unit_tol) idx.push_back(i);
    if (idx.size() != 3) return std::nullopt;

    const std::size_t h = (idx[2] + 1) % n;
    auto moved = [&](std::size_t i) { return (i + n - h) % n + 1; };  // new 1-based position
    SpecialMassPattern p;
    p.n = n;
    p.pos_l = moved(idx[0]);
    p.pos_s = moved(idx[1]);
    p.val_l = m[idx[0]];
    p.val_s = m[idx[1]];
    p.val_n = m[idx[2]];
    p.rotation = h;
    return p;
}

namespace {

// Bodies strictly between a and b walking counterclockwise from a.
std::size_t ccw_between(std::size_t a, std::size_t b, std::size_t n) { return (b + n - a) % n - 1; }

bool on_ccw_arc(std::size_t a, std::size_t b, std::size_t c, std::size_t n) {
    return (c + n - a) % n < (b + n - a) % n;
}

struct Special {
    std::size_t pos;
    double val;
};

std::array<Special, 3> specials(const SpecialMassPattern& p) {
    return {{{p.pos_l, p.val_l}, {p.pos_s, p.val_s}, {p.n, p.val_n}}};
}

template <typename Gap>
bool symmetric_with(const SpecialMassPattern& p, double value_tol, Gap gap) {
    const auto sp = specials(p);
    for (std::size_t z = 0; z < 3; ++z) {
        const auto& x = sp[(z + 1) % 3];
        const auto& y = sp[(z + 2) % 3];
        if (std::abs(x.val - y.val) > value_tol) continue;
        if (gap(x.pos, sp[z].pos, y.pos) == gap(y.pos, sp[z].pos, x.pos)) return true;
    }
    return false;
}

}  // namespace

std::size_t arc_gap(const SpecialMassPattern& p, std::size_t a, std::size_t b) {
    std::size_t c = 0;
    for (std::size_t q : {p.pos_l, p.pos_s, p.n})
        if (q != a && q != b) c = q;
    if (c == 0 || a == b) throw std::invalid_argument("arc_gap needs two distinct special positions");
    return on_ccw_arc(a, b, c, p.n) ? ccw_between(b, a, p.n) : ccw_between(a, b, p.n);
}

bool is_ordered_symmetrically(const SpecialMassPattern& p, double value_tol) {
    p.validate();
    return symmetric_with(p, value_tol, [&](std::size_t from, std::size_t to, std::size_t) {
        return arc_gap(p, from, to);
    });
}

bool is_ordered_symmetrically_shortest_arc(const SpecialMassPattern& p, double value_tol) {
    p.validate();
    return symmetric_with(p, value_tol, [&](std::size_t from, std::size_t to, std::size_t) {
        return std::min(ccw_between(from, to, p.n), ccw_between(to, from, p.n));
    });
}

}  // namespace cocirc
