#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/rational.hpp"

#include <array>
#include <stdexcept>

namespace cartanlim {

enum class Sl2Label { hyperbolic, parabolic };

inline const char* to_string(Sl2Label s) {
    return s == Sl2Label::hyperbolic ? "hyperbolic" : "parabolic";
}

struct Mat2H {
    std::array<HReal, 4> m{HReal(0), HReal(0), HReal(0), HReal(0)};  // row-major

    const HReal& at(std::size_t i, std::size_t j) const { return m[2 * i + j]; }
    HReal& at(std::size_t i, std::size_t j) { return m[2 * i + j]; }

    Mat2H operator*(const Mat2H& o) const {
        Mat2H r;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                r.at(i, j) = at(i, 0) * o.at(0, j) + at(i, 1) * o.at(1, j);
        return r;
    }

    std::array<Rational, 4> shadow() const {
        return {m[0].shadow(), m[1].shadow(), m[2].shadow(), m[3].shadow()};
    }
};

/// The conjugate of the positive diagonal subgroup of SL2 fixing [1:0] and
/// [1:delta]: elements [[a, (a - 1/a)/delta], [0, 1/a]] for a > 0.
class Sl2Family {
public:
    explicit Sl2Family(HReal delta) : delta_(std::move(delta)) {
        if (delta_.is_zero()) throw std::invalid_argument("Sl2Family: delta must be nonzero");
        if (delta_.is_infinite()) throw std::invalid_argument("Sl2Family: delta must be finite");
    }

    const HReal& delta() const { return delta_; }

    Mat2H element(const HReal& a) const {
        if (a.is_zero()) throw std::invalid_argument("Sl2Family: a must be nonzero");
        Mat2H g;
        g.at(0, 0) = a;
        g.at(0, 1) = (a - a.inverse()) / delta_;
        g.at(1, 1) = a.inverse();
        return g;
    }

    /// Finite sample a = 1 + c*delta, the scale on which entries stay finite.
    Mat2H finite_element(const Rational& c) const { return element(HReal(1) + HReal(c) * delta_); }

    /// Image of the point [1 : e] on the invariant projective line.
    HReal moved_coordinate(const HReal& a, const HReal& e) const {
        const Mat2H g = element(a);
        const HReal top = g.at(0, 0) + g.at(0, 1) * e;  // [top : e/a], affine e' = (e/a)/top
        return (e / a) / top;
    }

private:
    HReal delta_;
};

inline Sl2Family g_delta_family(const HReal& delta) { return Sl2Family(delta); }

/// Appreciable delta keeps two distinct fixed points in the shadow;
/// infinitesimal delta collapses them to one.
inline Sl2Label classify_sl2(const HReal& delta) {
    if (delta.is_zero()) throw std::invalid_argument("classify_sl2: delta must be nonzero");
    switch (delta.magnitude()) {
        case MagnitudeClass::appreciable: return Sl2Label::hyperbolic;
        case MagnitudeClass::infinitesimal: return Sl2Label::parabolic;
        default: throw std::invalid_argument("classify_sl2: delta must be finite");
    }
}

/// Number of fixed points of a 2x2 real matrix acting on the projective
/// line: 2 (distinct eigen directions), 1 (a single one), 0 (complex pair),
/// or 3 meaning every point (scalar matrix).
inline int fixed_point_count(const std::array<Rational, 4>& m) {
    const Rational a = m[0], b = m[1], c = m[2], d = m[3];
    if (b == 0 && c == 0 && a == d) return 3;
    const Rational disc = (a - d) * (a - d) + 4 * b * c;
    if (disc > 0) return 2;
    if (disc == 0) return 1;
    return 0;
}

}  // namespace cartanlim
