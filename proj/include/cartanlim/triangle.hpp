#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/labels.hpp"
#include "cartanlim/linalg.hpp"
#include "cartanlim/projective.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace cartanlim {

struct GeneralPositionError : std::invalid_argument {
    explicit GeneralPositionError(const std::string& what) : std::invalid_argument(what) {}
};

/// Three points of the projective plane in general position (no two
/// coincident, not collinear), together with their joining lines.
struct NonstandardTriangle {
    ProjPoint<HReal> p, q, x;

    NonstandardTriangle(ProjPoint<HReal> p_, ProjPoint<HReal> q_, ProjPoint<HReal> x_)
        : p(std::move(p_)), q(std::move(q_)), x(std::move(x_)) {
        Mat3<HReal> m;
        for (std::size_t i = 0; i < 3; ++i) {
            m.at(i, 0) = p[i];
            m.at(i, 1) = q[i];
            m.at(i, 2) = x[i];
        }
        if (det3(m).is_zero())
            throw GeneralPositionError("triangle vertices are not in general position");
    }

    std::array<const ProjPoint<HReal>*, 3> vertices() const { return {&p, &q, &x}; }
};

/// Vertices are the column classes of a nonsingular matrix.
inline NonstandardTriangle triangle_from_matrix(const Mat3<HReal>& m) {
    if (det3(m).is_zero()) throw SingularMatrixError();
    return NonstandardTriangle(ProjPoint<HReal>(m.column(0)), ProjPoint<HReal>(m.column(1)),
                               ProjPoint<HReal>(m.column(2)));
}

/// The upper-triangular vertex matrix with columns [1:0:0], [1:d:0], [1:e:h].
inline Mat3<HReal> vertex_matrix(const HReal& d, const HReal& e, const HReal& h) {
    Mat3<HReal> m;
    m.at(0, 0) = HReal(1);
    m.at(0, 1) = HReal(1);
    m.at(0, 2) = HReal(1);
    m.at(1, 1) = d;
    m.at(1, 2) = e;
    m.at(2, 2) = h;
    return m;
}

/// Triangle relabeled so the shortest altitude drops from x onto the line H
/// through p and q, with the foot y at least as close to p as to q.  All
/// lengths are carried as squared chordal surrogates: delta_sq ~ d(p,q)^2,
/// epsilon_sq ~ d(y,p)^2, eta_sq ~ d(x,H)^2 and alpha_sq ~ (eps*delta/eta)^2,
/// so every order below is half the valuation of the stored value.
struct NormalizedTriangle {
    ProjPoint<HReal> p, q, x, y;
    HReal delta_sq, epsilon_sq, eta_sq, alpha_sq;
    std::array<MagnitudeClass, 3> side_classes;   // d(p,q), d(p,x), d(q,x)
    std::array<MagnitudeClass, 3> angle_classes;  // interior angles at p, q, x

    MagnitudeClass delta_magnitude() const { return delta_sq.magnitude(); }
    MagnitudeClass epsilon_magnitude() const { return epsilon_sq.magnitude(); }
    MagnitudeClass eta_magnitude() const { return eta_sq.magnitude(); }
    MagnitudeClass alpha_magnitude() const { return alpha_sq.magnitude(); }

    /// Half the valuation of the squared surrogate (the order of the length).
    Rational delta_valuation() const { return delta_sq.valuation() / 2; }
    Rational epsilon_valuation() const { return epsilon_sq.valuation() / 2; }
    Rational eta_valuation() const { return eta_sq.valuation() / 2; }
    Rational alpha_valuation() const { return alpha_sq.valuation() / 2; }
};

namespace detail {

// The normalization runs its geometry on denominator-cleared polynomial
// representatives (projective scaling is free), so the inner loop never
// reduces a fraction: quantities are carried as raw numerator/denominator
// pairs, compared by cross-multiplication, and turned into canonical field
// elements only for the stored outputs.

using PVec = Vec3<PuiseuxPoly>;

/// Divides all three coordinates by their common rational content, leaving
/// integer coefficients with overall content 1 (a projective rescaling).
inline void normalize_content(PVec& v) {
    BigInt num_gcd = 0, den_lcm = 1;
    for (std::size_t i = 0; i < 3; ++i)
        for (const auto& [e, c] : v[i].terms()) {
            num_gcd = boost::multiprecision::gcd(num_gcd, numerator(c));
            den_lcm = boost::multiprecision::lcm(den_lcm, denominator(c));
        }
    if (num_gcd == 0) return;
    const Rational content(num_gcd, den_lcm);
    if (content == 1) return;
    const Rational inv = Rational(1) / content;
    for (std::size_t i = 0; i < 3; ++i) v[i].scale(inv);
}

/// Unreduced nonnegative fraction; numerators and denominators are sums of
/// squares of polynomials, so all leading coefficients are positive.
struct PFrac {
    PuiseuxPoly num, den;

    bool is_zero() const { return num.is_zero(); }
    Rational valuation() const { return num.val() - den.val(); }
    MagnitudeClass magnitude() const {
        if (num.is_zero()) return MagnitudeClass::zero;
        const Rational v = valuation();
        if (v > 0) return MagnitudeClass::infinitesimal;
        if (v == 0) return MagnitudeClass::appreciable;
        return MagnitudeClass::infinite;
    }
};

/// Sign of a - b for nonnegative fractions: decided by valuations, then by
/// leading coefficients; only a double tie forces the cross-multiplied
/// difference.
inline int pfrac_compare(const PFrac& a, const PFrac& b) {
    if (a.is_zero()) return b.is_zero() ? 0 : -1;
    if (b.is_zero()) return 1;
    const Rational va = a.valuation(), vb = b.valuation();
    if (va != vb) return va < vb ? 1 : -1;  // smaller order = larger value
    const Rational ra = a.num.leading_coeff() / a.den.leading_coeff();
    const Rational rb = b.num.leading_coeff() / b.den.leading_coeff();
    if (ra != rb) return ra > rb ? 1 : -1;
    const PuiseuxPoly diff = a.num * b.den - b.num * a.den;
    return diff.is_zero() ? 0 : sign_of(diff.leading_coeff());
}

/// Scales the canonical representative to polynomial coordinates.
inline PVec cleared_rep(const ProjPoint<HReal>& p) {
    const PuiseuxPoly &d0 = p[0].den(), &d1 = p[1].den(), &d2 = p[2].den();
    PVec v{p[0].num() * (d1 * d2), p[1].num() * (d0 * d2), p[2].num() * (d0 * d1)};
    normalize_content(v);
    return v;
}

/// sin^2 of the separation via the Lagrange identity |a x b|^2 =
/// |a|^2 |b|^2 - <a,b>^2, which keeps every factor small.
inline PFrac psep_sq(const PVec& a, const PVec& b) {
    const PuiseuxPoly na = norm_sq(a), nb = norm_sq(b), d = dot(a, b);
    const PuiseuxPoly den = na * nb;
    return {den - d * d, den};
}

inline PFrac pdist_sq(const PVec& x, const PVec& l) {
    const PuiseuxPoly d = dot(x, l);
    return {d * d, norm_sq(x) * norm_sq(l)};
}

/// Canonical field element num / (d1 * d2), reduced factor by factor.
inline HReal to_hreal(const PuiseuxPoly& num, const PuiseuxPoly& d1, const PuiseuxPoly& d2) {
    return HReal(num, PuiseuxPoly::one()) / HReal(d1, PuiseuxPoly::one()) /
           HReal(d2, PuiseuxPoly::one());
}

inline HReal to_hreal(const PFrac& f, const PuiseuxPoly& extra_den) {
    return to_hreal(f.num, f.den, extra_den);
}

inline ProjPoint<HReal> to_point(const PVec& v) {
    return ProjPoint<HReal>(HReal(v[0], PuiseuxPoly::one()), HReal(v[1], PuiseuxPoly::one()),
                            HReal(v[2], PuiseuxPoly::one()));
}

/// Interior angle at vertex v of the spherical triangle lifted via the
/// cleared representatives.  With the tangent rejections u, w toward the
/// other two vertices, <u,w> = |v|^2 (|v|^2 <a,b> - <v,a><v,b>) and
/// |u|^2 = |v|^2 (|v|^2 |a|^2 - <v,a>^2), so cos^2 and sin^2 reduce to
/// products of the pairwise dots and norms.  The angle is infinitesimal iff
/// sin^2 is infinitesimal and the angle is acute (an angle near pi also has
/// small sine but does not count).
inline MagnitudeClass interior_angle_class(const PVec& v, const PVec& a, const PVec& b) {
    const PuiseuxPoly nv = norm_sq(v), na = norm_sq(a), nb = norm_sq(b);
    const PuiseuxPoly dva = dot(v, a), dvb = dot(v, b);
    const PuiseuxPoly uw_core = nv * dot(a, b) - dva * dvb;
    const PuiseuxPoly fu = nv * na - dva * dva;  // |v x a|^2
    const PuiseuxPoly fw = nv * nb - dvb * dvb;  // |v x b|^2
    if (fu.is_zero() || fw.is_zero())
        throw GeneralPositionError("angle at a vertex with coincident neighbor");
    const PuiseuxPoly denom = fu * fw;
    const PFrac sin_sq{denom - uw_core * uw_core, denom};
    if (sin_sq.is_zero()) throw GeneralPositionError("collinear vertices");
    if (sin_sq.magnitude() == MagnitudeClass::infinitesimal && !uw_core.is_zero() &&
        sign_of(uw_core.leading_coeff()) > 0)
        return MagnitudeClass::infinitesimal;
    return MagnitudeClass::appreciable;
}

}  // namespace detail

/// Relabels the triangle per the normalization conditions and extracts the
/// squared length data.  Exact comparisons throughout; ties are broken by the
/// canonical vertex order (the classification does not depend on the choice).
inline NormalizedTriangle normalize(const NonstandardTriangle& tri) {
    using detail::PFrac;
    using detail::PVec;
    const auto vs = tri.vertices();
    const std::array<PVec, 3> cv = {detail::cleared_rep(*vs[0]), detail::cleared_rep(*vs[1]),
                                    detail::cleared_rep(*vs[2])};

    const std::array<PuiseuxPoly, 3> n = {norm_sq(cv[0]), norm_sq(cv[1]), norm_sq(cv[2])};
    auto dotpair = [&](std::size_t i, std::size_t j) { return dot(cv[i], cv[j]); };
    const PuiseuxPoly d01 = dotpair(0, 1), d02 = dotpair(0, 2), d12 = dotpair(1, 2);
    auto dot_of = [&](std::size_t i, std::size_t j) -> const PuiseuxPoly& {
        if (i > j) std::swap(i, j);
        return (i == 0) ? (j == 1 ? d01 : d02) : d12;
    };
    // |normal of the side through j, k|^2 = n_j n_k - <j,k>^2
    auto side_normal_sq = [&](std::size_t j, std::size_t k) {
        const PuiseuxPoly& d = dot_of(j, k);
        return n[j] * n[k] - d * d;
    };

    // The altitude from vertex i is D^2 / (n_i |normal_i|^2), with D the
    // scalar triple product of the representatives.
    const PuiseuxPoly triple = dot(cv[0], cross(cv[1], cv[2]));
    const PuiseuxPoly triple_sq = triple * triple;
    std::array<PFrac, 3> altitude_sq;
    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = (i == 0) ? 1 : 0, k = (i == 2) ? 1 : 2;
        altitude_sq[i] = PFrac{triple_sq, n[i] * side_normal_sq(j, k)};
    }

    std::size_t xi = 0;
    for (std::size_t i = 1; i < 3; ++i)
        if (detail::pfrac_compare(altitude_sq[i], altitude_sq[xi]) < 0) xi = i;

    std::size_t ai = (xi == 0) ? 1 : 0;
    std::size_t bi = (xi == 2) ? 1 : 2;
    const PVec& x = cv[xi];

    // Foot of the altitude: y = x |h|^2 - h <x,h> for the side normal
    // h = a x b.  Since the targets a, b lie on the side (<h,a> = <h,b> = 0),
    // <y,c> = |h|^2 <x,c> and |y|^2 = |h|^2 (|h|^2 |x|^2 - <x,h>^2), so the
    // separations from the foot need only small products.
    PVec y{};
    PFrac eps_a, eps_b;
    if (dot_of(xi, ai).is_zero() && dot_of(xi, bi).is_zero()) {
        // x is the polar point of the side: every point of it is equidistant
        // from x, the altitude is maximal and the foot is immaterial.
        y = cv[ai];
        eps_a = PFrac{PuiseuxPoly::zero(), PuiseuxPoly::one()};
        eps_b = detail::psep_sq(cv[ai], cv[bi]);
    } else {
        const PVec h = cross(cv[ai], cv[bi]);
        const PuiseuxPoly nh = norm_sq(h);
        const PuiseuxPoly dxh = dot(x, h);
        y = x * nh - h * dxh;
        const PuiseuxPoly q = nh * n[xi] - dxh * dxh;  // |y|^2 / |h|^2
        auto eps_of = [&](std::size_t c) {
            const PuiseuxPoly& dxc = dot_of(xi, c);
            const PuiseuxPoly den = q * n[c];
            return PFrac{den - nh * (dxc * dxc), den};
        };
        eps_a = eps_of(ai);
        eps_b = eps_of(bi);
    }
    if (detail::pfrac_compare(eps_b, eps_a) < 0) {
        std::swap(ai, bi);
        std::swap(eps_a, eps_b);
    }

    const PFrac delta = PFrac{side_normal_sq(ai, bi), n[ai] * n[bi]};
    const PFrac& eta = altitude_sq[xi];

    // Labeling invariants: |eta| <= |delta| and |epsilon| <= |delta|.
    if (detail::pfrac_compare(eta, delta) > 0 || detail::pfrac_compare(eps_a, delta) > 0)
        throw InternalError("triangle normalization: labeling invariants violated");

    detail::normalize_content(y);
    NormalizedTriangle out{*vs[ai],
                           *vs[bi],
                           *vs[xi],
                           detail::to_point(y),
                           detail::to_hreal(delta, PuiseuxPoly::one()),
                           detail::to_hreal(eps_a, PuiseuxPoly::one()),
                           detail::to_hreal(eta, PuiseuxPoly::one()),
                           HReal(0),
                           {},
                           {}};
    out.alpha_sq = out.epsilon_sq * out.delta_sq / out.eta_sq;

    auto side = [&](std::size_t i, std::size_t j) {
        const PuiseuxPoly& d = dot_of(i, j);
        return PFrac{n[i] * n[j] - d * d, n[i] * n[j]}.magnitude();
    };
    out.side_classes = {side(ai, bi), side(ai, xi), side(bi, xi)};
    out.angle_classes = {detail::interior_angle_class(cv[ai], cv[bi], cv[xi]),
                         detail::interior_angle_class(cv[bi], cv[ai], cv[xi]),
                         detail::interior_angle_class(cv[xi], cv[ai], cv[bi])};
    return out;
}

struct InfinitesimalCounts {
    int sides;   // 0, 1 or 3
    int angles;  // 0, 1 or 2
};

/// Counts infinitesimal sides and interior angles, and rejects count pairs
/// outside the seven combinatorially possible ones as internal errors.
inline InfinitesimalCounts count_infinitesimal(const NormalizedTriangle& t) {
    int sides = 0, angles = 0;
    for (auto c : t.side_classes)
        if (c == MagnitudeClass::infinitesimal) ++sides;
    for (auto c : t.angle_classes)
        if (c == MagnitudeClass::infinitesimal) ++angles;
    static constexpr std::pair<int, int> allowed[] = {{0, 0}, {1, 1}, {1, 3}, {2, 0},
                                                      {2, 1}, {2, 3}, {0, 3}};
    for (auto [a, s] : allowed)
        if (angles == a && sides == s) return {sides, angles};
    throw InternalError("impossible infinitesimal side/angle counts: " + std::to_string(sides) +
                        " sides, " + std::to_string(angles) + " angles");
}

/// The decision table on the magnitude classes of delta, eta and
/// alpha = eps*delta/eta (read off the squared surrogates):
///   delta appreciable, eta appreciable            -> C
///   delta appreciable, eta infinitesimal, alpha finite -> F
///   delta infinitesimal, alpha appreciable        -> N1
///   delta infinitesimal, alpha infinitesimal      -> N2
///   alpha infinite                                -> N3
inline ClassLabel classify(const NormalizedTriangle& t) {
    const bool delta_appr = t.delta_sq.is_appreciable();
    const bool delta_inf = t.delta_sq.magnitude() == MagnitudeClass::infinitesimal;
    const bool eta_appr = t.eta_sq.is_appreciable();
    const bool alpha_infinite = t.alpha_sq.is_infinite();

    if (delta_appr && eta_appr) return ClassLabel::C;
    if (delta_appr && !eta_appr && !alpha_infinite) return ClassLabel::F;
    if (alpha_infinite) return ClassLabel::N3;
    if (delta_inf && t.alpha_sq.is_appreciable()) return ClassLabel::N1;
    if (delta_inf && t.alpha_sq.is_infinitesimal()) return ClassLabel::N2;
    throw InternalError("triangle decision table: unreachable case");
}

inline ClassLabel classify_triangle(const NonstandardTriangle& tri) {
    return classify(normalize(tri));
}

/// Counts distinct shadows among the three vertices and three sides and
/// returns the configuration class of the shadow.
inline ConfigClass shadow_config(const NonstandardTriangle& tri) {
    const std::array<detail::PVec, 3> cv = {detail::cleared_rep(tri.p), detail::cleared_rep(tri.q),
                                            detail::cleared_rep(tri.x)};
    auto shadow_of = [](const detail::PVec& v) {
        // canonicalization happens inside the projective constructor
        const ProjPoint<HReal> p = detail::to_point(v);
        return shadow_point(p);
    };
    const std::array<ProjPoint<Rational>, 3> pts = {shadow_of(cv[0]), shadow_of(cv[1]),
                                                    shadow_of(cv[2])};
    const std::array<ProjPoint<Rational>, 3> lns = {shadow_of(cross(cv[0], cv[1])),
                                                    shadow_of(cross(cv[0], cv[2])),
                                                    shadow_of(cross(cv[1], cv[2]))};
    auto distinct = [](const auto& a) {
        int n = 1;
        if (!(a[1] == a[0])) ++n;
        if (!(a[2] == a[0]) && !(a[2] == a[1])) ++n;
        return n;
    };
    return config_from_counts(distinct(pts), distinct(lns));
}

}  // namespace cartanlim
