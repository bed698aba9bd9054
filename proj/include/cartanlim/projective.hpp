#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/linalg.hpp"

#include <cstddef>
#include <stdexcept>

namespace cartanlim {

struct CoincidentError : std::invalid_argument {
    explicit CoincidentError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline std::size_t min_valuation_index(const Vec3<HReal>& v) {
    std::size_t best = 3;
    Rational best_val;
    for (std::size_t i = 0; i < 3; ++i) {
        if (v[i].is_zero()) continue;
        const Rational val = v[i].valuation();
        if (best == 3 || val < best_val) {
            best = i;
            best_val = val;
        }
    }
    if (best == 3) throw std::invalid_argument("projective element: zero vector");
    return best;
}

inline std::size_t min_valuation_index(const Vec3<Rational>& v) {
    for (std::size_t i = 0; i < 3; ++i)
        if (v[i] != 0) return i;
    throw std::invalid_argument("projective element: zero vector");
}

}  // namespace detail

/// Point or line of the projective plane, identified up to nonzero scale.
/// The canonical representative divides by the first entry of minimal
/// valuation, so that entry is 1 and every entry is finite.
template <class F, class Tag>
class ProjElement {
public:
    explicit ProjElement(Vec3<F> coords) : v_(std::move(coords)) {
        const std::size_t k = detail::min_valuation_index(v_);
        const F pivot = v_[k];
        for (std::size_t i = 0; i < 3; ++i) v_[i] = v_[i] / pivot;
    }

    ProjElement(F a, F b, F c) : ProjElement(Vec3<F>{std::move(a), std::move(b), std::move(c)}) {}

    const Vec3<F>& rep() const { return v_; }
    const F& operator[](std::size_t i) const { return v_[i]; }

    /// Projective equality (canonical representatives coincide).
    bool operator==(const ProjElement& o) const { return v_ == o.v_; }

private:
    Vec3<F> v_;
};

struct PointTag {};
struct LineTag {};

template <class F>
using ProjPoint = ProjElement<F, PointTag>;
template <class F>
using ProjLine = ProjElement<F, LineTag>;

template <class F>
ProjLine<F> join(const ProjPoint<F>& p, const ProjPoint<F>& q) {
    Vec3<F> c = cross(p.rep(), q.rep());
    if (c.is_zero()) throw CoincidentError("join: coincident points");
    return ProjLine<F>(std::move(c));
}

template <class F>
ProjPoint<F> meet(const ProjLine<F>& l, const ProjLine<F>& m) {
    Vec3<F> c = cross(l.rep(), m.rep());
    if (c.is_zero()) throw CoincidentError("meet: coincident lines");
    return ProjPoint<F>(std::move(c));
}

template <class F>
bool incident(const ProjPoint<F>& p, const ProjLine<F>& l) {
    return is_zero(dot(p.rep(), l.rep()));
}

/// Squared chordal separation |p x q|^2 / (|p|^2 |q|^2) = sin^2 of the
/// spherical distance.  Scale-invariant; zero iff the points coincide; its
/// valuation is twice the order of the distance.
template <class F, class Tag>
F sep_sq(const ProjElement<F, Tag>& p, const ProjElement<F, Tag>& q) {
    return norm_sq(cross(p.rep(), q.rep())) / (norm_sq(p.rep()) * norm_sq(q.rep()));
}

/// Dual separation of two lines: sin^2 of the angle at their meet.
template <class F>
F angle_sq(const ProjLine<F>& l, const ProjLine<F>& m) {
    return sep_sq(l, m);
}

/// sin^2 of the spherical distance from a point to a line.
template <class F>
F point_line_sep_sq(const ProjPoint<F>& p, const ProjLine<F>& l) {
    const F d = dot(p.rep(), l.rep());
    return d * d / (norm_sq(p.rep()) * norm_sq(l.rep()));
}

inline ProjPoint<Rational> shadow_point(const ProjPoint<HReal>& p) {
    // Canonical representatives are finite with a unit entry, so the shadow
    // vector is nonzero.
    return ProjPoint<Rational>(p[0].shadow(), p[1].shadow(), p[2].shadow());
}

inline ProjLine<Rational> shadow_line(const ProjLine<HReal>& l) {
    return ProjLine<Rational>(l[0].shadow(), l[1].shadow(), l[2].shadow());
}

/// Foot of the perpendicular from x onto l (spherical metric): the rejection
/// |l|^2 x - <x,l> l.  The displacement from x is parallel to the normal
/// vector of l, hence orthogonal to every direction inside l under the
/// standard inner product.
template <class F>
ProjPoint<F> foot_of_perpendicular(const ProjPoint<F>& x, const ProjLine<F>& l) {
    if (incident(x, l)) throw std::invalid_argument("foot_of_perpendicular: x lies on l");
    const F xl = dot(x.rep(), l.rep());
    Vec3<F> y = x.rep() * norm_sq(l.rep()) - l.rep() * xl;
    if (y.is_zero())
        throw std::domain_error("foot_of_perpendicular: x is the polar point of l");
    return ProjPoint<F>(std::move(y));
}

}  // namespace cartanlim
