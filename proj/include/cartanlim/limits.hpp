#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/labels.hpp"
#include "cartanlim/linalg.hpp"
#include "cartanlim/puiseux.hpp"
#include "cartanlim/triangle.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cartanlim {

struct NotAbelianError : std::invalid_argument {
    NotAbelianError() : std::invalid_argument("plane is not an abelian subalgebra") {}
};

struct UnreachableError : std::invalid_argument {
    UnreachableError(ClassLabel a, ClassLabel b)
        : std::invalid_argument(std::string("no directed path from ") + to_string(a) + " to " +
                                to_string(b)) {}
};

// ---------------------------------------------------------------------------
// Canonical data for the five classes.
// ---------------------------------------------------------------------------

inline Plane2<Rational> canonical_algebra(ClassLabel c) {
    using M = Mat3<Rational>;
    switch (c) {
        case ClassLabel::C: return {M::diagonal(1, -1, 0), M::diagonal(0, 1, -1)};
        case ClassLabel::F: return {M::diagonal(1, 1, -2), M::unit(0, 1)};
        case ClassLabel::N1: return {M::unit(0, 1) + M::unit(1, 2), M::unit(0, 2)};
        case ClassLabel::N2: return {M::unit(0, 1), M::unit(0, 2)};
        case ClassLabel::N3: return {M::unit(0, 2), M::unit(1, 2)};
    }
    throw std::invalid_argument("canonical_algebra: bad label");
}

inline const char* canonical_group_form(ClassLabel c) {
    switch (c) {
        case ClassLabel::C: return "diag(a, b, 1/(a*b)), a, b > 0";
        case ClassLabel::F: return "[[a, t, 0], [0, a, 0], [0, 0, 1/a^2]], a > 0";
        case ClassLabel::N1: return "[[1, s, t], [0, 1, s], [0, 0, 1]]";
        case ClassLabel::N2: return "[[1, s, t], [0, 1, 0], [0, 0, 1]]";
        case ClassLabel::N3: return "[[1, 0, t], [0, 1, s], [0, 0, 1]]";
    }
    throw std::invalid_argument("canonical_group_form: bad label");
}

// ---------------------------------------------------------------------------
// The conjugated Cartan plane and its Grassmannian shadow.
// ---------------------------------------------------------------------------

/// Span of P H1 P^-1 and P H2 P^-1 where H1, H2 generate the diagonal
/// traceless plane.
inline Plane2<HReal> conjugated_cartan_plane(const Mat3<HReal>& p) {
    const Mat3<HReal> pinv = inverse(p);  // throws SingularMatrixError
    const Mat3<HReal> g1 = p * sl3_basis_matrix<HReal>(6) * pinv;
    const Mat3<HReal> g2 = p * sl3_basis_matrix<HReal>(7) * pinv;
    return Plane2<HReal>(g1, g2);
}

/// Limit of the plane in the Grassmannian: normalize the Plucker vector by
/// its first coordinate of minimal valuation, take entrywise shadows, and
/// reconstruct the plane.
inline Plane2<Rational> grassmann_shadow(const Plane2<HReal>& plane) {
    std::array<HReal, kPluckerDim> w = plucker(plane);
    std::size_t pivot = kPluckerDim;
    Rational best;
    for (std::size_t i = 0; i < kPluckerDim; ++i) {
        if (w[i].is_zero()) continue;
        const Rational v = w[i].valuation();
        if (pivot == kPluckerDim || v < best) {
            pivot = i;
            best = v;
        }
    }
    if (pivot == kPluckerDim) throw DegeneratePlaneError("grassmann_shadow: zero Plucker vector");
    std::array<Rational, kPluckerDim> s;
    for (std::size_t i = 0; i < kPluckerDim; ++i)
        s[i] = w[i].is_zero() ? Rational(0) : (w[i] / w[pivot]).shadow();
    if (!grassmann_relations_hold(s))
        throw InternalError("grassmann_shadow: shadow vector fails the Grassmann relations");
    return plane_from_plucker(s);
}

// ---------------------------------------------------------------------------
// Classification of 2-dimensional abelian subalgebras.
// ---------------------------------------------------------------------------

/// Sum of the principal 2x2 minors (the degree-2 coefficient of the
/// characteristic polynomial).
template <class F>
F second_invariant(const Mat3<F>& a) {
    return a.at(0, 0) * a.at(1, 1) - a.at(0, 1) * a.at(1, 0) + a.at(0, 0) * a.at(2, 2) -
           a.at(0, 2) * a.at(2, 0) + a.at(1, 1) * a.at(2, 2) - a.at(1, 2) * a.at(2, 1);
}

namespace detail {

/// Coefficients of the binary forms c2(u, v) and c3(u, v) that cut out the
/// nilpotent members u*X + v*Y of the plane, recovered from evaluations.
struct PlaneInvariants {
    // c2 = a2 u^2 + b2 uv + c2v v^2 ; c3 = a3 u^3 + e3 u^2 v + f3 u v^2 + g3 v^3
    Rational a2, b2, c2v;
    Rational a3, e3, f3, g3;

    bool identically_zero() const {
        return a2 == 0 && b2 == 0 && c2v == 0 && a3 == 0 && e3 == 0 && f3 == 0 && g3 == 0;
    }
};

inline PlaneInvariants plane_invariants(const Plane2<Rational>& p) {
    PlaneInvariants r;
    const Mat3<Rational>&x = p.x(), &y = p.y();
    r.a2 = second_invariant(x);
    r.c2v = second_invariant(y);
    r.b2 = second_invariant(x + y) - r.a2 - r.c2v;
    r.a3 = det3(x);
    r.g3 = det3(y);
    const Rational dsum = det3(x + y), ddiff = det3(x - y);
    r.f3 = (dsum + ddiff) / 2 - r.a3;
    r.e3 = (dsum - ddiff) / 2 - r.g3;
    return r;
}

/// Univariate polynomial with rational coefficients, reusing PuiseuxPoly
/// machinery (exponents are the powers of the variable).
inline PuiseuxPoly poly_from_coeffs(std::initializer_list<Rational> asc) {
    PuiseuxPoly p;
    int k = 0;
    for (const Rational& c : asc) p.add_term(c, Rational(k++));
    return p;
}

inline bool is_perfect_square(const Rational& x, Rational* root) {
    if (x < 0) return false;
    const BigInt n = numerator(x), d = denominator(x);
    const BigInt sn = boost::multiprecision::sqrt(n), sd = boost::multiprecision::sqrt(d);
    if (sn * sn != n || sd * sd != d) return false;
    *root = Rational(sn, sd);
    return true;
}

/// Whether the binary forms c2, c3 share a nonzero real root direction.  For
/// planes in the classification's domain the shared direction, when it
/// exists, is unique over C and therefore rational.
inline bool has_common_real_root(const PlaneInvariants& inv) {
    if (inv.a2 == 0 && inv.a3 == 0) return true;  // direction (1 : 0)
    const PuiseuxPoly p2 = poly_from_coeffs({inv.c2v, inv.b2, inv.a2});
    const PuiseuxPoly p3 = poly_from_coeffs({inv.g3, inv.f3, inv.e3, inv.a3});
    const PuiseuxPoly g = gcd(p2, p3);
    if (g.is_constant()) return false;
    const Rational deg = g.degree();
    if (deg == 1) return true;  // rational root
    if (deg == 2) {
        const Rational a = g.coeff(2), b = g.coeff(1), c = g.coeff(0);
        const Rational disc = b * b - 4 * a * c;
        if (disc < 0) return false;
        Rational root;
        if (is_perfect_square(disc, &root)) return true;
        throw std::invalid_argument(
            "classify_abelian_subalgebra: plane has irrational nilpotent directions and is not a "
            "limit of the diagonal Cartan subgroup");
    }
    // deg 3 would force c2 = 0 identically, excluded by the non-nilpotent caller.
    throw InternalError("has_common_real_root: unexpected gcd degree");
}

}  // namespace detail

/// Decision tree for 2-dimensional abelian traceless planes:
///   not nilpotent, no nonzero nilpotent member            -> C
///   not nilpotent, with a nonzero nilpotent member        -> F
///   nilpotent with some nonzero product over the plane    -> N1
///   nilpotent, all products zero, common kernel dim 1 / 2 -> N2 / N3
inline ClassLabel classify_abelian_subalgebra(const Plane2<Rational>& p) {
    if (!bracket(p.x(), p.y()).is_zero()) throw NotAbelianError();
    const detail::PlaneInvariants inv = detail::plane_invariants(p);
    if (!inv.identically_zero())
        return detail::has_common_real_root(inv) ? ClassLabel::F : ClassLabel::C;

    const Mat3<Rational>&x = p.x(), &y = p.y();
    if (!(x * x).is_zero() || !(x * y).is_zero() || !(y * y).is_zero()) return ClassLabel::N1;

    MatX<Rational> stacked(6, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            stacked.at(i, j) = x.at(i, j);
            stacked.at(3 + i, j) = y.at(i, j);
        }
    const std::size_t kdim = stacked.kernel().size();
    if (kdim == 1) return ClassLabel::N2;
    if (kdim == 2) return ClassLabel::N3;
    throw InternalError("classify_abelian_subalgebra: common kernel dimension " +
                        std::to_string(kdim));
}

// ---------------------------------------------------------------------------
// Characteristic configurations via common eigenvectors.
// ---------------------------------------------------------------------------

namespace detail {

/// Distinct rational roots of det(lambda*I - M): peel one rational root off
/// the cubic (candidate search over divisors of the cleared coefficients),
/// then solve the remaining quadratic exactly.
inline std::vector<Rational> rational_eigenvalues(const Mat3<Rational>& m) {
    // p(l) = l^3 - c1 l^2 + c2 l - c3
    const Rational c1 = m.trace(), c2 = second_invariant(m), c3 = det3(m);
    auto eval = [&](const Rational& l) { return ((l - c1) * l + c2) * l - c3; };

    std::vector<Rational> roots;
    Rational first;
    bool found = false;
    if (c3 == 0) {
        first = 0;
        found = true;
    } else {
        const BigInt den = boost::multiprecision::lcm(
            boost::multiprecision::lcm(denominator(c1), denominator(c2)), denominator(c3));
        const BigInt a0 =
            boost::multiprecision::abs(BigInt(numerator(c3) * (den / denominator(c3))));
        auto divisors = [](const BigInt& n) {
            std::vector<BigInt> out;
            for (BigInt d = 1; d * d <= n; ++d)
                if (n % d == 0) {
                    out.push_back(d);
                    out.push_back(n / d);
                }
            return out;
        };
        for (const BigInt& pnum : divisors(a0)) {
            for (const BigInt& qden : divisors(den)) {
                for (int s : {1, -1}) {
                    const Rational cand(s * pnum, qden);
                    if (eval(cand) == 0) {
                        first = cand;
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
    }
    if (!found) return roots;  // no rational eigenvalue at all
    roots.push_back(first);

    // Deflate: p = (l - r)(l^2 + B l + C).
    const Rational b = first - c1, c = c2 + first * b;
    const Rational disc = b * b - 4 * c;
    Rational sq;
    if (disc >= 0 && is_perfect_square(disc, &sq)) {
        for (const Rational& l : {Rational((-b + sq) / 2), Rational((-b - sq) / 2)})
            if (std::find(roots.begin(), roots.end(), l) == roots.end()) roots.push_back(l);
    }
    return roots;
}

/// Common eigendirection structure of two commuting rational matrices.
struct CommonEigenStructure {
    std::vector<Vec3<Rational>> directions;  // projectively distinct
    bool has_plane = false;                  // a 2-dim space of common eigenvectors
};

inline void push_direction(std::vector<Vec3<Rational>>& dirs, Vec3<Rational> v) {
    for (const auto& d : dirs)
        if (cross(d, v).is_zero()) return;
    dirs.push_back(std::move(v));
}

inline CommonEigenStructure common_eigendirections(const Mat3<Rational>& x,
                                                   const Mat3<Rational>& y) {
    CommonEigenStructure out;
    std::vector<Rational> seen;
    for (const Rational& lambda : rational_eigenvalues(x)) {
        if (std::find(seen.begin(), seen.end(), lambda) != seen.end()) continue;
        seen.push_back(lambda);
        const Mat3<Rational> shifted = x - Mat3<Rational>::identity() * lambda;
        const std::vector<Vec3<Rational>> space = kernel(shifted);
        if (space.empty()) continue;
        if (space.size() == 1) {
            // One direction: common iff it is also an eigenvector of y.
            if (cross(y * space[0], space[0]).is_zero()) push_direction(out.directions, space[0]);
            continue;
        }
        if (space.size() == 3) throw InternalError("common_eigendirections: scalar generator");
        // 2-dimensional eigenspace E; y preserves E since [x, y] = 0.
        // Restrict y to E: y*e_i = b0i*e0 + b1i*e1, solved exactly.
        MatX<Rational> sys(3, 2 + 2);  // [e0 e1 | y*e0 y*e1]
        for (std::size_t r = 0; r < 3; ++r) {
            sys.at(r, 0) = space[0][r];
            sys.at(r, 1) = space[1][r];
            sys.at(r, 2) = (y * space[0])[r];
            sys.at(r, 3) = (y * space[1])[r];
        }
        sys.rref();
        // After rref the first two columns are pivots (independent basis),
        // so columns 3, 4 hold the restriction coefficients.
        const Rational b00 = sys.at(0, 2), b01 = sys.at(0, 3), b10 = sys.at(1, 2),
                       b11 = sys.at(1, 3);
        if (sys.at(2, 2) != 0 || sys.at(2, 3) != 0)
            throw InternalError("common_eigendirections: eigenspace not preserved");
        if (b01 == 0 && b10 == 0 && b00 == b11) {
            out.has_plane = true;  // y is scalar on E: every direction is common
            continue;
        }
        // Eigen directions of the 2x2 restriction.
        const Rational tr = b00 + b11, dt = b00 * b11 - b01 * b10;
        const Rational disc = tr * tr - 4 * dt;
        Rational sq;
        if (disc < 0) continue;
        if (!is_perfect_square(disc, &sq))
            throw InternalError("common_eigendirections: irrational restricted eigenvalue");
        for (const Rational& mu : {Rational((tr + sq) / 2), Rational((tr - sq) / 2)}) {
            // kernel of (B - mu) on E
            const Rational m00 = b00 - mu, m11 = b11 - mu;
            Rational u, v;
            if (m00 == 0 && b01 == 0 && b10 == 0 && m11 == 0)
                throw InternalError("common_eigendirections: unexpected scalar restriction");
            if (m00 != 0 || b01 != 0) {
                u = -b01;
                v = m00;
                if (u == 0 && v == 0) continue;
            } else {
                u = -m11;
                v = b10;
            }
            if (u == 0 && v == 0) continue;
            push_direction(out.directions, space[0] * u + space[1] * v);
            if (sq == 0) break;
        }
    }
    return out;
}

}  // namespace detail

/// The configuration class preserved by the canonical group of the given
/// label, computed from its canonical algebra: fixed points are common
/// eigendirections of the generators, invariant lines are common
/// eigendirections of the transposed (dual) action.
inline ConfigClass characteristic_configuration(ClassLabel c) {
    const Plane2<Rational> alg = canonical_algebra(c);
    const auto primal = detail::common_eigendirections(alg.x(), alg.y());
    const auto dual = detail::common_eigendirections(alg.x().transpose(), alg.y().transpose());
    if (primal.has_plane) {
        if (dual.directions.size() != 1 || dual.has_plane)
            throw InternalError("characteristic_configuration: inconsistent dual data");
        return config_from_counts(3, 1);  // pointwise-fixed line
    }
    if (dual.has_plane) {
        if (primal.directions.size() != 1)
            throw InternalError("characteristic_configuration: inconsistent primal data");
        return config_from_counts(1, 3);  // invariant pencil through the fixed point
    }
    return config_from_counts(static_cast<int>(primal.directions.size()),
                              static_cast<int>(dual.directions.size()));
}

// ---------------------------------------------------------------------------
// Duality, the digraph, and 1-parameter paths.
// ---------------------------------------------------------------------------

/// Algebra-level duality X -> -X^T.
inline Plane2<Rational> dual_plane(const Plane2<Rational>& p) {
    return Plane2<Rational>(-p.x().transpose(), -p.y().transpose());
}

/// The induced involution on class labels (computed, not hard-coded).
inline ClassLabel duality(ClassLabel c) {
    return classify_abelian_subalgebra(dual_plane(canonical_algebra(c)));
}

struct Digraph {
    static constexpr std::pair<ClassLabel, ClassLabel> kEdges[4] = {
        {ClassLabel::C, ClassLabel::F},
        {ClassLabel::F, ClassLabel::N1},
        {ClassLabel::N1, ClassLabel::N2},
        {ClassLabel::N1, ClassLabel::N3}};

    static bool edge(ClassLabel a, ClassLabel b) {
        for (auto [u, v] : kEdges)
            if (u == a && v == b) return true;
        return false;
    }

    /// Shortest directed path as a vertex list, or nullopt.  With
    /// proper = false the relation is reflexive (constant conjugators).
    static std::optional<std::vector<ClassLabel>> path(ClassLabel from, ClassLabel to,
                                                       bool proper = false) {
        if (from == to && !proper) return std::vector<ClassLabel>{from};
        // Breadth-first along the 4 edges.
        std::vector<std::vector<ClassLabel>> frontier{{from}};
        for (int depth = 0; depth < 5; ++depth) {
            std::vector<std::vector<ClassLabel>> next;
            for (const auto& path : frontier)
                for (auto [u, v] : kEdges) {
                    if (u != path.back()) continue;
                    auto extended = path;
                    extended.push_back(v);
                    if (v == to) return extended;
                    next.push_back(std::move(extended));
                }
            frontier = std::move(next);
        }
        return std::nullopt;
    }
};

/// Reflexive-transitive reachability in the digraph; `proper` demands a
/// nonempty path.
inline bool limit_reachable(ClassLabel from, ClassLabel to, bool proper = false) {
    return Digraph::path(from, to, proper).has_value();
}

/// A 1-parameter family of conjugating matrices realizing the limit.
struct OneParamPath {
    std::string formula;
    std::vector<ClassLabel> route;
    std::function<Mat3<Rational>(long long)> at;
};

inline OneParamPath one_param_path(ClassLabel from, ClassLabel to) {
    using M = Mat3<Rational>;
    const auto route = Digraph::path(from, to, false);
    if (!route) throw UnreachableError(from, to);

    auto constant_identity = [](long long) { return M::identity(); };
    struct Entry {
        ClassLabel from, to;
        const char* formula;
        Mat3<Rational> (*at)(long long);
    };
    static const Entry table[] = {
        {ClassLabel::C, ClassLabel::F, "[[1, n, 0], [0, 1, 0], [0, 0, 1]]",
         [](long long n) {
             M m = M::identity();
             m.at(0, 1) = n;
             return m;
         }},
        {ClassLabel::C, ClassLabel::N1, "[[1, n, n^2/2], [0, 1, n], [0, 0, 1]]",
         [](long long n) {
             M m = M::identity();
             m.at(0, 1) = n;
             m.at(1, 2) = n;
             m.at(0, 2) = Rational(BigInt(n) * n, 2);
             return m;
         }},
        {ClassLabel::C, ClassLabel::N2, "[[1, n, n], [0, 1, 0], [0, 0, 1]]",
         [](long long n) {
             M m = M::identity();
             m.at(0, 1) = n;
             m.at(0, 2) = n;
             return m;
         }},
        {ClassLabel::C, ClassLabel::N3, "[[1, 0, n], [0, 1, n], [0, 0, 1]]",
         [](long long n) {
             M m = M::identity();
             m.at(0, 2) = n;
             m.at(1, 2) = n;
             return m;
         }},
        {ClassLabel::F, ClassLabel::N1, "[[1, n, n^2/2], [0, 1, n], [0, 0, 1]]",
         [](long long n) {
             M m = M::identity();
             m.at(0, 1) = n;
             m.at(1, 2) = n;
             m.at(0, 2) = Rational(BigInt(n) * n, 2);
             return m;
         }},
        {ClassLabel::N1, ClassLabel::N2, "diag(1, 1, n)",
         [](long long n) { return M::diagonal(1, 1, n); }},
        {ClassLabel::N1, ClassLabel::N3, "diag(1/n, 1, 1)",
         [](long long n) { return M::diagonal(Rational(1, n), 1, 1); }},
    };

    if (from == to)
        return {"identity (constant path)", *route, constant_identity};

    for (const Entry& e : table)
        if (e.from == from && e.to == to) return {e.formula, *route, e.at};

    // Multi-edge route: compose the per-edge families at the same parameter,
    // later edges acting on the left.
    std::vector<const Entry*> legs;
    for (std::size_t i = 0; i + 1 < route->size(); ++i) {
        const Entry* found = nullptr;
        for (const Entry& e : table)
            if (e.from == (*route)[i] && e.to == (*route)[i + 1]) found = &e;
        if (!found) throw InternalError("one_param_path: missing edge entry");
        legs.push_back(found);
    }
    std::string formula;
    for (auto it = legs.rbegin(); it != legs.rend(); ++it)
        formula += std::string(formula.empty() ? "" : " * ") + (*it)->formula;
    auto at = [legs](long long n) {
        M acc = M::identity();
        for (const Entry* e : legs) acc = e->at(n) * acc;
        return acc;
    };
    return {formula, *route, at};
}

// ---------------------------------------------------------------------------
// The two pipelines side by side.
// ---------------------------------------------------------------------------

struct FullClassification {
    ClassLabel triangle_class;
    ClassLabel oracle_class;
    bool agree;
    ConfigClass config;
    std::size_t normalizer_dim;
    NormalizedTriangle normalized;
};

/// Runs the triangle pipeline and the Grassmannian-shadow oracle on the same
/// conjugating matrix.  The two must agree; a mismatch is an internal
/// invariant violation, not a user error.
inline FullClassification full_classify(const Mat3<HReal>& p) {
    const NonstandardTriangle tri = triangle_from_matrix(p);
    NormalizedTriangle norm = normalize(tri);
    const ClassLabel tri_class = classify(norm);

    const Plane2<Rational> shadow = grassmann_shadow(conjugated_cartan_plane(p));
    const ClassLabel oracle_class = classify_abelian_subalgebra(shadow);

    return FullClassification{tri_class,
                              oracle_class,
                              tri_class == oracle_class,
                              shadow_config(tri),
                              normalizer_dimension(shadow),
                              std::move(norm)};
}

}  // namespace cartanlim
