#include "cartanlim/generator.hpp"
#include "cartanlim/projective.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cartanlim;

namespace {
const HReal t = HReal::t();

ProjPoint<HReal> pt(const HReal& a, const HReal& b, const HReal& c) {
    return ProjPoint<HReal>(a, b, c);
}
}  // namespace

TEST_CASE("canonical representative divides by the minimal-valuation entry") {
    const auto p = pt(t, HReal(1), HReal(0));
    CHECK(p[0] == t);
    CHECK(p[1] == HReal(1));

    // infinite entries become finite after canonicalization
    const auto q = pt(HReal(1), HReal(1) / t, HReal(1));
    CHECK(q[0] == t);
    CHECK(q[1] == HReal(1));
    CHECK(q[2] == t);
}

TEST_CASE("join and meet: documented examples and duality") {
    const auto e1 = pt(HReal(1), HReal(0), HReal(0));
    const auto e2 = pt(HReal(0), HReal(1), HReal(0));
    const auto z0 = join(e1, e2);
    CHECK(incident(e1, z0));
    CHECK(incident(e2, z0));
    CHECK(z0.rep()[0].is_zero());
    CHECK(z0.rep()[1].is_zero());

    const ProjLine<HReal> y0(HReal(0), HReal(1), HReal(0));
    CHECK(meet(z0, y0) == e1);

    CHECK_THROWS_AS(join(e1, e1), CoincidentError);

    InstanceGenerator gen(21);
    for (int i = 0; i < 30; ++i) {
        const auto p = pt(gen.random_appreciable(), gen.random_element(), gen.random_element());
        const auto q = pt(gen.random_element(), gen.random_appreciable(), gen.random_element());
        const auto r = pt(gen.random_element(), gen.random_element(), gen.random_appreciable());
        if (cross(p.rep(), q.rep()).is_zero() || cross(p.rep(), r.rep()).is_zero()) continue;
        Mat3<HReal> m;
        for (std::size_t k = 0; k < 3; ++k) {
            m.at(k, 0) = p.rep()[k];
            m.at(k, 1) = q.rep()[k];
            m.at(k, 2) = r.rep()[k];
        }
        if (det3(m).is_zero()) continue;
        CHECK(meet(join(p, q), join(p, r)) == p);
    }
}

TEST_CASE("sep_sq: documented examples and scale invariance") {
    const auto e1 = pt(HReal(1), HReal(0), HReal(0));
    CHECK(sep_sq(e1, e1).is_zero());

    const auto near = pt(HReal(1), t, HReal(0));
    const HReal s = sep_sq(e1, near);
    CHECK(s.valuation() == 2);

    const auto e2 = pt(HReal(0), HReal(1), HReal(0));
    CHECK(sep_sq(e1, e2) == HReal(1));

    InstanceGenerator gen(22);
    for (int i = 0; i < 30; ++i) {
        const auto p = pt(gen.random_appreciable(), gen.random_element(), gen.random_element());
        const HReal c = gen.random_appreciable();
        const ProjPoint<HReal> scaled(p.rep() * c);
        CHECK(sep_sq(p, e2) == sep_sq(scaled, e2));
    }
}

TEST_CASE("angle_sq at a vertex") {
    const ProjLine<HReal> z0(HReal(0), HReal(0), HReal(1));
    const ProjLine<HReal> y0(HReal(0), HReal(1), HReal(0));
    CHECK(angle_sq(z0, y0) == HReal(1));
    const ProjLine<HReal> tilted(HReal(0), t, HReal(1));
    CHECK(angle_sq(z0, tilted).valuation() == 2);
}

TEST_CASE("shadow_point: documented examples") {
    const auto a = shadow_point(pt(HReal(1), t, t * t));
    CHECK(a == ProjPoint<Rational>(1, 0, 0));

    const auto b = shadow_point(pt(t, HReal(1), HReal(0)));
    CHECK(b == ProjPoint<Rational>(0, 1, 0));

    const auto c = shadow_point(pt(HReal(1), HReal(1) + t, HReal(2)));
    CHECK(c == ProjPoint<Rational>(1, 1, 2));
}

TEST_CASE("shadow commutes with appreciable rational maps") {
    InstanceGenerator gen(23);
    for (int i = 0; i < 30; ++i) {
        const Mat3<Rational> g = gen.random_invertible_rational();
        Mat3<HReal> gh;
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) gh.at(r, c) = HReal(g.at(r, c));
        const auto p = pt(gen.random_appreciable(), gen.random_element(), gen.random_element());
        const ProjPoint<HReal> image(gh * p.rep());
        CHECK(shadow_point(image) == ProjPoint<Rational>(g * shadow_point(p).rep()));
    }
}

TEST_CASE("foot_of_perpendicular: documented examples and errors") {
    const ProjLine<HReal> z0(HReal(0), HReal(0), HReal(1));

    const auto y1 = foot_of_perpendicular(pt(HReal(1), HReal(0), t), z0);
    CHECK(y1 == pt(HReal(1), HReal(0), HReal(0)));

    const auto x = pt(HReal(1), t, t * t);
    const auto y2 = foot_of_perpendicular(x, z0);
    CHECK(y2 == pt(HReal(1), t, HReal(0)));
    CHECK(incident(y2, z0));

    CHECK_THROWS_AS(foot_of_perpendicular(pt(HReal(1), HReal(1), HReal(0)), z0),
                    std::invalid_argument);
    // polar point: every point of the line is equidistant
    CHECK_THROWS_AS(foot_of_perpendicular(pt(HReal(0), HReal(0), HReal(1)), z0),
                    std::domain_error);
}

TEST_CASE("foot displacement is orthogonal to the line direction") {
    InstanceGenerator gen(24);
    const ProjLine<HReal> z0(HReal(0), HReal(0), HReal(1));
    for (int i = 0; i < 30; ++i) {
        const auto x = pt(gen.random_appreciable(), gen.random_element(), gen.random_appreciable());
        if (incident(x, z0) || cross(x.rep(), z0.rep()).is_zero()) continue;
        const auto y = foot_of_perpendicular(x, z0);
        CHECK(incident(y, z0));
        // x*|l|^2 - <x,l> l lands on y's class; the raw rejection vector
        // differs from x by a multiple of the normal l.
        const Vec3<HReal> rej = x.rep() * norm_sq(z0.rep()) - z0.rep() * dot(x.rep(), z0.rep());
        CHECK(cross(rej, y.rep()).is_zero());
        const Vec3<HReal> diff = x.rep() * norm_sq(z0.rep()) - rej;
        CHECK(cross(diff, z0.rep()).is_zero());
    }
}

TEST_CASE("point-line separation matches the separation from the foot") {
    InstanceGenerator gen(25);
    const ProjLine<HReal> z0(HReal(0), HReal(0), HReal(1));
    for (int i = 0; i < 20; ++i) {
        const auto x = pt(gen.random_appreciable(), gen.random_element(), gen.random_element());
        if (incident(x, z0) || cross(x.rep(), z0.rep()).is_zero()) continue;
        const auto y = foot_of_perpendicular(x, z0);
        CHECK(point_line_sep_sq(x, z0) == sep_sq(x, y));
    }
}
