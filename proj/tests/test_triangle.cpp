#include "cartanlim/generator.hpp"
#include "cartanlim/triangle.hpp"
#include "support/helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace cartanlim;
using namespace cartanlim::testing;

namespace {
const HReal t = HReal::t();
const HReal one = HReal(1);

NormalizedTriangle norm_of(const HReal& d, const HReal& e, const HReal& h) {
    return normalize(triangle_from_matrix(vertex_matrix(d, e, h)));
}
}  // namespace

TEST_CASE("triangle_from_matrix: documented examples") {
    const auto std_tri = triangle_from_matrix(Mat3<HReal>::identity());
    CHECK(std_tri.p == ProjPoint<HReal>(one, HReal(0), HReal(0)));
    CHECK(std_tri.q == ProjPoint<HReal>(HReal(0), one, HReal(0)));
    CHECK(std_tri.x == ProjPoint<HReal>(HReal(0), HReal(0), one));

    const auto tri = triangle_from_matrix(vertex_matrix(t, t, t * t));
    CHECK(tri.p == ProjPoint<HReal>(one, HReal(0), HReal(0)));
    CHECK(tri.q == ProjPoint<HReal>(one, t, HReal(0)));
    CHECK(tri.x == ProjPoint<HReal>(one, t, t * t));

    Mat3<HReal> rank2;
    rank2.at(0, 0) = one;
    rank2.at(0, 1) = one;
    rank2.at(1, 2) = one;
    CHECK_THROWS_AS(triangle_from_matrix(rank2), SingularMatrixError);

    // coincident columns make the matrix singular
    Mat3<HReal> coincident = Mat3<HReal>::identity();
    coincident.at(0, 1) = one;
    coincident.at(1, 1) = HReal(0);
    CHECK_THROWS_AS(triangle_from_matrix(coincident), SingularMatrixError);
}

TEST_CASE("normalize: the (1, t, t) instance") {
    const NormalizedTriangle n = norm_of(one, t, t);
    CHECK(n.delta_magnitude() == MagnitudeClass::appreciable);
    CHECK(n.eta_magnitude() == MagnitudeClass::infinitesimal);
    CHECK(n.alpha_magnitude() == MagnitudeClass::appreciable);
    // alpha^2 * eta^2 = eps^2 * delta^2 exactly
    CHECK(n.alpha_sq * n.eta_sq == n.epsilon_sq * n.delta_sq);
    CHECK(n.eta_valuation() == 1);
}

TEST_CASE("normalize: appreciable triangles keep everything appreciable") {
    const NormalizedTriangle n = norm_of(one, HReal(Rational(1, 3)), HReal(Rational(1, 2)));
    CHECK(n.delta_magnitude() == MagnitudeClass::appreciable);
    CHECK(n.eta_magnitude() == MagnitudeClass::appreciable);
    const auto counts = count_infinitesimal(n);
    CHECK(counts.sides == 0);
    CHECK(counts.angles == 0);
}

TEST_CASE("normalize: labeling invariants hold") {
    InstanceGenerator gen(31);
    for (ClassLabel row : kAllClasses)
        for (int i = 0; i < 10; ++i) {
            const auto inst = gen.make(row);
            const NormalizedTriangle n = normalize(triangle_from_matrix(inst.matrix));
            CHECK(n.eta_sq <= n.delta_sq);
            CHECK(n.epsilon_sq <= n.delta_sq);
            CHECK(n.alpha_sq * n.eta_sq == n.epsilon_sq * n.delta_sq);
        }
}

TEST_CASE("relabeling the vertices preserves the magnitude data") {
    InstanceGenerator gen(32);
    for (ClassLabel row : kAllClasses) {
        const auto inst = gen.make(row);
        const NonstandardTriangle tri = triangle_from_matrix(inst.matrix);
        const NormalizedTriangle base = normalize(tri);
        for (const auto& perm : permutations(tri)) {
            const NormalizedTriangle n = normalize(perm);
            CHECK(n.delta_magnitude() == base.delta_magnitude());
            CHECK(n.epsilon_magnitude() == base.epsilon_magnitude());
            CHECK(n.eta_magnitude() == base.eta_magnitude());
            CHECK(n.alpha_magnitude() == base.alpha_magnitude());
        }
    }
}

TEST_CASE("count_infinitesimal: documented examples") {
    CHECK(count_infinitesimal(norm_of(one, HReal(Rational(1, 2)), HReal(Rational(1, 3)))).sides == 0);

    const auto f = count_infinitesimal(norm_of(one, t, t));
    CHECK(f.sides == 1);
    CHECK(f.angles == 1);

    // all sides infinitesimal; one interior angle infinitesimal, one almost
    // flat (not counted), one appreciable
    const auto n2 = count_infinitesimal(norm_of(t, t * t, t * t));
    CHECK(n2.sides == 3);
    CHECK(n2.angles == 1);

    // the N1 pattern has two infinitesimal angles and three infinitesimal sides
    const auto n1 = count_infinitesimal(norm_of(t, t / HReal(3), t * t));
    CHECK(n1.sides == 3);
    CHECK(n1.angles == 2);
}

TEST_CASE("classify: the five decision table rows") {
    CHECK(classify(norm_of(one, HReal(Rational(1, 2)), one)) == ClassLabel::C);
    CHECK(classify(norm_of(one, t, t)) == ClassLabel::F);
    CHECK(classify(norm_of(one, HReal(0), t)) == ClassLabel::F);
    CHECK(classify(norm_of(t, t / HReal(3), t * t)) == ClassLabel::N1);
    CHECK(classify(norm_of(t, t * t, t * t)) == ClassLabel::N2);
    CHECK(classify(norm_of(t, HReal(0), t * t)) == ClassLabel::N2);
    CHECK(classify(norm_of(t, t / HReal(2), t.pow(3))) == ClassLabel::N3);
    CHECK(classify(norm_of(one, HReal(Rational(1, 2)), t)) == ClassLabel::N3);
}

TEST_CASE("classify: raw parameters that violate the labeling conditions") {
    // epsilon = delta puts the foot on the second vertex; the normalization
    // relabels and both instances land in N2 (not the naive table rows).
    CHECK(classify(norm_of(t, t, t * t)) == ClassLabel::N2);
    CHECK(classify(norm_of(t, t, t.pow(3))) == ClassLabel::N2);
}

TEST_CASE("classification is invariant under relabeling and rescaling") {
    InstanceGenerator gen(33);
    for (ClassLabel row : kAllClasses)
        for (int i = 0; i < 6; ++i) {
            const auto inst = gen.make(row);
            const NonstandardTriangle tri = triangle_from_matrix(inst.matrix);
            const ClassLabel base = classify_triangle(tri);
            CHECK(base == row);
            for (const auto& perm : permutations(tri)) CHECK(classify_triangle(perm) == base);
            CHECK(classify_triangle(rescale(tri, gen)) == base);
        }
}

TEST_CASE("classification is invariant under appreciable rational maps") {
    InstanceGenerator gen(34);
    for (ClassLabel row : kAllClasses)
        for (int i = 0; i < 6; ++i) {
            const auto inst = gen.make(row);
            const NonstandardTriangle tri = triangle_from_matrix(inst.matrix);
            const Mat3<Rational> g = gen.random_invertible_rational();
            CHECK(classify_triangle(transform(tri, g)) == classify_triangle(tri));
        }
}

TEST_CASE("shadow_config: documented examples") {
    CHECK(shadow_config(triangle_from_matrix(Mat3<HReal>::identity())).label == ConfigLabel::TC);

    const auto tf = shadow_config(triangle_from_matrix(vertex_matrix(one, t, t)));
    CHECK(tf.label == ConfigLabel::TF);
    CHECK(tf.points == 2);
    CHECK(tf.lines == 2);

    const auto collapsed = shadow_config(triangle_from_matrix(vertex_matrix(t, t * t, t * t)));
    CHECK(collapsed.points == 1);

    // a pencil configuration: vertices collapse, all three lines stay distinct
    const auto pencil = shadow_config(triangle_from_matrix(vertex_matrix(t, HReal(0), t)));
    CHECK(pencil.label == ConfigLabel::TN2);
    CHECK(pencil.lines == 3);
}
