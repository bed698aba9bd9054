#pragma once

#include "cartanlim/hreal.hpp"
#include "cartanlim/labels.hpp"
#include "cartanlim/triangle.hpp"

#include <cstdint>
#include <random>

namespace cartanlim {

struct RowInstance {
    HReal delta, epsilon, eta;
    Mat3<HReal> matrix;  // columns [1:0:0], [1:delta:0], [1:epsilon:eta]
    ClassLabel row;
};

/// Seeded generator of random vertex matrices whose triangles land in a
/// prescribed row of the decision table.  Leading coefficients are random
/// rationals; valuations are random with denominators up to 3; the schemes
/// keep |epsilon| <= |delta - epsilon| and |eta| <= |delta| so the intended
/// row is the true row of the triangle.
class InstanceGenerator {
public:
    /// exp_den_cap bounds the denominators of generated valuations; cap 1
    /// keeps every exponent integral (useful for the double-precision bridge).
    explicit InstanceGenerator(std::uint64_t seed, int exp_den_cap = 3)
        : rng_(seed), exp_den_cap_(exp_den_cap) {}

    RowInstance make(ClassLabel row) {
        switch (row) {
            case ClassLabel::C: {
                const Rational a = pos_rational();
                const HReal delta = noisy(a, 0);
                const HReal eta = noisy(a * fraction(), 0);
                const HReal eps = coin() ? HReal(0) : noisy(a * fraction() / 2, 0);
                return pack(delta, maybe_negate(eps), eta, row);
            }
            case ClassLabel::F: {
                const HReal delta = noisy(pos_rational(), 0);
                const Rational vh = valuation(1, 4);
                const Rational ve = vh + valuation(0, 3);
                const HReal eta = noisy(pos_rational(), vh);
                const HReal eps = coin() ? HReal(0) : noisy(pos_rational(), ve);
                return pack(delta, maybe_negate(eps), eta, row);
            }
            case ClassLabel::N1: {
                const Rational vd = valuation(1, 3);
                const Rational ve = vd + valuation(1, 3);
                const HReal delta = noisy(pos_rational(), vd);
                const HReal eps = noisy(pos_rational(), ve);
                const HReal eta = noisy(pos_rational(), vd + ve);
                return pack(delta, maybe_negate(eps), eta, row);
            }
            case ClassLabel::N2: {
                const Rational vd = valuation(1, 3);
                if (coin()) {
                    // epsilon = 0: alpha = 0 is infinitesimal.
                    const HReal delta = noisy(pos_rational(), vd);
                    const HReal eta = noisy(pos_rational(), vd + valuation(0, 2));
                    return pack(delta, HReal(0), eta, row);
                }
                const Rational vh = vd + valuation(0, 2);
                const Rational ve = (vh - vd > vd ? vh - vd : vd) + valuation(1, 3);
                const HReal delta = noisy(pos_rational(), vd);
                const HReal eps = noisy(pos_rational(), ve);
                const HReal eta = noisy(pos_rational(), vh);
                return pack(delta, maybe_negate(eps), eta, row);
            }
            case ClassLabel::N3: {
                if (coin()) {
                    // appreciable base, epsilon strictly between 0 and delta/2
                    const Rational a = pos_rational();
                    const HReal delta = noisy(a, 0);
                    const HReal eps = noisy(a * fraction() / 2, coin() ? Rational(0) : valuation(1, 2));
                    const HReal eta = noisy(pos_rational(), valuation(1, 3) + (eps.is_zero() ? Rational(0) : eps.valuation()));
                    return pack(delta, eps, eta, row);
                }
                // infinitesimal base with epsilon of the same order
                const Rational vd = valuation(1, 3);
                const Rational a = pos_rational();
                const HReal delta = noisy(a, vd);
                const HReal eps = noisy(a * fraction() / 2, vd);
                const HReal eta = noisy(pos_rational(), 2 * vd + valuation(1, 3));
                return pack(delta, eps, eta, row);
            }
        }
        throw std::invalid_argument("InstanceGenerator: bad row");
    }

    /// Random nonzero field element: one to three terms, mixed exponent
    /// denominators, optionally a nontrivial denominator.
    HReal random_element() {
        PuiseuxPoly num = random_poly(1 + index(3));
        PuiseuxPoly den = coin() ? PuiseuxPoly::one() : random_poly(1 + index(2));
        while (den.is_zero()) den = random_poly(1 + index(2));
        if (num.is_zero()) num = PuiseuxPoly::one();
        return HReal(num, den);
    }

    /// Random appreciable element c0 + higher order terms, c0 != 0.
    HReal random_appreciable() {
        PuiseuxPoly p(signed_rational());
        while (p.is_zero()) p = PuiseuxPoly(signed_rational());
        if (coin()) p.add_term(signed_rational(), valuation(1, 3));
        return HReal(p, PuiseuxPoly::one());
    }

    /// Random rational matrix with nonzero determinant and small entries.
    Mat3<Rational> random_invertible_rational() {
        for (;;) {
            Mat3<Rational> m;
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j)
                    m.at(i, j) = Rational(static_cast<int>(index(7)) - 3);
            if (det3(m) != 0) return m;
        }
    }

    Rational pos_rational() {
        return Rational(1 + static_cast<int>(index(9)), 1 + static_cast<int>(index(9)));
    }

    Rational signed_rational() {
        const Rational r = pos_rational();
        return coin() ? r : Rational(-r);
    }

    /// Random rational valuation in [lo, lo + range] with denominator at
    /// most exp_den_cap.
    Rational valuation(int lo, int range) {
        const int den = 1 + static_cast<int>(index(static_cast<std::size_t>(exp_den_cap_)));
        const int num = lo * den + static_cast<int>(index(static_cast<std::size_t>(range * den + 1)));
        return Rational(num, den);
    }

    bool coin() { return index(2) == 0; }

    std::size_t index(std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
    }

private:
    /// c * t^v, optionally with a higher-order tail.
    HReal noisy(const Rational& c, const Rational& v) {
        PuiseuxPoly p = PuiseuxPoly::term(c, v);
        if (coin()) p.add_term(c * signed_rational() / 10, v + valuation(1, 2));
        return HReal(p, PuiseuxPoly::one());
    }

    HReal maybe_negate(const HReal& x) { return coin() ? x : -x; }

    Rational fraction() { return Rational(1 + static_cast<int>(index(8)), 9); }

    PuiseuxPoly random_poly(std::size_t nterms) {
        PuiseuxPoly p;
        for (std::size_t i = 0; i < nterms; ++i)
            p.add_term(signed_rational(), valuation(0, 2));
        return p;
    }

    RowInstance pack(const HReal& d, const HReal& e, const HReal& h, ClassLabel row) {
        return RowInstance{d, e, h, vertex_matrix(d, e, h), row};
    }

    std::mt19937_64 rng_;
    int exp_den_cap_;
};

}  // namespace cartanlim
