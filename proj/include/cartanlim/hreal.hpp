#pragma once

#include "cartanlim/puiseux.hpp"
#include "cartanlim/rational.hpp"

#include <compare>
#include <stdexcept>
#include <string>
#include <utility>

namespace cartanlim {

/// Size class of a scalar relative to the infinitesimal t.
enum class MagnitudeClass { zero, infinitesimal, appreciable, infinite };

inline const char* to_string(MagnitudeClass m) {
    switch (m) {
        case MagnitudeClass::zero: return "zero";
        case MagnitudeClass::infinitesimal: return "infinitesimal";
        case MagnitudeClass::appreciable: return "appreciable";
        case MagnitudeClass::infinite: return "infinite";
    }
    return "?";
}

/// Element of the non-Archimedean ordered field Q(t^(1/N) : N >= 1): a reduced
/// fraction of Puiseux polynomials in one positive infinitesimal t.
///
/// Canonical form (unique per field element, so equality is representation
/// equality): gcd(num, den) = 1, min(val(num), val(den)) = 0, and the
/// denominator's lowest-order coefficient is 1.  Ordering is by the sign of
/// the lowest-order term of the difference, i.e. sign near t = 0+.
class HReal {
public:
    HReal() : num_(), den_(PuiseuxPoly::one()) {}
    HReal(int v) : HReal(Rational(v)) {}
    HReal(long long v) : HReal(Rational(v)) {}
    HReal(const Rational& v) : num_(PuiseuxPoly(v)), den_(PuiseuxPoly::one()) {}
    HReal(PuiseuxPoly num, PuiseuxPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("HReal: zero denominator");
        canonicalize();
    }

    static HReal t() { return HReal(PuiseuxPoly::t(), PuiseuxPoly::one()); }

    /// c * t^e for any rational e (negative exponents give infinite elements).
    static HReal t_power(const Rational& e, const Rational& c = Rational(1)) {
        if (e >= 0) return HReal(PuiseuxPoly::term(c, e), PuiseuxPoly::one());
        return HReal(PuiseuxPoly(c), PuiseuxPoly::term(Rational(1), -e));
    }

    const PuiseuxPoly& num() const { return num_; }
    const PuiseuxPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    // The arithmetic keeps fractions reduced by cross-cancelling against the
    // already-canonical components, so gcds only ever see factors of the
    // inputs, never the full products.
    HReal operator+(const HReal& o) const { return add_signed(o, false); }
    HReal operator-(const HReal& o) const { return add_signed(o, true); }

    HReal operator*(const HReal& o) const {
        if (is_zero() || o.is_zero()) return HReal();
        const PuiseuxPoly g1 = reduced_gcd(num_, o.den_);
        const PuiseuxPoly g2 = reduced_gcd(o.num_, den_);
        return HReal(divide_out(num_, g1) * divide_out(o.num_, g2),
                     divide_out(den_, g2) * divide_out(o.den_, g1), ReducedTag{});
    }

    HReal operator/(const HReal& o) const {
        if (o.is_zero()) throw std::domain_error("HReal: division by zero");
        if (is_zero()) return HReal();
        const PuiseuxPoly g1 = reduced_gcd(num_, o.num_);
        const PuiseuxPoly g2 = reduced_gcd(o.den_, den_);
        return HReal(divide_out(num_, g1) * divide_out(o.den_, g2),
                     divide_out(den_, g2) * divide_out(o.num_, g1), ReducedTag{});
    }

    HReal operator-() const {
        HReal r = *this;
        r.num_ = -r.num_;
        return r;
    }

    HReal& operator+=(const HReal& o) { return *this = *this + o; }
    HReal& operator-=(const HReal& o) { return *this = *this - o; }
    HReal& operator*=(const HReal& o) { return *this = *this * o; }
    HReal& operator/=(const HReal& o) { return *this = *this / o; }

    HReal inverse() const {
        if (is_zero()) throw std::domain_error("HReal: inverse of zero");
        return HReal(den_, num_, ReducedTag{});
    }

    HReal pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        HReal acc(1), base = *this;
        while (e > 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    bool operator==(const HReal& o) const { return num_ == o.num_ && den_ == o.den_; }

    /// Sign near t = 0+: the sign of the lowest-order coefficient of the
    /// numerator (the canonical denominator is positive there).
    int sign() const { return num_.is_zero() ? 0 : sign_of(num_.leading_coeff()); }

    std::strong_ordering operator<=>(const HReal& o) const {
        if (*this == o) return std::strong_ordering::equal;  // canonical-form identity
        const int s = (*this - o).sign();
        return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    HReal abs() const { return sign() < 0 ? -*this : *this; }

    /// t-adic valuation val(num) - val(den).  Requires a nonzero element.
    Rational valuation() const {
        if (is_zero()) throw std::domain_error("HReal: valuation of zero");
        return num_.val() - den_.val();
    }

    MagnitudeClass magnitude() const {
        if (is_zero()) return MagnitudeClass::zero;
        const Rational v = valuation();
        if (v > 0) return MagnitudeClass::infinitesimal;
        if (v == 0) return MagnitudeClass::appreciable;
        return MagnitudeClass::infinite;
    }

    bool is_finite() const { return magnitude() != MagnitudeClass::infinite; }
    /// Zero counts as infinitesimal (|x| < 1/n for every n).
    bool is_infinitesimal() const {
        auto m = magnitude();
        return m == MagnitudeClass::zero || m == MagnitudeClass::infinitesimal;
    }
    bool is_appreciable() const { return magnitude() == MagnitudeClass::appreciable; }
    bool is_infinite() const { return magnitude() == MagnitudeClass::infinite; }

    /// Standard part of a finite element.
    Rational shadow() const {
        if (is_zero()) return Rational(0);
        const Rational v = valuation();
        if (v > 0) return Rational(0);
        if (v < 0) throw std::domain_error("HReal: shadow of an infinite element");
        // Canonical form has val(num) = val(den) = 0 and den's constant term 1.
        return num_.coeff(Rational(0));
    }

    double eval(double tval) const {
        const double d = den_.eval(tval);
        if (d == 0.0) throw std::domain_error("HReal: evaluation at a pole");
        return num_.eval(tval) / d;
    }

private:
    struct ReducedTag {};

    /// For components already free of common polynomial factors: only the
    /// t-power shift and the monic normalization remain.
    HReal(PuiseuxPoly num, PuiseuxPoly den, ReducedTag) : num_(std::move(num)), den_(std::move(den)) {
        normalize_units();
    }

    /// Knuth-style fraction addition: with g1 = gcd(b, d), the candidate
    /// numerator t = a(d/g1) -+ c(b/g1) shares factors with the denominator
    /// only inside g1.
    HReal add_signed(const HReal& o, bool negate) const {
        if (o.is_zero()) return *this;
        if (is_zero()) return negate ? -o : o;
        const PuiseuxPoly g1 = reduced_gcd(den_, o.den_);
        const PuiseuxPoly db = divide_out(o.den_, g1);
        const PuiseuxPoly product = num_ * db;
        const PuiseuxPoly mixed = o.num_ * divide_out(den_, g1);
        PuiseuxPoly t = negate ? product - mixed : product + mixed;
        if (t.is_zero()) return HReal();
        PuiseuxPoly den = den_ * db;
        if (!g1.is_one()) {
            const PuiseuxPoly g2 = reduced_gcd(t, g1);
            if (!g2.is_one()) {
                t = divide_exact(t, g2);
                den = divide_exact(den, g2);
            }
        }
        return HReal(std::move(t), std::move(den), ReducedTag{});
    }

    /// gcd where a shared t-power counts as a common factor but constants do
    /// not; skips work when either operand is a monomial.
    static PuiseuxPoly reduced_gcd(const PuiseuxPoly& a, const PuiseuxPoly& b) {
        const Rational shared_val = a.val() < b.val() ? a.val() : b.val();
        if (a.is_single_term() || b.is_single_term())
            return PuiseuxPoly::term(Rational(1), shared_val);
        return gcd(a, b);
    }

    static PuiseuxPoly divide_out(const PuiseuxPoly& a, const PuiseuxPoly& g) {
        if (g.is_one()) return a;
        if (g.is_single_term()) {
            PuiseuxPoly r = a;
            r.shift(-g.val());
            r.scale(Rational(1) / g.leading_coeff());
            return r;
        }
        return divide_exact(a, g);
    }

    void normalize_units() {
        if (num_.is_zero()) {
            den_ = PuiseuxPoly::one();
            return;
        }
        const Rational vmin = num_.val() < den_.val() ? num_.val() : den_.val();
        if (vmin != 0) {
            num_.shift(-vmin);
            den_.shift(-vmin);
        }
        const Rational lead = den_.leading_coeff();
        if (lead != 1) {
            num_.scale(Rational(1) / lead);
            den_.scale(Rational(1) / lead);
        }
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = PuiseuxPoly::one();
            return;
        }
        if (!num_.is_single_term() && !den_.is_single_term()) {
            const PuiseuxPoly g = gcd(num_, den_);
            if (!g.is_one()) {
                num_ = divide_exact(num_, g);
                den_ = divide_exact(den_, g);
            }
        }
        normalize_units();
    }

    PuiseuxPoly num_, den_;
};

inline bool operator!=(const HReal& a, const HReal& b) { return !(a == b); }

inline HReal operator+(const Rational& a, const HReal& b) { return HReal(a) + b; }
inline HReal operator*(const Rational& a, const HReal& b) { return HReal(a) * b; }

/// Whether (a - b) / eps is finite; with eps = 1 this is galaxy equivalence.
inline bool galaxy_equiv(const HReal& a, const HReal& b, const HReal& eps) {
    if (eps.is_zero()) throw std::domain_error("galaxy_equiv: eps must be nonzero");
    const HReal d = a - b;
    if (d.is_zero()) return true;
    return d.valuation() >= eps.valuation();
}

inline MagnitudeClass magnitude_class(const HReal& a) { return a.magnitude(); }
inline Rational valuation(const HReal& a) { return a.valuation(); }
inline Rational shadow(const HReal& a) { return a.shadow(); }

}  // namespace cartanlim
