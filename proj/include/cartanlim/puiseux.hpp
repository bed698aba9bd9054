#pragma once

#include "cartanlim/rational.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace cartanlim {

/// Sparse polynomial in one variable t with exact rational coefficients and
/// nonnegative rational exponents.  t stands for a positive infinitesimal, so
/// the term of minimal exponent dominates: the "leading" term is the lowest
/// one, and sign and size near t = 0+ are read off it.
class PuiseuxPoly {
public:
    using TermMap = std::map<Rational, Rational>;  // exponent -> coefficient

    PuiseuxPoly() = default;
    explicit PuiseuxPoly(const Rational& c) {
        if (c != 0) terms_[Rational(0)] = c;
    }

    static PuiseuxPoly zero() { return {}; }
    static PuiseuxPoly one() { return PuiseuxPoly(Rational(1)); }

    /// coeff * t^exp.  Exponents must be >= 0.
    static PuiseuxPoly term(const Rational& coeff, const Rational& exp) {
        if (exp < 0) throw std::invalid_argument("PuiseuxPoly: negative exponent");
        PuiseuxPoly p;
        if (coeff != 0) p.terms_[exp] = coeff;
        return p;
    }

    static PuiseuxPoly t() { return term(Rational(1), Rational(1)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const {
        return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second == 1;
    }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }
    bool is_single_term() const { return terms_.size() == 1; }

    const TermMap& terms() const { return terms_; }

    /// Minimal exponent.  Undefined for zero.
    const Rational& val() const {
        require_nonzero();
        return terms_.begin()->first;
    }

    /// Coefficient of the minimal-exponent term.  Undefined for zero.
    const Rational& leading_coeff() const {
        require_nonzero();
        return terms_.begin()->second;
    }

    /// Maximal exponent.  Undefined for zero.
    const Rational& degree() const {
        require_nonzero();
        return terms_.rbegin()->first;
    }

    Rational coeff(const Rational& exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Rational& coeff, const Rational& exp) {
        if (coeff == 0) return;
        auto [it, inserted] = terms_.emplace(exp, coeff);
        if (!inserted) {
            it->second += coeff;
            if (it->second == 0) terms_.erase(it);
        }
    }

    PuiseuxPoly operator+(const PuiseuxPoly& o) const {
        PuiseuxPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(c, e);
        return r;
    }

    PuiseuxPoly operator-(const PuiseuxPoly& o) const {
        PuiseuxPoly r = *this;
        for (const auto& [e, c] : o.terms_) r.add_term(-c, e);
        return r;
    }

    PuiseuxPoly operator-() const {
        PuiseuxPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }

    PuiseuxPoly operator*(const PuiseuxPoly& o) const {
        PuiseuxPoly r;
        for (const auto& [e1, c1] : terms_)
            for (const auto& [e2, c2] : o.terms_) r.add_term(c1 * c2, e1 + e2);
        return r;
    }

    void scale(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return;
        }
        for (auto& [e, k] : terms_) k *= c;
    }

    /// Multiply by t^e.  e may be negative as long as all exponents stay >= 0.
    void shift(const Rational& e) {
        if (e == 0 || terms_.empty()) return;
        if (e < 0 && val() + e < 0) throw std::invalid_argument("PuiseuxPoly: shift below zero");
        TermMap shifted;
        for (const auto& [exp, c] : terms_) shifted.emplace(exp + e, c);
        terms_ = std::move(shifted);
    }

    bool operator==(const PuiseuxPoly& o) const { return terms_ == o.terms_; }

    double eval(double tval) const {
        double acc = 0.0;
        for (const auto& [e, c] : terms_) acc += to_double(c) * std::pow(tval, to_double(e));
        return acc;
    }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("PuiseuxPoly: zero polynomial");
    }

    TermMap terms_;
};

namespace detail {

// One step of top-degree polynomial division: a -= (top(a)/top(b)) t^(da-db) b.
// Exponents live in a lattice (1/N)Z bounded below, so the loop terminates.
inline void poly_reduce_step(PuiseuxPoly& a, const PuiseuxPoly& b, PuiseuxPoly* quotient) {
    const Rational da = a.degree(), db = b.degree();
    const Rational c = a.terms().rbegin()->second / b.terms().rbegin()->second;
    const Rational shift = da - db;
    if (quotient) quotient->add_term(c, shift);
    for (const auto& [e, k] : b.terms()) a.add_term(-c * k, e + shift);
}

// ---------------------------------------------------------------------------
// Modular polynomial gcd.  Inputs are mapped to an integer exponent lattice
// and integer coefficients; the gcd is computed modulo 31-bit primes, its
// rational coefficients recovered by CRT + rational reconstruction, and the
// candidate certified by exact trial division.  This keeps the cost tied to
// the (usually tiny) size of the gcd itself instead of the coefficient
// explosion of remainder sequences.
// ---------------------------------------------------------------------------

using ZPoly = std::map<long long, BigInt>;

inline BigInt exponent_lcm(const PuiseuxPoly& p, BigInt acc) {
    for (const auto& [e, c] : p.terms()) acc = boost::multiprecision::lcm(acc, denominator(e));
    return acc;
}

inline ZPoly to_zpoly(const PuiseuxPoly& p, const BigInt& lattice) {
    BigInt den = 1;
    for (const auto& [e, c] : p.terms()) den = boost::multiprecision::lcm(den, denominator(c));
    ZPoly out;
    for (const auto& [e, c] : p.terms()) {
        const BigInt expo = numerator(e) * (lattice / denominator(e));
        out[expo.template convert_to<long long>()] = BigInt(numerator(c) * (den / denominator(c)));
    }
    return out;
}

inline constexpr std::uint64_t kGcdPrimes[] = {
    2147483647ull, 2147483629ull, 2147483587ull, 2147483579ull,
    2147483563ull, 2147483549ull, 2147483543ull, 2147483497ull,
    2147483489ull, 2147483477ull, 2147483423ull, 2147483399ull,
    2147483353ull, 2147483323ull, 2147483269ull, 2147483249ull,
    2147483237ull, 2147483179ull, 2147483171ull, 2147483137ull,
    2147483123ull, 2147483077ull, 2147483069ull, 2147483059ull,
    2147483053ull, 2147483033ull, 2147483029ull, 2147482951ull,
    2147482949ull, 2147482943ull, 2147482937ull, 2147482921ull,
    2147482877ull, 2147482873ull, 2147482867ull, 2147482859ull,
    2147482819ull, 2147482817ull, 2147482811ull, 2147482801ull,
    2147482763ull, 2147482739ull, 2147482697ull, 2147482693ull,
    2147482681ull, 2147482663ull, 2147482661ull, 2147482621ull};

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t acc = 1;
    b %= p;
    while (e) {
        if (e & 1) acc = acc * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return acc;
}

/// Dense monic gcd of two polynomials modulo p; the vectors are coefficient
/// arrays indexed by lattice exponent.
inline std::vector<std::uint64_t> gcd_mod_p(std::vector<std::uint64_t> a,
                                            std::vector<std::uint64_t> b, std::uint64_t p) {
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
        const std::uint64_t inv = powmod(b.back(), p - 2, p);
        while (a.size() >= b.size()) {
            const std::uint64_t f = a.back() * inv % p;
            const std::size_t shift = a.size() - b.size();
            if (f != 0)
                for (std::size_t i = 0; i < b.size(); ++i)
                    a[shift + i] = (a[shift + i] + p - f * b[i] % p) % p;
            a.pop_back();
            trim(a);
            if (a.empty()) break;
        }
        std::swap(a, b);
    }
    trim(a);
    if (!a.empty()) {
        const std::uint64_t inv = powmod(a.back(), p - 2, p);
        for (auto& c : a) c = c * inv % p;
    }
    return a;
}

/// Wang rational reconstruction: the unique p/q = r (mod m) with
/// |p|, q <= sqrt(m/2), if it exists.
inline bool rational_reconstruct(const BigInt& r, const BigInt& m, Rational* out) {
    BigInt v0 = m, v1 = r % m;
    if (v1 < 0) v1 += m;
    BigInt t0 = 0, t1 = 1;
    const BigInt half = m / 2;
    const BigInt bound = boost::multiprecision::sqrt(half);
    while (v1 > bound) {
        const BigInt q = v0 / v1;
        BigInt v2 = v0 - q * v1;
        BigInt t2 = t0 - q * t1;
        v0 = std::move(v1);
        v1 = std::move(v2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || boost::multiprecision::abs(t1) > bound) return false;
    if (boost::multiprecision::gcd(BigInt(boost::multiprecision::abs(t1)), v1) != 1 && v1 != 0)
        return false;
    if (t1 < 0) {
        t1 = -t1;
        v1 = -v1;
    }
    *out = Rational(v1, t1);
    return true;
}

/// Exact divisibility test over the rationals; fills *quotient on success.
inline bool poly_divides(const PuiseuxPoly& divisor, const PuiseuxPoly& dividend,
                         PuiseuxPoly* quotient) {
    PuiseuxPoly rem = dividend, q;
    while (!rem.is_zero() && rem.degree() >= divisor.degree()) poly_reduce_step(rem, divisor, &q);
    if (!rem.is_zero()) return false;
    if (quotient) *quotient = std::move(q);
    return true;
}

}  // namespace detail

/// Monic (at the minimal exponent) greatest common divisor via modular
/// images.  A shared t-power is split off first; a first prime certifying a
/// constant gcd short-circuits the common coprime case.
inline PuiseuxPoly gcd(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (a.is_zero() || b.is_zero()) {
        PuiseuxPoly x = a.is_zero() ? b : a;
        if (!x.is_zero()) x.scale(Rational(1) / x.leading_coeff());
        return x;
    }
    // shared t-power
    const Rational tshift = a.val() < b.val() ? a.val() : b.val();
    PuiseuxPoly pa = a, pb = b;
    pa.shift(-pa.val());
    pb.shift(-pb.val());
    const PuiseuxPoly tpart = PuiseuxPoly::term(Rational(1), tshift);
    if (pa.is_constant() || pb.is_constant()) return tpart;

    const BigInt lattice = detail::exponent_lcm(pb, detail::exponent_lcm(pa, BigInt(1)));
    const detail::ZPoly za = detail::to_zpoly(pa, lattice), zb = detail::to_zpoly(pb, lattice);
    const std::size_t da = static_cast<std::size_t>(za.rbegin()->first);
    const std::size_t db = static_cast<std::size_t>(zb.rbegin()->first);

    std::size_t best_deg = std::min(da, db) + 1;  // sentinel: nothing collected yet
    std::vector<BigInt> residues;                 // coefficients of the monic modular gcd
    BigInt modulus = 1;

    for (std::uint64_t p : detail::kGcdPrimes) {
        // skip primes that kill a leading coefficient
        if (za.rbegin()->second % p == 0 || zb.rbegin()->second % p == 0) continue;
        auto dense = [&](const detail::ZPoly& z, std::size_t deg) {
            std::vector<std::uint64_t> v(deg + 1, 0);
            for (const auto& [e, c] : z) {
                BigInt r = c % p;
                if (r < 0) r += p;
                v[static_cast<std::size_t>(e)] = r.template convert_to<std::uint64_t>();
            }
            return v;
        };
        const auto g = detail::gcd_mod_p(dense(za, da), dense(zb, db), p);
        if (g.size() == 1) return tpart;  // certified coprime (up to the t-power)
        const std::size_t deg = g.size() - 1;
        if (deg > best_deg) continue;  // unlucky prime
        if (deg < best_deg) {          // sharper degree bound: restart collection
            best_deg = deg;
            residues.assign(g.size(), BigInt(0));
            modulus = 1;
        }
        // CRT-combine this image into the residues
        const BigInt pb_int(p);
        if (modulus == 1) {
            for (std::size_t i = 0; i < g.size(); ++i) residues[i] = BigInt(g[i]);
            modulus = pb_int;
        } else {
            BigInt inv_m;  // modulus^{-1} mod p via Fermat
            {
                BigInt mm = modulus % pb_int;
                inv_m = BigInt(detail::powmod(mm.template convert_to<std::uint64_t>(), p - 2, p));
            }
            for (std::size_t i = 0; i < g.size(); ++i) {
                BigInt cur = residues[i] % pb_int;
                if (cur < 0) cur += pb_int;
                BigInt delta = (BigInt(g[i]) - cur) % pb_int;
                if (delta < 0) delta += pb_int;
                residues[i] += modulus * ((delta * inv_m) % pb_int);
            }
            modulus *= pb_int;
        }
        // attempt rational reconstruction + certification
        PuiseuxPoly candidate;
        bool ok = true;
        const Rational inv_lattice(1, lattice);
        for (std::size_t i = 0; i <= best_deg && ok; ++i) {
            Rational c;
            if (!detail::rational_reconstruct(residues[i], modulus, &c)) {
                ok = false;
                break;
            }
            if (c != 0) candidate.add_term(c, Rational(i) * inv_lattice);
        }
        if (!ok || candidate.is_zero()) continue;
        if (detail::poly_divides(candidate, pa, nullptr) &&
            detail::poly_divides(candidate, pb, nullptr)) {
            candidate.scale(Rational(1) / candidate.leading_coeff());
            return candidate * tpart;
        }
    }
    throw std::runtime_error("PuiseuxPoly gcd: modular image reconstruction failed");
}

inline bool is_zero(const PuiseuxPoly& p) { return p.is_zero(); }

/// Exact quotient a / b; throws if b does not divide a.
inline PuiseuxPoly divide_exact(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    if (b.is_zero()) throw std::domain_error("PuiseuxPoly: division by zero");
    PuiseuxPoly rem = a, q;
    while (!rem.is_zero() && rem.degree() >= b.degree()) detail::poly_reduce_step(rem, b, &q);
    if (!rem.is_zero()) throw std::logic_error("PuiseuxPoly: inexact division");
    return q;
}

}  // namespace cartanlim
