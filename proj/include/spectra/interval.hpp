#pragma once

#include <gmpxx.h>

#include <string>

namespace spectra {

// Closed interval with exact rational endpoints.
struct RInterval {
    mpq_class lo;
    mpq_class hi;

    RInterval() = default;
    RInterval(mpq_class l, mpq_class h);
    static RInterval point(const mpq_class& v) { return {v, v}; }

    mpq_class mid() const { return (lo + hi) / 2; }
    mpq_class width() const { return hi - lo; }
    bool contains(const mpq_class& v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool certainly_positive() const { return lo > 0; }
    bool certainly_negative() const { return hi < 0; }
    bool overlaps(const RInterval& o) const { return !(hi < o.lo || o.hi < lo); }

    RInterval operator-() const { return {-hi, -lo}; }
    friend RInterval operator+(const RInterval& a, const RInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
    friend RInterval operator-(const RInterval& a, const RInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }
    friend RInterval operator*(const RInterval& a, const RInterval& b);
    // Requires 0 not in b.
    friend RInterval operator/(const RInterval& a, const RInterval& b);
    friend RInterval operator*(const RInterval& a, const mpq_class& c);
};

RInterval sqr(const RInterval& a);
RInterval pow(const RInterval& a, unsigned k);
RInterval abs(const RInterval& a);
RInterval hull(const RInterval& a, const RInterval& b);

// Rational enclosure of sqrt(x) for x >= 0 with width at most 2^-bits.
RInterval sqrt_enclosure(const RInterval& x, unsigned bits = 80);

// Axis-aligned complex box.
struct CInterval {
    RInterval re;
    RInterval im;

    static CInterval point(const mpq_class& r, const mpq_class& i) { return {RInterval::point(r), RInterval::point(i)}; }

    CInterval conj() const { return {re, -im}; }
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
    bool overlaps(const CInterval& o) const { return re.overlaps(o.re) && im.overlaps(o.im); }

    friend CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
    friend CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
    friend CInterval operator*(const CInterval& a, const CInterval& b);
    friend CInterval operator*(const CInterval& a, const mpq_class& c) { return {a.re * c, a.im * c}; }
};

// |z|^2 as an exact rational interval.
RInterval norm2(const CInterval& z);
CInterval inverse(const CInterval& z);

// Decimal rendering with the given number of significant digits (round half
// away from zero). Plain notation for moderate exponents, otherwise e-notation.
std::string to_decimal(const mpq_class& v, int significant = 20);
std::string to_decimal(const RInterval& v, int significant = 20);
std::string to_decimal(const CInterval& v, int significant = 20);

// Nearest double; the exact value lies within one ulp of the result.
double to_double(const mpq_class& v);
// Double upper bound: returns d >= v.
double upper_double(const mpq_class& v);
double lower_double(const mpq_class& v);

// Parses "0.7", "-1.25e-3", "7/10" exactly.
mpq_class parse_rational(const std::string& text);

mpq_class dyadic(const mpz_class& mantissa, long exponent);

}  // namespace spectra
