#include "spectra/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace spectra {

RInterval::RInterval(mpq_class l, mpq_class h) : lo(std::move(l)), hi(std::move(h))
{
    if (hi < lo)
        std::swap(lo, hi);
}

RInterval operator*(const RInterval& a, const RInterval& b)
{
    mpq_class p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

RInterval operator*(const RInterval& a, const mpq_class& c)
{
    return {a.lo * c, a.hi * c};
}

RInterval operator/(const RInterval& a, const RInterval& b)
{
    if (b.contains_zero())
        throw std::domain_error("interval division by an interval containing zero");
    RInterval inv{1 / b.hi, 1 / b.lo};
    return a * inv;
}

RInterval sqr(const RInterval& a)
{
    mpq_class l2 = a.lo * a.lo, h2 = a.hi * a.hi;
    if (a.contains_zero())
        return {0, std::max(l2, h2)};
    return {std::min(l2, h2), std::max(l2, h2)};
}

RInterval pow(const RInterval& a, unsigned k)
{
    RInterval r = RInterval::point(1);
    RInterval base = a;
    // Even powers go through sqr so the lower end stays tight.
    while (k > 0) {
        if (k & 1u)
            r = r * base;
        k >>= 1u;
        if (k)
            base = sqr(base);
    }
    return r;
}

RInterval abs(const RInterval& a)
{
    if (a.lo >= 0)
        return a;
    if (a.hi <= 0)
        return -a;
    return {0, std::max(mpq_class(-a.lo), a.hi)};
}

RInterval hull(const RInterval& a, const RInterval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

namespace {

// floor(sqrt(v * 4^bits)) / 2^bits and its successor bracket sqrt(v).
std::pair<mpq_class, mpq_class> sqrt_bracket(const mpq_class& v, unsigned bits)
{
    if (v <= 0)
        return {0, 0};
    mpz_class scaled = v.get_num();
    scaled <<= 2 * bits;
    scaled /= v.get_den();
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), scaled.get_mpz_t());
    mpz_class den = 1;
    den <<= bits;
    mpq_class lo(r, den), hi(r + 1, den);
    lo.canonicalize();
    hi.canonicalize();
    return {lo, hi};
}

}  // namespace

RInterval sqrt_enclosure(const RInterval& x, unsigned bits)
{
    mpq_class l = x.lo < 0 ? mpq_class(0) : x.lo;
    auto [llo, lhi] = sqrt_bracket(l, bits);
    auto [hlo, hhi] = sqrt_bracket(x.hi, bits);
    (void)lhi;
    (void)hlo;
    if (x.hi <= 0)
        return {0, 0};
    return {llo, hhi};
}

CInterval operator*(const CInterval& a, const CInterval& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

RInterval norm2(const CInterval& z) { return sqr(z.re) + sqr(z.im); }

CInterval inverse(const CInterval& z)
{
    RInterval n = norm2(z);
    if (n.lo <= 0)
        throw std::domain_error("inverse of a box containing zero");
    // 1/z = conj(z)/|z|^2; each component uses its own range over the box,
    // so the result is a valid (if slightly loose) enclosure.
    RInterval inv{1 / n.hi, 1 / n.lo};
    return {z.re * inv, (-z.im) * inv};
}

std::string to_decimal(const mpq_class& v, int significant)
{
    if (v == 0)
        return "0";
    if (significant < 1)
        significant = 1;
    mpq_class a = abs(v);
    // e = floor(log10(a)), found from a double estimate then corrected.
    long e = static_cast<long>(std::floor(std::log10(to_double(a))));
    auto pow10 = [](long k) {
        mpz_class p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
        return k < 0 ? mpq_class(1, p) : mpq_class(p);
    };
    while (a >= pow10(e + 1))
        ++e;
    while (a < pow10(e))
        --e;
    // digits = round(a * 10^(significant - 1 - e))
    mpq_class scaled = a * pow10(significant - 1 - e);
    mpz_class digits = scaled.get_num() / scaled.get_den();
    mpq_class frac = scaled - mpq_class(digits);
    if (frac * 2 >= 1)
        ++digits;
    std::string ds = digits.get_str();
    if (static_cast<int>(ds.size()) > significant) {
        ++e;
        ds.pop_back();
    }
    std::string out = v < 0 ? "-" : "";
    if (e >= -6 && e < significant) {
        if (e < 0) {
            out += "0.";
            out.append(static_cast<std::size_t>(-e - 1), '0');
            out += ds;
        } else {
            out += ds.substr(0, static_cast<std::size_t>(e + 1));
            if (static_cast<int>(ds.size()) > e + 1)
                out += "." + ds.substr(static_cast<std::size_t>(e + 1));
        }
    } else {
        out += ds.substr(0, 1);
        if (ds.size() > 1)
            out += "." + ds.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

std::string to_decimal(const RInterval& v, int significant) { return to_decimal(v.mid(), significant); }

std::string to_decimal(const CInterval& v, int significant)
{
    mpq_class im = v.im.mid();
    std::string out = to_decimal(v.re.mid(), significant);
    out += im < 0 ? "-" : "+";
    out += to_decimal(mpq_class(abs(im)), significant) + "i";
    return out;
}

double to_double(const mpq_class& v) { return mpq_get_d(v.get_mpq_t()) ; }

double upper_double(const mpq_class& v)
{
    double d = v.get_d();
    while (mpq_class(d) < v)
        d = std::nextafter(d, INFINITY);
    return d;
}

double lower_double(const mpq_class& v)
{
    double d = v.get_d();
    while (mpq_class(d) > v)
        d = std::nextafter(d, -INFINITY);
    return d;
}

mpq_class parse_rational(const std::string& text)
{
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s.push_back(c);
    if (s.empty())
        throw std::invalid_argument("empty number");
    if (auto slash = s.find('/'); slash != std::string::npos) {
        mpq_class q(s, 10);
        q.canonicalize();
        if (q.get_den() == 0)
            throw std::invalid_argument("zero denominator");
        return q;
    }
    std::size_t i = 0;
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
        sign = s[i] == '-' ? -1 : 1;
        ++i;
    }
    std::string digits;
    long exp10 = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any = true;
            if (seen_dot)
                --exp10;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else if (c == 'e' || c == 'E') {
            exp10 += std::stol(s.substr(i + 1));
            break;
        } else {
            throw std::invalid_argument("bad number '" + text + "'");
        }
    }
    if (!any)
        throw std::invalid_argument("bad number '" + text + "'");
    mpz_class m(digits, 10);
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    mpq_class q = exp10 < 0 ? mpq_class(m, p) : mpq_class(m * p);
    q.canonicalize();
    return sign < 0 ? mpq_class(-q) : q;
}

mpq_class dyadic(const mpz_class& mantissa, long exponent)
{
    mpq_class q(mantissa);
    if (exponent >= 0)
        mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(exponent));
    else
        mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-exponent));
    return q;
}

}  // namespace spectra
