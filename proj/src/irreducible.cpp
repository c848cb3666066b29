#include "spectra/irreducible.hpp"

#include <algorithm>
#include <bitset>
#include <cstdint>

namespace spectra {

namespace {

using u64 = std::uint64_t;
using PolyP = std::vector<u64>;  // ascending, trimmed

void trim(PolyP& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

u64 powmod(u64 b, u64 e, u64 m)
{
    u64 r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = r * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return r;
}

u64 inv(u64 a, u64 m) { return powmod(a, m - 2, m); }

PolyP reduce(const IntPolynomial& p, u64 m)
{
    PolyP out;
    for (const auto& c : p.coeffs()) {
        mpz_class r = c % static_cast<unsigned long>(m);
        if (r < 0)
            r += static_cast<unsigned long>(m);
        out.push_back(r.get_ui());
    }
    trim(out);
    return out;
}

PolyP mod(PolyP a, const PolyP& b, u64 m)
{
    const std::size_t db = b.size() - 1;
    const u64 li = inv(b.back(), m);
    while (a.size() >= b.size()) {
        u64 c = a.back() * li % m;
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i <= db; ++i)
            a[shift + i] = (a[shift + i] + m - c * b[i] % m) % m;
        trim(a);
    }
    return a;
}

PolyP div(PolyP a, const PolyP& b, u64 m)
{
    const u64 li = inv(b.back(), m);
    if (a.size() < b.size())
        return {};
    PolyP q(a.size() - b.size() + 1, 0);
    while (a.size() >= b.size()) {
        u64 c = a.back() * li % m;
        std::size_t shift = a.size() - b.size();
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = (a[shift + i] + m - c * b[i] % m) % m;
        trim(a);
    }
    trim(q);
    return q;
}

PolyP mulmod(const PolyP& a, const PolyP& b, const PolyP& f, u64 m)
{
    if (a.empty() || b.empty())
        return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % m;
    trim(r);
    return mod(std::move(r), f, m);
}

PolyP gcd(PolyP a, PolyP b, u64 m)
{
    while (!b.empty()) {
        PolyP r = mod(a, b, m);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

PolyP derivative(const PolyP& a, u64 m)
{
    PolyP d;
    for (std::size_t i = 1; i < a.size(); ++i)
        d.push_back(a[i] * (i % m) % m);
    trim(d);
    return d;
}

PolyP powmod_poly(PolyP base, u64 e, const PolyP& f, u64 m)
{
    PolyP r{1};
    base = mod(std::move(base), f, m);
    while (e) {
        if (e & 1)
            r = mulmod(r, base, f, m);
        base = mulmod(base, base, f, m);
        e >>= 1;
    }
    return r;
}

bool is_prime(u64 n)
{
    if (n < 2)
        return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

std::vector<mpz_class> divisors(mpz_class n)
{
    n = abs(n);
    std::vector<mpz_class> out;
    for (mpz_class d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n)
                out.push_back(n / d);
        }
    return out;
}

}  // namespace

std::vector<int> factor_degrees_mod(const IntPolynomial& p, unsigned long prime)
{
    const u64 m = prime;
    PolyP f = reduce(p, m);
    if (static_cast<int>(f.size()) - 1 != p.degree())
        return {};
    if (gcd(f, derivative(f, m), m).size() != 1)
        return {};
    std::vector<int> degs;
    PolyP h{0, 1};
    const PolyP x{0, 1};
    for (int i = 1; 2 * i <= static_cast<int>(f.size()) - 1; ++i) {
        h = powmod_poly(h, m, f, m);
        PolyP t = h;
        t.resize(std::max<std::size_t>(t.size(), 2), 0);
        t[1] = (t[1] + m - 1) % m;
        trim(t);
        PolyP g = gcd(f, t, m);
        int dg = static_cast<int>(g.size()) - 1;
        if (dg > 0) {
            for (int k = 0; k < dg / i; ++k)
                degs.push_back(i);
            f = div(f, g, m);
            h = mod(h, f, m);
        }
    }
    if (f.size() > 1)
        degs.push_back(static_cast<int>(f.size()) - 1);
    std::sort(degs.begin(), degs.end());
    return degs;
}

IrreducibilityCheck check_irreducible(const IntPolynomial& p)
{
    IrreducibilityCheck out;
    const int d = p.degree();
    if (d < 1) {
        out.note = "constant polynomial";
        out.reducible = true;
        return out;
    }
    if (d == 1) {
        out.proven = p.content() == 1;
        out.reducible = !out.proven;
        out.note = out.proven ? "linear" : "nontrivial content";
        return out;
    }
    if (p.content() != 1) {
        out.reducible = true;
        out.note = "nontrivial content";
        return out;
    }
    if (p.constant_term() == 0) {
        out.reducible = true;
        out.note = "divisible by x";
        return out;
    }
    if (!is_squarefree(p)) {
        out.reducible = true;
        out.note = "not squarefree";
        return out;
    }

    if (abs(p.constant_term()) < 1000000 && abs(p.leading()) < 1000000) {
        for (const auto& a : divisors(p.constant_term()))
            for (const auto& b : divisors(p.leading()))
                for (int s : {1, -1}) {
                    mpq_class r(s * a, b);
                    r.canonicalize();
                    if (p.sign_at(r) == 0) {
                        out.reducible = true;
                        out.note = "rational root " + r.get_str();
                        return out;
                    }
                }
    }

    for (unsigned n = 1; n <= 120; ++n) {
        IntPolynomial c = cyclotomic(n);
        if (c.degree() > d)
            continue;
        if (c == p.primitive() || c == -p.primitive()) {
            out.proven = true;
            out.note = "cyclotomic polynomial Phi_" + std::to_string(n);
            return out;
        }
        if (gcd(p, c).degree() > 0) {
            out.reducible = true;
            out.note = "shares the cyclotomic factor Phi_" + std::to_string(n);
            return out;
        }
    }

    // A factor of degree k over Z reduces to a product of factors mod p whose
    // degrees sum to k, so k must be a subset sum for every good prime.
    std::bitset<256> possible;
    for (int k = 1; k < d; ++k)
        possible.set(static_cast<std::size_t>(k));
    int primes_used = 0;
    for (u64 pr = 3; pr < 2000 && primes_used < 40; pr += 2) {
        if (!is_prime(pr))
            continue;
        std::vector<int> degs = factor_degrees_mod(p, pr);
        if (degs.empty())
            continue;
        ++primes_used;
        std::bitset<256> sums;
        sums.set(0);
        for (int k : degs)
            sums |= sums << static_cast<std::size_t>(k);
        possible &= sums;
        if (possible.none()) {
            out.proven = true;
            out.note = "factor degrees modulo small primes exclude every proper factor";
            return out;
        }
    }
    out.note = "inconclusive: possible factor degrees remain after " + std::to_string(primes_used) + " primes";
    return out;
}

}  // namespace spectra
