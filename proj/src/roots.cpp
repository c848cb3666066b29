#include "spectra/roots.hpp"

#include "spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace spectra {

namespace {

struct GaussInt {
    mpz_class re;
    mpz_class im;
};

inline GaussInt mul(const GaussInt& a, const GaussInt& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline mpz_class norm(const GaussInt& a) { return a.re * a.re + a.im * a.im; }

unsigned bit_length(unsigned long v)
{
    unsigned b = 0;
    while (v) {
        ++b;
        v >>= 1u;
    }
    return b;
}

// Bits needed so that 2^-bits <= eps.
unsigned bits_for(const mpq_class& eps)
{
    if (eps <= 0)
        throw std::domain_error("eps must be positive");
    mpz_class q = eps.get_den() / eps.get_num() + 1;
    return static_cast<unsigned>(mpz_sizeinbase(q.get_mpz_t(), 2));
}

std::vector<std::complex<double>> aberth_double(const IntPolynomial& p)
{
    const int d = p.degree();
    std::vector<double> a(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i)
        a[static_cast<std::size_t>(i)] = p.coeffs()[static_cast<std::size_t>(i)].get_d();
    for (double v : a)
        if (!std::isfinite(v))
            return {};

    // Fujiwara bound for the initial circle.
    double bound = 0;
    for (int k = 1; k <= d; ++k) {
        double r = std::pow(std::abs(a[static_cast<std::size_t>(d - k)] / a[static_cast<std::size_t>(d)]), 1.0 / k);
        if (k == d)
            r /= 2;
        bound = std::max(bound, r);
    }
    bound = std::max(2 * bound, 1e-3);
    double start = bound / 2;

    std::vector<std::complex<double>> z(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k)
        z[static_cast<std::size_t>(k)] = std::polar(start, 2 * M_PI * k / d + 0.4);

    for (int iter = 0; iter < 2000; ++iter) {
        double worst = 0;
        for (int i = 0; i < d; ++i) {
            std::complex<double> zi = z[static_cast<std::size_t>(i)];
            std::complex<double> pv = a[static_cast<std::size_t>(d)], dv = 0;
            for (int k = d - 1; k >= 0; --k) {
                dv = dv * zi + pv;
                pv = pv * zi + a[static_cast<std::size_t>(k)];
            }
            if (pv == 0.0)
                continue;
            std::complex<double> ratio = pv / dv;
            std::complex<double> s = 0;
            for (int j = 0; j < d; ++j)
                if (j != i)
                    s += 1.0 / (zi - z[static_cast<std::size_t>(j)]);
            std::complex<double> w = ratio / (1.0 - ratio * s);
            if (!std::isfinite(w.real()) || !std::isfinite(w.imag()))
                continue;
            z[static_cast<std::size_t>(i)] = zi - w;
            worst = std::max(worst, std::abs(w) / (1 + std::abs(zi)));
        }
        if (worst < 1e-15)
            break;
    }
    return z;
}

void aberth_big(const IntPolynomial& p, std::vector<BigComplex>& z, unsigned prec)
{
    const int d = p.degree();
    std::vector<BigFloat> a;
    a.reserve(static_cast<std::size_t>(d) + 1);
    for (const auto& c : p.coeffs())
        a.emplace_back(c, static_cast<mpfr_prec_t>(prec));
    for (auto& zi : z)
        zi.set_prec(static_cast<mpfr_prec_t>(prec));
    const BigFloat one(1.0, static_cast<mpfr_prec_t>(prec));
    const BigComplex unit(one, BigFloat(0.0, static_cast<mpfr_prec_t>(prec)));

    for (int iter = 0; iter < 200; ++iter) {
        long worst = LONG_MIN / 4;
        for (int i = 0; i < d; ++i) {
            BigComplex& zi = z[static_cast<std::size_t>(i)];
            BigComplex pv(a[static_cast<std::size_t>(d)], BigFloat(0.0, static_cast<mpfr_prec_t>(prec)));
            BigComplex dv(static_cast<mpfr_prec_t>(prec));
            for (int k = d - 1; k >= 0; --k) {
                dv = dv * zi + pv;
                pv = pv * zi;
                pv.re = pv.re + a[static_cast<std::size_t>(k)];
            }
            if (pv.is_zero() || dv.is_zero())
                continue;
            BigComplex ratio = pv / dv;
            BigComplex s(static_cast<mpfr_prec_t>(prec));
            bool collided = false;
            for (int j = 0; j < d; ++j) {
                if (j == i)
                    continue;
                BigComplex diff = zi - z[static_cast<std::size_t>(j)];
                if (diff.is_zero()) {
                    collided = true;
                    break;
                }
                s = s + unit / diff;
            }
            BigComplex w = collided ? ratio : ratio / (unit - ratio * s);
            if (!w.re.is_finite() || !w.im.is_finite())
                continue;
            zi = zi - w;
            long rel = w.exponent() - std::max(0L, zi.exponent());
            worst = std::max(worst, rel);
        }
        if (worst < -static_cast<long>(prec) + 6)
            break;
    }
}

bool disc_contains(const mpq_class& cre, const mpq_class& cim, const mpq_class& r, const RootBox& inner)
{
    mpq_class slack = r - inner.radius;
    if (slack < 0)
        return false;
    mpq_class dr = cre - inner.re, di = cim - inner.im;
    return dr * dr + di * di <= slack * slack;
}

}  // namespace

CInterval RootBox::enclosure() const
{
    return {{re - radius, re + radius}, {im - radius, im + radius}};
}

bool RootBox::contains_disc(const RootBox& inner) const { return disc_contains(re, im, radius, inner); }

bool RootBox::disjoint(const RootBox& other) const
{
    mpq_class dr = re - other.re, di = im - other.im;
    mpq_class s = radius + other.radius;
    return dr * dr + di * di > s * s;
}

bool RootBox::intersects(const CInterval& box) const
{
    mpq_class nr = std::clamp(re, box.re.lo, box.re.hi);
    mpq_class ni = std::clamp(im, box.im.lo, box.im.hi);
    mpq_class dr = re - nr, di = im - ni;
    return dr * dr + di * di <= radius * radius;
}

RootSystem::RootSystem(IntPolynomial squarefree, unsigned budget_bits)
    : poly_(squarefree.primitive()), budget_(budget_bits)
{
    const int d = poly_.degree();
    if (d < 1)
        return;
    if (d == 1) {
        prec_ = 64;
        RootBox b;
        b.re = mpq_class(-poly_.coeffs()[0], poly_.coeffs()[1]);
        b.re.canonicalize();
        b.im = 0;
        b.radius = dyadic(1, -static_cast<long>(prec_));
        boxes_.push_back(b);
        approx_.emplace_back(BigFloat(b.re, 64), BigFloat(0.0, 64));
        return;
    }

    auto zd = aberth_double(poly_);
    approx_.clear();
    for (std::size_t i = 0; i < static_cast<std::size_t>(d); ++i) {
        if (zd.empty())
            approx_.emplace_back(BigFloat(std::cos(2 * M_PI * static_cast<double>(i) / d + 0.4), 53),
                                 BigFloat(std::sin(2 * M_PI * static_cast<double>(i) / d + 0.4), 53));
        else
            approx_.emplace_back(BigFloat(zd[i].real(), 53), BigFloat(zd[i].imag(), 53));
    }

    unsigned prec = 96;
    std::vector<RootBox> out;
    for (;;) {
        if (prec > budget_)
            throw PrecisionExhausted("root isolation of " + poly_.to_string() + " needs more than " +
                                     std::to_string(budget_) + " bits");
        iterate_to(prec);
        if (certify(prec, out))
            break;
        prec *= 2;
    }
    prec_ = prec;

    std::vector<std::size_t> order(out.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (out[x].re != out[y].re)
            return out[x].re < out[y].re;
        return out[x].im < out[y].im;
    });
    std::vector<BigComplex> approx;
    for (std::size_t i : order) {
        boxes_.push_back(out[i]);
        approx.push_back(approx_[i]);
    }
    approx_ = std::move(approx);
}

std::size_t RootSystem::size() const
{
    std::lock_guard lock(mu_);
    return boxes_.size();
}

unsigned RootSystem::precision() const
{
    std::lock_guard lock(mu_);
    return prec_;
}

RootBox RootSystem::box(std::size_t i) const
{
    std::lock_guard lock(mu_);
    return boxes_.at(i);
}

std::vector<RootBox> RootSystem::boxes() const
{
    std::lock_guard lock(mu_);
    return boxes_;
}

mpq_class RootSystem::max_radius() const
{
    std::lock_guard lock(mu_);
    mpq_class m = 0;
    for (const auto& b : boxes_)
        m = std::max(m, b.radius);
    return m;
}

void RootSystem::iterate_to(unsigned prec) { aberth_big(poly_, approx_, prec); }

bool RootSystem::certify(unsigned prec, std::vector<RootBox>& out) const
{
    // Smith's bound: with z_1..z_d distinct, the discs
    //   |z - z_i| <= d |p(z_i)| / |a_d prod_{j != i} (z_i - z_j)|
    // cover all roots and each connected component of k discs holds k roots.
    // Centers are dyadic (M_i / 2^k) so the bound is evaluated exactly.
    const int d = poly_.degree();
    const long k = static_cast<long>(prec);
    std::vector<GaussInt> M(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        M[static_cast<std::size_t>(i)] = {approx_[static_cast<std::size_t>(i)].re.scaled_round(k),
                                          approx_[static_cast<std::size_t>(i)].im.scaled_round(k)};
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (M[static_cast<std::size_t>(i)].re == M[static_cast<std::size_t>(j)].re &&
                M[static_cast<std::size_t>(i)].im == M[static_cast<std::size_t>(j)].im)
                return false;

    // Powers 2^{k m} for the homogenized Horner scheme.
    std::vector<mpz_class> shift(static_cast<std::size_t>(d) + 1);
    shift[0] = 1;
    for (int m = 1; m <= d; ++m)
        shift[static_cast<std::size_t>(m)] = shift[static_cast<std::size_t>(m - 1)] << static_cast<unsigned long>(k);

    const mpz_class& lead = poly_.leading();
    out.assign(static_cast<std::size_t>(d), RootBox{});
    mpz_class d2 = static_cast<long>(d) * static_cast<long>(d);
    for (int i = 0; i < d; ++i) {
        const GaussInt& m = M[static_cast<std::size_t>(i)];
        GaussInt v{lead, 0};
        for (int j = d - 1; j >= 0; --j) {
            v = mul(v, m);
            v.re += poly_.coeffs()[static_cast<std::size_t>(j)] * shift[static_cast<std::size_t>(d - j)];
        }
        GaussInt den{lead, 0};
        for (int j = 0; j < d; ++j) {
            if (j == i)
                continue;
            const GaussInt& mj = M[static_cast<std::size_t>(j)];
            den = mul(den, GaussInt{m.re - mj.re, m.im - mj.im});
        }
        // r^2 = d^2 |v|^2 / (|den|^2 2^{2k})
        mpq_class r2(d2 * norm(v), norm(den) << static_cast<unsigned long>(2 * k));
        r2.canonicalize();
        RootBox b;
        b.re = dyadic(m.re, -k);
        b.im = dyadic(m.im, -k);
        RInterval r = sqrt_enclosure(RInterval::point(r2), static_cast<unsigned>(k + 8));
        b.radius = std::max(r.hi, dyadic(1, -(k + 2)));
        out[static_cast<std::size_t>(i)] = b;
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (!out[static_cast<std::size_t>(i)].disjoint(out[static_cast<std::size_t>(j)]))
                return false;
    return true;
}

void RootSystem::refine_locked(const mpq_class& eps)
{
    const int d = poly_.degree();
    if (d < 1)
        return;
    auto worst = [&] {
        mpq_class m = 0;
        for (const auto& b : boxes_)
            m = std::max(m, b.radius);
        return m;
    };
    if (worst() <= eps)
        return;
    if (d == 1) {
        unsigned need = std::max(prec_ + 1, bits_for(eps) + 1);
        if (need > budget_)
            throw PrecisionExhausted("refinement beyond budget of " + std::to_string(budget_) + " bits");
        prec_ = need;
        boxes_[0].radius = dyadic(1, -static_cast<long>(prec_));
        return;
    }
    unsigned need = bits_for(eps) + bit_length(static_cast<unsigned long>(d)) + 8;
    unsigned prec = std::max(prec_ * 2, need);
    for (;;) {
        if (prec > budget_)
            throw PrecisionExhausted("refinement of " + poly_.to_string() + " beyond budget of " +
                                     std::to_string(budget_) + " bits");
        iterate_to(prec);
        std::vector<RootBox> out;
        if (certify(prec, out)) {
            bool nested = true;
            for (std::size_t i = 0; i < out.size() && nested; ++i)
                nested = boxes_[i].contains_disc(out[i]);
            if (nested) {
                boxes_ = std::move(out);
                prec_ = prec;
                if (worst() <= eps)
                    return;
            }
        }
        prec *= 2;
    }
}

void RootSystem::refine(const mpq_class& eps)
{
    std::lock_guard lock(mu_);
    refine_locked(eps);
}

void RootSystem::tighten()
{
    std::lock_guard lock(mu_);
    mpq_class m = 0;
    for (const auto& b : boxes_)
        m = std::max(m, b.radius);
    refine_locked(m / 4);
}

bool RootSystem::is_real(std::size_t i)
{
    if (poly_.degree() == 1)
        return true;
    for (;;) {
        std::vector<RootBox> bs = boxes();
        const RootBox& b = bs.at(i);
        if (abs(b.im) > b.radius)
            return false;
        RootBox c = b;
        c.im = -c.im;
        std::size_t hits = 0;
        for (const auto& o : bs)
            if (!o.disjoint(c))
                ++hits;
        if (hits == 1)
            return true;
        tighten();
    }
}

std::size_t RootSystem::conjugate_of(std::size_t i)
{
    for (;;) {
        std::vector<RootBox> bs = boxes();
        RootBox c = bs.at(i);
        c.im = -c.im;
        std::size_t hit = npos, hits = 0;
        for (std::size_t j = 0; j < bs.size(); ++j)
            if (!bs[j].disjoint(c)) {
                hit = j;
                ++hits;
            }
        if (hits == 1)
            return hit;
        tighten();
    }
}

std::size_t RootSystem::locate(const std::function<CInterval()>& z)
{
    for (;;) {
        CInterval e = z();
        std::vector<RootBox> bs = boxes();
        std::size_t hit = npos, hits = 0;
        for (std::size_t j = 0; j < bs.size(); ++j)
            if (bs[j].intersects(e)) {
                hit = j;
                ++hits;
            }
        if (hits <= 1)
            return hit;
        tighten();
    }
}

AlgebraicNumber::AlgebraicNumber(std::shared_ptr<RootSystem> system, std::size_t index)
    : system_(std::move(system)), index_(index)
{
    if (!system_ || index_ >= system_->size())
        throw std::out_of_range("AlgebraicNumber: root index out of range");
}

AlgebraicNumber AlgebraicNumber::real_root_in(const IntPolynomial& p, const mpq_class& lo, const mpq_class& hi,
                                              unsigned budget_bits)
{
    auto sys = std::make_shared<RootSystem>(squarefree_part(p), budget_bits);
    std::vector<std::size_t> reals;
    for (std::size_t i = 0; i < sys->size(); ++i)
        if (sys->is_real(i))
            reals.push_back(i);
    for (;;) {
        std::size_t inside = 0, straddle = 0, found = 0;
        for (std::size_t i : reals) {
            RootBox b = sys->box(i);
            mpq_class l = b.re - b.radius, h = b.re + b.radius;
            if (l >= lo && h <= hi) {
                ++inside;
                found = i;
            } else if (!(h < lo || l > hi)) {
                ++straddle;
            }
        }
        if (straddle == 0) {
            if (inside != 1)
                throw std::domain_error("expected exactly one real root in the interval, found " +
                                        std::to_string(inside));
            return AlgebraicNumber(sys, found);
        }
        sys->tighten();
    }
}

AlgebraicNumber AlgebraicNumber::largest_real_root(const IntPolynomial& p, unsigned budget_bits)
{
    auto sys = std::make_shared<RootSystem>(squarefree_part(p), budget_bits);
    std::size_t best = RootSystem::npos;
    for (std::size_t i = 0; i < sys->size(); ++i)
        if (sys->is_real(i) && (best == RootSystem::npos || sys->box(i).re > sys->box(best).re))
            best = i;
    if (best == RootSystem::npos)
        throw std::domain_error("polynomial has no real root");
    return AlgebraicNumber(sys, best);
}

AlgebraicNumber AlgebraicNumber::nearest_root(const IntPolynomial& p, double re, double im, unsigned budget_bits)
{
    auto sys = std::make_shared<RootSystem>(squarefree_part(p), budget_bits);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sys->size(); ++i) {
        RootBox b = sys->box(i);
        double d = std::hypot(to_double(b.re) - re, to_double(b.im) - im);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return AlgebraicNumber(sys, best);
}

AlgebraicNumber AlgebraicNumber::root(const IntPolynomial& p, std::size_t index, unsigned budget_bits)
{
    return AlgebraicNumber(std::make_shared<RootSystem>(squarefree_part(p), budget_bits), index);
}

RInterval AlgebraicNumber::real_enclosure() const
{
    RootBox b = box();
    return {b.re - b.radius, b.re + b.radius};
}

void AlgebraicNumber::refine(const mpq_class& eps) const { system_->refine(eps); }

bool AlgebraicNumber::is_real() const { return system_->is_real(index_); }

bool AlgebraicNumber::is_root_of(const IntPolynomial& g) const
{
    if (g.is_zero())
        return true;
    IntPolynomial h = gcd(g, defining());
    if (h.degree() <= 0)
        return false;
    // h divides the defining polynomial, so its roots are among ours and our
    // box holds at most one of them.
    RootSystem hs(h, system_->budget());
    for (;;) {
        RootBox b = box();
        bool touching = false;
        for (const auto& hb : hs.boxes()) {
            if (b.contains_disc(hb))
                return true;
            if (!b.disjoint(hb))
                touching = true;
        }
        if (!touching)
            return false;
        if (hs.max_radius() * 16 < b.radius)
            system_->tighten();
        else
            hs.refine(b.radius / 16);
    }
}

int AlgebraicNumber::sign_of(const IntPolynomial& c) const
{
    if (c.is_zero() || is_root_of(c))
        return 0;
    for (;;) {
        RInterval v = eval(c, real_enclosure());
        if (v.certainly_positive())
            return 1;
        if (v.certainly_negative())
            return -1;
        system_->tighten();
    }
}

std::vector<RootBox> isolate_roots(const IntPolynomial& p, const mpq_class& eps, unsigned budget_bits)
{
    if (p.degree() < 1)
        throw std::domain_error("isolate_roots: degree must be at least 1");
    std::vector<IntPolynomial> factors = squarefree_decomposition(p);
    std::vector<std::unique_ptr<RootSystem>> systems;
    std::vector<unsigned> mult;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() < 1)
            continue;
        systems.push_back(std::make_unique<RootSystem>(factors[i], budget_bits));
        systems.back()->refine(eps);
        mult.push_back(static_cast<unsigned>(i + 1));
    }
    for (;;) {
        std::vector<RootBox> all;
        std::vector<std::size_t> owner;
        for (std::size_t s = 0; s < systems.size(); ++s)
            for (RootBox b : systems[s]->boxes()) {
                b.multiplicity = mult[s];
                all.push_back(b);
                owner.push_back(s);
            }
        std::vector<bool> bad(systems.size(), false);
        bool ok = true;
        for (std::size_t i = 0; i < all.size(); ++i)
            for (std::size_t j = i + 1; j < all.size(); ++j)
                if (owner[i] != owner[j] && !all[i].disjoint(all[j])) {
                    bad[owner[i]] = bad[owner[j]] = true;
                    ok = false;
                }
        if (ok) {
            std::sort(all.begin(), all.end(), [](const RootBox& a, const RootBox& b) {
                if (a.re != b.re)
                    return a.re < b.re;
                return a.im < b.im;
            });
            return all;
        }
        for (std::size_t s = 0; s < systems.size(); ++s)
            if (bad[s])
                systems[s]->tighten();
    }
}

RInterval eval(const IntPolynomial& p, const RInterval& x)
{
    RInterval acc = RInterval::point(0);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * x + RInterval::point(mpq_class(*it));
    return acc;
}

CInterval eval(const IntPolynomial& p, const CInterval& z)
{
    CInterval acc = CInterval::point(0, 0);
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * z + CInterval::point(mpq_class(*it), 0);
    return acc;
}

}  // namespace spectra
