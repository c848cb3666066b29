#pragma once

#include <gmpxx.h>
#include <mpfr.h>

namespace spectra {

// Thin RAII owner of an mpfr_t. Binary operations round to nearest at the
// larger of the operand precisions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64);
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(const mpz_class& v, mpfr_prec_t prec);
    BigFloat(const mpq_class& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    // Changes precision, keeping the value rounded to nearest.
    void set_prec(mpfr_prec_t prec);

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // round(x * 2^k)
    mpz_class scaled_round(long k) const;
    // Binary exponent, or a very negative number for zero.
    long exponent() const;
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    BigFloat operator-() const;
    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

private:
    mpfr_t v_;
};

BigFloat hypot(const BigFloat& a, const BigFloat& b);

struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}

    void set_prec(mpfr_prec_t prec)
    {
        re.set_prec(prec);
        im.set_prec(prec);
    }
    // Largest exponent of the two components.
    long exponent() const;
    bool is_zero() const { return re.is_zero() && im.is_zero(); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
};

}  // namespace spectra
