#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spectra {

// Integer polynomial with coefficients in ascending degree order. The zero
// polynomial has an empty coefficient vector and degree -1; every other value
// has a nonzero leading coefficient.
class IntPolynomial {
public:
    IntPolynomial() = default;
    explicit IntPolynomial(std::vector<mpz_class> coeffs);
    IntPolynomial(std::initializer_list<long> coeffs);

    static IntPolynomial constant(const mpz_class& c);
    static IntPolynomial monomial(const mpz_class& c, unsigned k);

    // Accepts "-1,-1,0,0,1" (ascending) or "x^4 - x - 1".
    static IntPolynomial parse(std::string_view text);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& leading() const;
    mpz_class coeff(std::size_t i) const;
    const mpz_class& constant_term() const;

    mpz_class content() const;
    // Divides out the content and makes the leading coefficient positive.
    IntPolynomial primitive() const;
    IntPolynomial derivative() const;
    // p(-x)
    IntPolynomial reflect() const;
    // p(x^m)
    IntPolynomial inflate(unsigned m) const;
    // p(c x)
    IntPolynomial scale_argument(const mpz_class& c) const;

    mpz_class eval(const mpz_class& x) const;
    mpq_class eval(const mpq_class& x) const;
    int sign_at(const mpq_class& x) const;

    bool is_height_one() const;

    // Canonical symbolic form, descending powers.
    std::string to_string() const;
    std::string to_csv() const;

    IntPolynomial operator-() const;
    IntPolynomial& operator+=(const IntPolynomial& o);
    IntPolynomial& operator-=(const IntPolynomial& o);
    IntPolynomial& operator*=(const mpz_class& c);

    friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
    friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
    friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
    friend IntPolynomial operator*(IntPolynomial a, const mpz_class& c) { return a *= c; }
    friend bool operator==(const IntPolynomial& a, const IntPolynomial& b) { return a.coeffs_ == b.coeffs_; }

private:
    void trim();
    std::vector<mpz_class> coeffs_;
};

// Rational polynomial division a = q*b + r; b must be nonzero.
struct RationalDivision {
    std::vector<mpq_class> quotient;
    std::vector<mpq_class> remainder;
};
RationalDivision divide(const IntPolynomial& a, const IntPolynomial& b);

// Clears denominators and content.
IntPolynomial primitive_from_rational(const std::vector<mpq_class>& c);

bool divides(const IntPolynomial& b, const IntPolynomial& a);
// Exact quotient a/b over the integers; throws std::domain_error if b does not
// divide a in Z[x].
IntPolynomial divexact(const IntPolynomial& a, const IntPolynomial& b);

// Primitive gcd with positive leading coefficient; gcd(0, 0) = 0.
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

IntPolynomial squarefree_part(const IntPolynomial& p);
bool is_squarefree(const IntPolynomial& p);
// Yun decomposition: element i is the product of the irreducible factors of
// multiplicity exactly i + 1 (constant 1 when there are none).
std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial& p);

// Coefficient reversal x^deg p(1/x); requires p(0) != 0.
IntPolynomial reverse(const IntPolynomial& p);

// Primitive polynomial whose roots are the squares of the roots of p.
IntPolynomial graeffe(const IntPolynomial& p);

struct PowerStructure {
    unsigned m = 1;
    IntPolynomial inner;  // inner.inflate(m) == p
};
PowerStructure detect_power_structure(const IntPolynomial& p);

// True iff p has a root pair (r, -r) with r != 0.
bool negation_conjugate_test(const IntPolynomial& p);

// Primitive integer polynomial of degree d(d-1)/2 whose roots are the
// products r_i r_j (i < j) of the roots of p.
IntPolynomial pair_product_polynomial(const IntPolynomial& p, unsigned degree_cap = 500);

IntPolynomial cyclotomic(unsigned n);

// Strips factors of x.
IntPolynomial remove_zero_roots(const IntPolynomial& p);

}  // namespace spectra
