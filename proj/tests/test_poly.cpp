#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/irreducible.hpp"
#include "spectra/poly.hpp"

#include <complex>
#include <random>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

IntPolynomial random_poly(std::mt19937_64& rng, int deg, int h)
{
    std::uniform_int_distribution<int> c(-h, h);
    std::vector<mpz_class> v(deg + 1);
    for (auto& x : v)
        x = c(rng);
    v.back() = 1 + (c(rng) & 1);
    return IntPolynomial(v);
}

}  // namespace

TEST_CASE("parse accepts symbolic and coefficient-list forms")
{
    CHECK(P("x^4 - x - 1") == IntPolynomial{-1, -1, 0, 0, 1});
    CHECK(P("-1,-1,0,0,1") == IntPolynomial{-1, -1, 0, 0, 1});
    CHECK(P("2x^3 + 3*x - 7") == IntPolynomial{-7, 3, 0, 2});
    CHECK(P("x^2 + x^2") == IntPolynomial{0, 0, 2});
    CHECK(P("x^4 - x - 1").to_string() == "x^4 - x - 1");
    CHECK_THROWS(P("x^^2"));
    CHECK_THROWS(P("y + 1"));
}

TEST_CASE("to_string round-trips")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        IntPolynomial p = random_poly(rng, 1 + i % 9, 5);
        CHECK(P(p.to_string().c_str()) == p);
        CHECK(P(p.to_csv().c_str()) == p);
    }
}

TEST_CASE("arithmetic and division")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
        IntPolynomial a = random_poly(rng, 1 + i % 5, 4), b = random_poly(rng, 1 + i % 4, 4);
        IntPolynomial ab = a * b;
        CHECK(ab.degree() == a.degree() + b.degree());
        CHECK(divides(b, ab));
        CHECK(divexact(ab, b) == a);
        for (long x = -3; x <= 3; ++x)
            CHECK(ab.eval(mpz_class(x)) == a.eval(mpz_class(x)) * b.eval(mpz_class(x)));
        IntPolynomial g = gcd(ab, a * a);
        CHECK(divides(a.primitive(), g));
    }
}

TEST_CASE("squarefree part and decomposition")
{
    IntPolynomial a = P("x^2 - x - 1"), b = P("x + 2");
    IntPolynomial p = a * a * a * b;
    CHECK(squarefree_part(p) == (a * b).primitive());
    CHECK(!is_squarefree(p));
    CHECK(is_squarefree(a * b));
    auto parts = squarefree_decomposition(p);
    IntPolynomial back = IntPolynomial::constant(1);
    for (std::size_t i = 0; i < parts.size(); ++i)
        for (std::size_t k = 0; k <= i; ++k)
            back = back * parts[i];
    CHECK(back.primitive() == p.primitive());
}

TEST_CASE("reverse, reflect, inflate, remove_zero_roots")
{
    IntPolynomial p = P("x^4 - x - 1");
    CHECK(reverse(p) == P("-x^4 - x^3 + 1"));
    CHECK(p.reflect() == P("x^4 + x - 1"));
    CHECK(p.inflate(3) == P("x^12 - x^3 - 1"));
    CHECK(remove_zero_roots(P("x^5 - x^3")) == P("x^2 - 1"));
}

TEST_CASE("graeffe has the squared roots")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        IntPolynomial p = random_poly(rng, 2 + i % 5, 3);
        IntPolynomial g = graeffe(p);
        CHECK(g.degree() == p.degree());
        // g(x^2) = +-p(x)p(-x) up to content
        IntPolynomial lhs = g.inflate(2), rhs = (p * p.reflect()).primitive();
        CHECK((lhs == rhs || lhs == -rhs));
    }
}

TEST_CASE("power structure")
{
    auto s = detect_power_structure(P("x^12 - x^9 - x^6 - x^3 + 1"));
    CHECK(s.m == 3);
    CHECK(s.inner == P("x^4 - x^3 - x^2 - x + 1"));
    CHECK(detect_power_structure(P("x^4 - x^2 - 1")).m == 2);
    CHECK(detect_power_structure(P("x^4 - x - 1")).m == 1);
}

TEST_CASE("negation conjugates")
{
    CHECK(negation_conjugate_test(P("x^4 - x^2 - 1")));
    CHECK(negation_conjugate_test(P("x^3 - x^2 - 4x + 4")));
    CHECK(!negation_conjugate_test(P("x^4 - x - 1")));
    CHECK(!negation_conjugate_test(P("x^2 - x - 1")));
}

TEST_CASE("pair products match a numeric oracle")
{
    IntPolynomial p = P("x^4 - x - 1");
    IntPolynomial pp = pair_product_polynomial(p);
    CHECK(pp.degree() == 6);
    // Durand-Kerner roots of p, then pp at every pairwise product.
    int d = p.degree();
    std::vector<std::complex<double>> z(d);
    for (int i = 0; i < d; ++i)
        z[i] = std::pow(std::complex<double>(0.4, 0.9), i);
    auto ev = [&](const IntPolynomial& q, std::complex<double> x) {
        std::complex<double> s = 0;
        for (int k = q.degree(); k >= 0; --k)
            s = s * x + q.coeff(k).get_d();
        return s;
    };
    for (int it = 0; it < 500; ++it)
        for (int i = 0; i < d; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            z[i] -= ev(p, z[i]) / den;
        }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            CHECK(std::abs(ev(pp, z[i] * z[j])) < 1e-8);
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclotomic(1) == P("x - 1"));
    CHECK(cyclotomic(6) == P("x^2 - x + 1"));
    CHECK(cyclotomic(12) == P("x^4 - x^2 + 1"));
    IntPolynomial prod = IntPolynomial::constant(1);
    for (unsigned d : {1u, 2u, 3u, 4u, 6u, 12u})
        prod = prod * cyclotomic(d);
    CHECK(prod == P("x^12 - 1"));
}

TEST_CASE("height one")
{
    CHECK(P("x^4 - x - 1").is_height_one());
    CHECK(!P("2x - 1").is_height_one());
}

TEST_CASE("irreducibility evidence")
{
    for (const char* s :
         {"x^4 - x - 1", "x^2 - x - 1", "x^5 - x^4 - x^2 - x + 1", "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1"}) {
        auto c = check_irreducible(P(s));
        CHECK_MESSAGE(c.proven, s);
        CHECK(!c.reducible);
    }
    CHECK(check_irreducible(P("x^4 + x^2 + 1")).reducible);
    CHECK(check_irreducible(P("x^3 - 8")).reducible);
    CHECK(!check_irreducible(P("x^4 + 1")).reducible);
    CHECK(check_irreducible(P("x^4 + 1")).proven);
    CHECK(factor_degrees_mod(P("x^4 + 1"), 3) == std::vector<int>{2, 2});
}
