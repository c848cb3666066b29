#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/classify.hpp"

#include <cmath>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

NumberClass classify_largest(const char* s)
{
    AlgebraicNumber q = AlgebraicNumber::largest_real_root(P(s));
    return classify(q.defining(), q);
}

}  // namespace

TEST_CASE("Pisot numbers")
{
    for (const char* s : {"x^2 - x - 1", "x^3 - x - 1", "x^3 - x^2 - x - 1", "x^2 - 3x + 1"}) {
        NumberClass c = classify_largest(s);
        CHECK_MESSAGE(c.is_pisot, s);
        CHECK(c.is_perron);
        CHECK(!c.is_salem);
        CHECK(!c.is_anti_pisot);
        CHECK(c.minimality_verified);
    }
}

TEST_CASE("Salem numbers")
{
    NumberClass c = classify_largest("x^4 - x^3 - x^2 - x + 1");
    CHECK(c.is_salem);
    CHECK(!c.is_pisot);
    CHECK(c.is_perron);
    int on_circle = 0;
    for (const ConjugateInfo& ci : c.conjugates)
        if (ci.vs_one == Cmp::Equal) {
            ++on_circle;
            CHECK(!ci.tie_certificates.empty());
        }
    CHECK(on_circle == 2);
}

TEST_CASE("anti-Pisot and Perron")
{
    NumberClass c = classify_largest("x^4 - x - 1");
    CHECK(c.is_anti_pisot);
    CHECK(c.is_perron);
    CHECK(!c.is_pisot);
    REQUIRE(c.conjugates.size() == 3);
    int inside = 0;
    for (const ConjugateInfo& ci : c.conjugates)
        inside += ci.vs_one == Cmp::Less;
    CHECK(inside == 1);
    CHECK(c.margins.count("anti_pisot") == 1);
}

TEST_CASE("non-Perron")
{
    NumberClass c =
        classify_largest("x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1");
    CHECK(!c.is_perron);
    bool bigger = false;
    for (const ConjugateInfo& ci : c.conjugates)
        bigger |= ci.vs_q == Cmp::Greater;
    CHECK(bigger);
}

TEST_CASE("negative conjugate of equal modulus breaks Perron")
{
    // sqrt(phi): -sqrt(phi) is a conjugate with the same modulus.
    NumberClass c = classify_largest("x^4 - x^2 - 1");
    CHECK(!c.is_perron);
    bool tie = false;
    for (const ConjugateInfo& ci : c.conjugates)
        tie |= ci.vs_q == Cmp::Equal;
    CHECK(tie);
}

TEST_CASE("q times a conjugate modulus equal to one")
{
    NumberClass c = classify_largest("x^12 - x^9 - x^6 - x^3 + 1");
    int equal = 0;
    for (const ConjugateInfo& ci : c.conjugates)
        if (!ci.real && ci.product == Cmp::Equal)
            ++equal;
    CHECK(equal >= 2);
}

TEST_CASE("exact modulus tests")
{
    IntPolynomial salem = P("x^4 - x^3 - x^2 - x + 1");
    auto sys = std::make_shared<RootSystem>(salem);
    int ones = 0;
    for (std::size_t i = 0; i < sys->size(); ++i)
        ones += modulus_is_one(AlgebraicNumber(sys, i));
    CHECK(ones == 2);

    AlgebraicNumber i_root = AlgebraicNumber::nearest_root(P("x^2 + 1"), 0, 1);
    CHECK(modulus_is_one(i_root));
    CHECK(is_purely_imaginary(i_root));
    CHECK(squared_modulus_equals(i_root, 1));
    CHECK(!squared_modulus_equals(i_root, mpq_class(1, 2)));

    AlgebraicNumber half = AlgebraicNumber::nearest_root(P("2x^2 - 2x + 1"), 0.5, 0.5);  // (1 + i)/2
    CHECK(squared_modulus_equals(half, mpq_class(1, 2)));
    CHECK(!modulus_is_one(half));
    CHECK(!is_purely_imaginary(half));

    AlgebraicNumber im = AlgebraicNumber::nearest_root(P("x^4 - x^2 - 1"), 0, 0.786);
    CHECK(is_purely_imaginary(im));
    CHECK(!modulus_is_one(im));

    AlgebraicNumber r = AlgebraicNumber::largest_real_root(P("x^2 - 2"));
    CHECK(squared_modulus_equals(r, 2));
    CHECK(!squared_modulus_equals(r, 3));
}

TEST_CASE("pair product against an algebraic target")
{
    // Conjugates alpha of x^12 - x^9 - x^6 - x^3 + 1 with q|alpha| = 1 satisfy |alpha|^2 = 1/q^2.
    IntPolynomial f = P("x^12 - x^9 - x^6 - x^3 + 1");
    AlgebraicNumber q = AlgebraicNumber::largest_real_root(f);
    double qd = to_double(q.box().re);
    auto sys = q.system();
    int hits = 0;
    AlgebraicNumber inv_q2 = AlgebraicNumber::real_root_in(graeffe(reverse(f)), mpq_class(1 / (qd * qd) - 1e-6),
                                                            mpq_class(1 / (qd * qd) + 1e-6));
    for (std::size_t i = 0; i < sys->size(); ++i) {
        AlgebraicNumber a(sys, i);
        if (a.is_real())
            continue;
        if (conjugate_pair_product_equals(a, inv_q2))
            ++hits;
    }
    CHECK(hits >= 2);
}

TEST_CASE("certified comparison calls the tie test once")
{
    int ties = 0;
    mpq_class w(1);
    Cmp c = compare_certified([&] { return RInterval(-w, w); }, [&] { w /= 2; },
                              [&] { ++ties; return true; });
    CHECK(c == Cmp::Equal);
    CHECK(ties == 1);

    w = 1;
    c = compare_certified([&] { return RInterval(mpq_class(1, 1000) - w, mpq_class(1, 1000) + w); },
                          [&] { w /= 2; }, [&] { return false; });
    CHECK(c == Cmp::Greater);
}
