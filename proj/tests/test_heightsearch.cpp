#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/heightsearch.hpp"

#include <algorithm>
#include <complex>
#include <random>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

const char* kEx7 = "x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1";

// Smallest degree <= dmax of a height-one multiple of f, or -1; plain enumeration.
int brute_min_degree(const IntPolynomial& f, int dmax)
{
    for (int D = std::max(f.degree(), 0); D <= dmax; ++D) {
        std::vector<mpz_class> c(D + 1);
        std::size_t inner = 1;
        for (int i = 1; i < D; ++i)
            inner *= 3;
        for (int ends = 0; ends < 4; ++ends)
            for (std::size_t w = 0; w < inner; ++w) {
                c[0] = ends & 1 ? 1 : -1;
                c[D] = ends & 2 ? 1 : -1;
                std::size_t x = w;
                for (int i = 1; i < D; ++i, x /= 3)
                    c[i] = static_cast<int>(x % 3) - 1;
                if (divides(f, IntPolynomial(c)))
                    return D;
            }
    }
    return -1;
}

double numeric_min_triple(const IntPolynomial& p)
{
    int d = p.degree();
    double lc = p.leading().get_d();
    std::vector<std::complex<double>> z(d);
    for (int i = 0; i < d; ++i)
        z[i] = std::pow(std::complex<double>(0.4, 0.9), i);
    auto ev = [&](std::complex<double> x) {
        std::complex<double> s = 0;
        for (int k = d; k >= 0; --k)
            s = s * x + p.coeff(k).get_d() / lc;
        return s;
    };
    for (int it = 0; it < 3000; ++it)
        for (int i = 0; i < d; ++i) {
            std::complex<double> den = 1;
            for (int j = 0; j < d; ++j)
                if (j != i)
                    den *= z[i] - z[j];
            z[i] -= ev(z[i]) / den;
        }
    std::vector<double> m;
    for (auto r : z)
        m.push_back(std::abs(r));
    std::sort(m.begin(), m.end());
    return m[0] * m[1] * m[2];
}

}  // namespace

TEST_CASE("height-one polynomials are their own witness")
{
    for (const char* s : {"x^2 - x - 1", "x^4 - x - 1", "x^3 - x - 1"}) {
        HeightOneResult r = find_height_one_multiple(P(s), 20);
        REQUIRE(r.status == HeightStatus::Found);
        CHECK(*r.witness == P(s));
        CHECK(*r.cofactor == P("1"));
    }
}

TEST_CASE("smallest degree agrees with enumeration")
{
    std::vector<IntPolynomial> fs = {P("x^3 + 2x^2 + 2x + 1"), P("x^2 + 2x + 1"), P("x^4 - 2x^2 + 1"),
                                     P("x^3 - 2x^2 + 2x - 1"), P("x^4 + 2x^3 + 3x^2 + 2x + 1")};
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<int> c(-1, 1);
    for (int t = 0; t < 6; ++t) {
        IntPolynomial a{1, c(rng), 1}, b{-1, c(rng), c(rng), 1};
        fs.push_back(a * b);
    }
    for (const IntPolynomial& f : fs) {
        int expected = brute_min_degree(f, 10);
        HeightOneResult s = find_height_one_multiple(f, 10, {}, Exec::Serial);
        HeightOneResult p = find_height_one_multiple(f, 10, {}, Exec::Parallel);
        if (expected < 0) {
            CHECK_MESSAGE(s.status != HeightStatus::Found, f.to_string());
            continue;
        }
        REQUIRE_MESSAGE(s.status == HeightStatus::Found, f.to_string());
        CHECK(s.witness->degree() == expected);
        CHECK(s.witness->is_height_one());
        CHECK(f * *s.cofactor == *s.witness);
        REQUIRE(p.status == HeightStatus::Found);
        CHECK(*p.witness == *s.witness);
    }
}

TEST_CASE("non-unit end coefficients have no height-one multiple")
{
    for (const char* s : {"x - 3", "2x^2 - 1", "x^3 - 2"}) {
        HeightOneResult r = find_height_one_multiple(P(s), 20);
        CHECK(r.status == HeightStatus::NoneUpTo);
        CHECK(r.proof);
    }
}

TEST_CASE("work cap")
{
    Budget b;
    b.node_budget = 5;
    CHECK_THROWS_AS(find_height_one_multiple(P("x^6 + 2x^3 + 1"), 24, b), WorkCapExceeded);
    b.node_budget = 1000;
    CHECK(find_height_one_multiple(P("x^6 + 2x^3 + 1"), 24, b).status == HeightStatus::Found);
}

TEST_CASE("no height-one multiple for the squared-root polynomial of the non-Perron example")
{
    HeightOneResult r = find_height_one_multiple(squarefree_part(graeffe(P(kEx7))), 20);
    CHECK(r.status == HeightStatus::NoneUpTo);
    CHECK(r.dmax == 20);
}

TEST_CASE("triple product filter")
{
    auto ex7 = P(kEx7);
    auto cert = three_root_filter(reverse(graeffe(ex7)));
    REQUIRE(cert);
    CHECK(std::abs(to_double(cert->product.mid()) - 0.226024) < 1e-4);
    CHECK(cert->roots.size() == 3);
    CHECK(cert->product_squared.hi < kTripleBoundSquared);
    // Height-one polynomials never trigger the filter.
    CHECK(!three_root_filter(P("x^4 - x - 1")));
    CHECK(!three_root_filter(ex7));
    // Two distinct nonzero roots only.
    CHECK(!min_triple_product(P("x^2 - x - 1")));
}

TEST_CASE("triple product against a numeric oracle")
{
    for (const char* s : {"x^4 - x - 1", "x^5 - x^4 - x^2 - x + 1", "3x^4 - x^3 + 2x - 1", "x^6 + x^5 - 2x^2 + 5"}) {
        auto cert = min_triple_product(P(s), 60);
        REQUIRE(cert);
        CHECK_MESSAGE(std::abs(to_double(cert->product.mid()) - numeric_min_triple(P(s))) < 1e-9, s);
    }
}

TEST_CASE("sampler is seeded and schedule-independent")
{
    SamplerResult a = claim_sampler(10, 400, 7, Exec::Serial);
    SamplerResult b = claim_sampler(10, 400, 7, Exec::Parallel);
    CHECK(a.witness == b.witness);
    CHECK(a.min_product.lo == b.min_product.lo);
    CHECK(a.samples + a.skipped == 400);
    CHECK(a.min_product.lo * a.min_product.lo >= kTripleBoundSquared);
    SamplerResult c = claim_sampler(10, 400, 8, Exec::Parallel);
    CHECK(c.samples + c.skipped == 400);
}

TEST_CASE("exhaustive sampler")
{
    SamplerResult r = claim_exhaustive(3);
    CHECK(r.samples + r.skipped == 36);
    CHECK(std::abs(to_double(r.min_product.mid()) - 1.0) < 1e-12);
    SamplerResult r6 = claim_exhaustive(6, Exec::Parallel);
    SamplerResult s6 = claim_exhaustive(6, Exec::Serial);
    CHECK(r6.witness == s6.witness);
    CHECK(r6.min_product.lo * r6.min_product.lo >= kTripleBoundSquared);
}
