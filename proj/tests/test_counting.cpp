#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/counting.hpp"
#include "spectra/errors.hpp"

#include <complex>
#include <random>
#include <set>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

// Distinct residues mod a monic f of all 0/1 words, by direct reduction.
std::uint64_t brute_count(const IntPolynomial& f, int n)
{
    int d = f.degree();
    std::vector<std::vector<long long>> pw;  // x^k mod f
    std::vector<long long> cur(d, 0);
    cur[0] = d > 0 ? 1 : 0;
    for (int k = 0; k <= n; ++k) {
        pw.push_back(cur);
        std::vector<long long> next(d, 0);
        for (int i = 0; i + 1 < d; ++i)
            next[i + 1] = cur[i];
        long long top = cur[d - 1];
        for (int i = 0; i < d; ++i)
            next[i] -= top * f.coeff(i).get_si();
        cur = next;
    }
    std::set<std::vector<long long>> seen;
    for (std::uint64_t w = 0; w < (std::uint64_t(1) << (n + 1)); ++w) {
        std::vector<long long> v(d, 0);
        for (int k = 0; k <= n; ++k)
            if (w >> k & 1)
                for (int i = 0; i < d; ++i)
                    v[i] += pw[k][i];
        seen.insert(v);
    }
    return seen.size();
}

std::uint64_t fib(int k)
{
    std::uint64_t a = 0, b = 1;
    for (int i = 0; i < k; ++i) {
        std::uint64_t t = a + b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

TEST_CASE("golden ratio counts are Fibonacci numbers minus one")
{
    IntPolynomial f = P("x^2 - x - 1");
    auto s = count_series(f, 30);
    for (int n = 0; n <= 30; ++n)
        CHECK(s[n] == fib(n + 4) - 1);
    CHECK(count_distinct(f, 2) == 7);
}

TEST_CASE("counts against direct reduction")
{
    for (const char* poly : {"x^4 - x - 1", "x^3 - x - 1", "x^5 - x^4 - x^2 - x + 1", "x^4 + x^2 + 1",
                             "x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1", "x^3 - 2"}) {
        IntPolynomial f = P(poly);
        for (int n : {0, 1, 5, 11, 14}) {
            std::uint64_t expected = brute_count(f, n);
            CHECK_MESSAGE(count_distinct(f, n, DigitSet::zero_one(), {}, Exec::Serial) == expected, poly, " n=", n);
            CHECK(count_distinct(f, n, DigitSet::zero_one(), {}, Exec::Parallel) == expected);
        }
    }
}

TEST_CASE("series agrees with single counts and satisfies the invariants")
{
    IntPolynomial f = P("x^4 - x - 1");
    auto s = count_series(f, 18, DigitSet::zero_one(), {}, Exec::Serial);
    auto p = count_series(f, 18, DigitSet::zero_one(), {}, Exec::Parallel);
    CHECK(s == p);
    for (int n : {3, 10, 18})
        CHECK(s[n] == count_distinct(f, n));
    CHECK_NOTHROW(check_count_invariants(s, 2));
    std::vector<std::uint64_t> bad{2, 4, 3};
    CHECK_THROWS_AS(check_count_invariants(bad, 2), InvariantViolation);
}

TEST_CASE("transcendental-like parameters give all distinct sums")
{
    // A root of x^3 - 2 has no relation with 0/1 coefficients of degree < 3.
    CHECK(count_distinct(P("x^3 - 2"), 2) == 8);
}

TEST_CASE("numeric counting agrees with exact counting")
{
    for (const char* poly : {"x^4 - x - 1", "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1", "x^2 - x - 1"}) {
        IntPolynomial f = P(poly);
        auto sys = std::make_shared<RootSystem>(f);
        for (std::size_t i = 0; i < sys->size(); ++i)
            CHECK(count_distinct_numeric(AlgebraicNumber(sys, i), 10) == count_distinct(f, 10));
    }
    CHECK(count_distinct_numeric(std::complex<double>(0.5, 0), 5, 1e-9) == 64);
}

TEST_CASE("inversion check on seeded random height-one polynomials")
{
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> deg(1, 8), c(-1, 1), sign(0, 1);
    for (int t = 0; t < 50; ++t) {
        int d = deg(rng);
        std::vector<mpz_class> v(d + 1);
        for (auto& x : v)
            x = c(rng);
        v[0] = sign(rng) ? 1 : -1;
        v[d] = sign(rng) ? 1 : -1;
        IntPolynomial f(v);
        CHECK_MESSAGE(verify_inversion(f, 1 + t % 10), f.to_string());
    }
}

TEST_CASE("power identity")
{
    for (int k = 1; k <= 3; ++k) {
        PowerIdentity id = power_count_identity(P("x^12 - x^9 - x^6 - x^3 + 1"), k);
        CHECK(id.m == 3);
        CHECK(id.holds());
    }
    for (int k = 1; k <= 4; ++k)
        CHECK(power_count_identity(P("x^4 + x^2 + 1"), k).holds());
    CHECK_THROWS_AS(power_count_identity(P("x^4 - x - 1"), 2), NoPowerStructure);
}

TEST_CASE("growth ratio")
{
    IntPolynomial f = P("x^2 - x - 1");
    AlgebraicNumber q = AlgebraicNumber::largest_real_root(f);
    CountSeries s = growth_ratio(f, q, 24);
    REQUIRE(s.counts.size() == 25);
    // z_n / phi^n tends to phi^4 / sqrt 5.
    CHECK(std::abs(to_double(s.ratios[24].mid()) - 3.0652475842498528) < 1e-4);
    CHECK(!s.divergence_diagnostic);
}
