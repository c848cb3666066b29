#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/attractor.hpp"
#include "spectra/counting.hpp"

#include <complex>
#include <random>
#include <sstream>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

Lambda ex6_lambda()
{
    return Lambda::algebraic(
        AlgebraicNumber::nearest_root(P("x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1"), 0.02625, 0.7414));
}

Lambda ex4_lambda()
{
    return Lambda::algebraic(
        AlgebraicNumber::nearest_root(P("x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1"), 0.3741, 0.52404));
}

// Lower bound on |1 + sum_{j>=1} b_j l^j| over b_j in {-1,0,1}: the minimum over
// words of length k minus the tail; positive means the two copies are disjoint.
double numeric_separation(std::complex<double> l, int k)
{
    double r = std::abs(l);
    double tail = std::pow(r, k + 1) / (1 - r);
    std::vector<std::complex<double>> v{1};
    std::complex<double> pw = l;
    for (int j = 1; j <= k; ++j, pw *= l) {
        std::vector<std::complex<double>> next;
        next.reserve(v.size() * 3);
        for (auto x : v)
            for (int b = -1; b <= 1; ++b)
                next.push_back(x + static_cast<double>(b) * pw);
        v.swap(next);
    }
    double best = 1e300;
    for (auto x : v)
        best = std::min(best, std::abs(x));
    return best - tail;
}

}  // namespace

TEST_CASE("real parameters")
{
    ConnectivityResult r = connectivity(Lambda::exact(mpq_class(2, 5)));
    CHECK(r.verdict == Connectivity::Disconnected);
    CHECK(std::abs(r.margin - 1.0 / 3) < 1e-12);
    CHECK(connectivity(Lambda::exact(mpq_class(7, 10))).verdict == Connectivity::Connected);
    CHECK(connectivity(Lambda::exact(mpq_class(-7, 10))).verdict == Connectivity::Connected);
    CHECK(connectivity(Lambda::exact(mpq_class(1, 2))).verdict == Connectivity::Connected);
    CHECK_THROWS(connectivity(Lambda::exact(mpq_class(3, 2))));
}

TEST_CASE("disconnected verdicts agree with a numeric separation bound")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.6, 0.6);
    int checked = 0;
    for (int t = 0; t < 40; ++t) {
        mpq_class re(static_cast<int>(u(rng) * 100), 100), im(static_cast<int>(u(rng) * 100), 100);
        std::complex<double> l(re.get_d(), im.get_d());
        if (std::abs(l) >= 0.62 || std::abs(l) < 0.05)
            continue;
        double sep = numeric_separation(l, 12);
        ConnectivityResult r = connectivity(Lambda::exact(re, im), 30);
        if (sep > 1e-9) {
            CHECK_MESSAGE(r.verdict == Connectivity::Disconnected, l);
            ++checked;
        }
        if (r.verdict == Connectivity::Disconnected)
            CHECK(numeric_separation(l, 13) > -1e-9);
    }
    CHECK(checked > 5);
}

TEST_CASE("algebraic parameters with a height-one relation are connected")
{
    for (Lambda l : {ex6_lambda(), ex4_lambda(),
                     Lambda::algebraic(AlgebraicNumber::largest_real_root(reverse(P("x^4 - x - 1"))))}) {
        ConnectivityResult r = connectivity(l);
        REQUIRE(r.verdict == Connectivity::Connected);
        REQUIRE(!r.witness.empty());
        CHECK(r.witness.front() == 1);
        std::vector<mpz_class> c(r.witness.begin(), r.witness.end());
        CHECK(l.algebraic()->is_root_of(IntPolynomial(c)));
    }
}

TEST_CASE("serial and parallel search agree")
{
    for (auto [re, im] : {std::pair{mpq_class(1, 2), mpq_class(1, 2)}, std::pair{mpq_class(3, 10), mpq_class(3, 10)},
                          std::pair{mpq_class(0), mpq_class(3, 5)}}) {
        ConnectivityResult s = connectivity(Lambda::exact(re, im), 18, Exec::Serial);
        ConnectivityResult p = connectivity(Lambda::exact(re, im), 18, Exec::Parallel);
        CHECK(s.verdict == p.verdict);
        CHECK(s.witness == p.witness);
    }
    CHECK(connectivity(Lambda::exact(mpq_class(3, 5) * 0, mpq_class(3, 5))).verdict == Connectivity::Disconnected);
}

TEST_CASE("interior criterion")
{
    Lambda l6 = ex6_lambda();
    CHECK(interior_criterion(l6));
    CHECK(!interior_criterion(Lambda::exact(mpq_class(4, 5))));
    CHECK(interior_criterion(Lambda::exact(0, mpq_class(4, 5))));
    CHECK(!interior_criterion(Lambda::exact(mpq_class(1, 2), mpq_class(1, 2))));
    CHECK(!interior_criterion(Lambda::exact(mpq_class(1, 2))));
    // Boundary cases decided exactly.
    CHECK(interior_criterion(Lambda::algebraic(AlgebraicNumber::nearest_root(P("2x^2 + 1"), 0, 0.707))));
    CHECK(interior_criterion(Lambda::algebraic(AlgebraicNumber::nearest_root(P("4x^2 - 2x + 3"), 0.25, 0.83))));
    CHECK(interior_criterion(Lambda::algebraic(AlgebraicNumber::nearest_root(P("4x^2 + 2x + 3"), -0.25, 0.83))));
    CHECK(!interior_criterion(Lambda::algebraic(AlgebraicNumber::nearest_root(P("x^2 + 1"), 0, 1))));
}

TEST_CASE("interior criterion is symmetric under conjugation and negation")
{
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<int> u(-100, 100);
    for (int t = 0; t < 200; ++t) {
        mpq_class re(u(rng), 100), im(u(rng), 100);
        bool a = interior_criterion(Lambda::exact(re, im));
        CHECK(a == interior_criterion(Lambda::exact(re, -im)));
        CHECK(a == interior_criterion(Lambda::exact(-re, im)));
        double m = re.get_d() * re.get_d() + im.get_d() * im.get_d();
        CHECK(a == (m >= 0.5 && m < 1 && std::abs(re.get_d()) <= m - 0.5));
    }
}

TEST_CASE("counting lower bound")
{
    LowerBound b6 = zn_lower_bound(ex6_lambda(), 10);
    CHECK(b6.clause == 2);
    CHECK(std::abs(to_double(b6.value.mid()) - 712.540698267) < 1e-6);
    CHECK(to_double(b6.value.hi) <= count_distinct(P("x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1"), 10));

    LowerBound b4 = zn_lower_bound(ex4_lambda(), 10);
    CHECK(b4.clause == 1);
    CHECK(to_double(b4.value.hi) <= count_distinct(P("x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1"), 10));
    double r = std::abs(ex4_lambda().approx());
    CHECK(std::abs(to_double(b4.value.mid()) - std::pow(r, -11)) < 1e-6);

    CHECK_THROWS_AS(zn_lower_bound(Lambda::exact(mpq_class(1, 2)), 10), NotApplicable);
    CHECK_THROWS_AS(zn_lower_bound(Lambda::exact(mpq_class(1, 5), mpq_class(1, 5)), 10), NotApplicable);
}

TEST_CASE("raster parity and format")
{
    Lambda l = ex6_lambda();
    Raster s = rasterize(l, 14, 200, false, Exec::Serial);
    Raster p = rasterize(l, 14, 200, false, Exec::Parallel);
    CHECK(s.data == p.data);
    CHECK(s.marked() > 0);
    std::ostringstream out;
    write_pgm(s, out);
    std::string pgm = out.str();
    CHECK(pgm.rfind("P5\n200 200\n255\n", 0) == 0);
    CHECK(pgm.size() == std::string("P5\n200 200\n255\n").size() + 200 * 200);
    CHECK_THROWS_AS(rasterize(l, 31, 200), WorkCapExceeded);
}

TEST_CASE("raster frames are related by the affine map z -> 2z - sum lambda^k")
{
    // The {-1,1} sums are 2s - S for the {0,1} sums s; the two frames are
    // built so that both pictures coincide up to the truncated tail.
    for (Lambda l : {ex6_lambda(), Lambda::exact(mpq_class(3, 5), mpq_class(1, 2))}) {
        Raster a = rasterize(l, 16, 300, false);
        Raster b = rasterize(l, 16, 300, true);
        CHECK(std::abs(a.half_width * 2 - b.half_width) < 1e-12);
        // Truncation moves points by a fraction of a pixel: every marked pixel
        // of one picture has a marked neighbour in the other.
        auto near_marked = [](const Raster& r, int x, int y) {
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int xx = x + dx, yy = y + dy;
                    if (xx >= 0 && yy >= 0 && xx < r.pixels && yy < r.pixels && r.data[yy * r.pixels + xx])
                        return true;
                }
            return false;
        };
        std::size_t missing = 0;
        for (int y = 0; y < a.pixels; ++y)
            for (int x = 0; x < a.pixels; ++x) {
                if (a.data[y * a.pixels + x] && !near_marked(b, x, y))
                    ++missing;
                if (b.data[y * b.pixels + x] && !near_marked(a, x, y))
                    ++missing;
            }
        CHECK(missing == 0);
    }
}

TEST_CASE("combined analysis")
{
    AttractorAnalysis a = analyze_attractor(ex6_lambda(), 40, 10);
    CHECK(a.connectivity.verdict == Connectivity::Connected);
    CHECK(a.interior);
    REQUIRE(a.bound);
    CHECK(a.bound->clause == 2);
    AttractorAnalysis b = analyze_attractor(Lambda::exact(mpq_class(2, 5)), 40, 10);
    CHECK(!b.bound);
}
