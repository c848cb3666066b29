#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/criteria.hpp"
#include "spectra/fixtures.hpp"

#include <algorithm>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

Verdict run(const char* s)
{
    IntPolynomial f = P(s);
    return verdict(f, select_root(f));
}

}  // namespace

TEST_CASE("worked examples")
{
    REQUIRE(fixtures().size() == 8);
    for (const Fixture& fx : fixtures()) {
        FixtureResult r = run_fixture(fx);
        for (const CaseResult& c : r.cases) {
            CHECK_MESSAGE(c.conclusion_ok, c.expected.poly);
            CHECK_MESSAGE(c.rules_ok, c.expected.poly);
            for (const ProbeResult& p : c.probes)
                CHECK_MESSAGE(p.pass, c.expected.poly, " ", p.probe.name, " measured ", p.measured);
        }
    }
}

TEST_CASE("Pisot numbers are discrete")
{
    for (const char* s : {"x^2 - x - 1", "x^3 - x - 1", "x^3 - x^2 - 1"}) {
        Verdict v = run(s);
        CHECK(v.conclusion == Conclusion::Discrete);
        CHECK(v.rule_ids() == std::vector<std::string>{"R1"});
        CHECK(!v.l_zero);
        CHECK(!v.L_zero);
    }
}

TEST_CASE("square root of the golden ratio leaves L open")
{
    // -q is a conjugate and +-i/q are purely imaginary conjugates; the route to
    // L(q) = 0 through the product rule would need f to be a polynomial in x^4.
    Verdict v = run("x^4 - x^2 - 1");
    CHECK(v.conclusion == Conclusion::DenseL0);
    CHECK(v.l_zero);
    CHECK(!v.L_zero);
    CHECK(v.q_below_sqrt2);
    for (const char* id : {"R2", "R4", "R6", "R7"})
        CHECK_MESSAGE(v.fired(id), id);
    for (const RuleFiring& r : v.rules)
        CHECK(!r.gives_L);
    CHECK(!v.notes.empty());
}

TEST_CASE("product rule gives L when the power structure allows it")
{
    // Ex5 is a polynomial in x^3 with q|alpha| = 1 for non-real alpha.
    Verdict v = run("x^12 - x^9 - x^6 - x^3 + 1");
    CHECK(v.conclusion == Conclusion::DenseL0AndL0);
    CHECK(v.fired("R4"));
    CHECK(v.L_zero);
}

TEST_CASE("L is only claimed below sqrt 2")
{
    for (const Fixture& fx : fixtures())
        for (const FixtureCase& c : fx.cases) {
            Verdict v = run(c.poly.c_str());
            if (v.L_zero)
                CHECK(v.q_below_sqrt2);
            CHECK(v.q_below_sqrt2 == (to_double(v.q.mid()) < 1.4142135623730951));
            CHECK((v.conclusion == Conclusion::DenseL0AndL0) == v.L_zero);
        }
}

TEST_CASE("Salem numbers are inconclusive")
{
    Verdict v = run("x^4 - x^3 - x^2 - x + 1");
    CHECK(v.conclusion == Conclusion::Inconclusive);
    CHECK(v.rules.empty());
    CHECK(!v.notes.empty());
}

TEST_CASE("squared parameter is Pisot")
{
    // x^6 - x^4 - x^2 - 1 = g(x^2) with g the tribonacci polynomial, so q^2 is Pisot.
    Verdict v = run("x^6 - x^4 - x^2 - 1");
    CHECK(v.fired("R6"));
    CHECK(v.l_zero);
}

TEST_CASE("root selection")
{
    IntPolynomial f = P("x^4 - x - 1");
    AlgebraicNumber q = select_root(f);
    CHECK(std::abs(to_double(q.box().re) - 1.2207440846) < 1e-9);
    AlgebraicNumber r = select_root(f, std::nullopt, std::make_pair(mpq_class(6, 5), mpq_class(5, 4)));
    CHECK(r.index() == q.index());
    CHECK(select_root(f, q.index()).index() == q.index());
    CHECK_THROWS(select_root(f, std::size_t{0}));
    CHECK_THROWS(select_root(f, std::nullopt, std::make_pair(mpq_class(2), mpq_class(3))));
    CHECK_THROWS(select_root(P("x^2 - 5")));
}

TEST_CASE("crosscheck trend")
{
    IntPolynomial f = P("x^2 - x - 1");
    AlgebraicNumber q = select_root(f);
    Verdict v = verdict(f, q);
    Crosscheck c = empirical_crosscheck(v, q, 12);
    REQUIRE(c.rows.size() == 12);
    CHECK(c.trend == "constant");
    CHECK(!c.tension);

    IntPolynomial g = P("x^4 - x - 1");
    AlgebraicNumber q1 = select_root(g);
    Crosscheck d = empirical_crosscheck(verdict(g, q1), q1, 14);
    CHECK(d.trend == "nonincreasing");
    CHECK(!d.tension);
    for (std::size_t i = 1; i < d.rows.size(); ++i)
        CHECK(d.rows[i].min_lambda.lo <= d.rows[i - 1].min_lambda.hi);
}

TEST_CASE("verdicts are deterministic across schedules")
{
    VerdictOptions serial;
    serial.exec = Exec::Serial;
    for (const char* s : {"x^4 - x - 1", "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1"}) {
        IntPolynomial f = P(s);
        AlgebraicNumber q = select_root(f);
        Verdict a = verdict(f, q, serial), b = verdict(f, q);
        CHECK(a.rule_ids() == b.rule_ids());
        CHECK(a.conclusion == b.conclusion);
        CHECK(a.notes == b.notes);
    }
}
