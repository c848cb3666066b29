#include "spectra/fixtures.hpp"

#include "spectra/heightsearch.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace spectra {

const std::vector<Fixture>& fixtures()
{
    using C = Conclusion;
    using K = ProbeKind;
    static const std::vector<Fixture> all = {
        {1,
         "anti-Pisot root of x^4 = x + 1",
         {{"x^4 - x - 1",
           C::DenseL0AndL0,
           {"R3", "R5"},
           {{"q", K::Q, 1.22074}, {"alpha", K::RootRe, -0.72449, -0.72449, 0}}}}},
        {2,
         "real small conjugate, not anti-Pisot",
         {{"x^5 - x^4 - x^2 - x + 1",
           C::DenseL0,
           {"R3"},
           {{"q", K::Q, 1.52626}, {"alpha", K::RootRe, 0.59509, 0.59509, 0}}}}},
        {3,
         "non-real small conjugate, q < sqrt 2",
         {{"x^5 - x^4 + x^2 - x - 1",
           C::DenseL0AndL0,
           {"R3"},
           {{"q", K::Q, 1.26278},
            {"|alpha|", K::Modulus, 0.74090},
            {"q|alpha|", K::QTimesModulus, 0.93559, -0.71319, 0.20072}}}}},
        {4,
         "non-real small conjugate, q > sqrt 2",
         {{"x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1",
           C::DenseL0,
           {"R3"},
           {{"q", K::Q, 1.52501},
            {"Re alpha", K::RootRe, 0.3741, 0.3741, 0.52404},
            {"Im alpha", K::RootIm, 0.52404, 0.3741, 0.52404},
            {"|alpha|", K::Modulus, 0.64387},
            {"1/q", K::InverseQ, 0.65574}}}}},
        {5,
         "cube root of a Salem number, q|alpha| = 1 for non-real alpha",
         {{"x^12 - x^9 - x^6 - x^3 + 1", C::DenseL0AndL0, {"R2", "R4"}, {{"q", K::Q, 1.19863}}}}},
        {6,
         "conjugate with interior attractor",
         {{"x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1",
           C::DenseL0,
           {"R7"},
           {{"q", K::Q, 1.5006},
            {"Re lambda", K::RootRe, 0.02625, 0.02625, 0.7414},
            {"Im lambda", K::RootIm, 0.7414, 0.02625, 0.7414},
            {"|lambda|^-2", K::InverseModulusSq, 1.81696, 0.02625, 0.7414}}}}},
        {7,
         "non-Perron: conjugates larger than q",
         {{"x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1",
           C::DenseL0AndL0,
           {"R2"},
           {{"q", K::Q, 1.22289},
            {"Re u", K::RootRe, -0.03958, -0.03958, 1.3109},
            {"Im u", K::RootIm, 1.3109, -0.03958, 1.3109},
            {"triple product", K::SquareTripleProduct, 0.226024}}}}},
        {8,
         "no criterion applies",
         {{"x^5 - x^4 - x^3 + x - 1",
           C::Inconclusive,
           {},
           {{"q", K::Q, 1.54991}, {"|alpha| (outer)", K::Modulus, 1.04492}, {"|alpha| (inner)", K::Modulus, 0.76871}}},
          {"x^4 - x^3 - x^2 - x + 1", C::Inconclusive, {}, {{"Salem q", K::Q, 1.72208}}}}},
    };
    return all;
}

bool CaseResult::pass() const
{
    return conclusion_ok && rules_ok &&
           std::all_of(probes.begin(), probes.end(), [](const ProbeResult& p) { return p.pass; });
}

bool FixtureResult::pass() const
{
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass(); });
}

std::vector<ProbeResult> measure_probes(const FixtureCase& c, unsigned budget_bits)
{
    IntPolynomial f = IntPolynomial::parse(c.poly);
    AlgebraicNumber q = select_root(f, std::nullopt, std::nullopt, budget_bits);
    auto sys = q.system();
    sys->refine(mpq_class(1, 1) / mpq_class(mpz_class(1) << 60));
    double qd = to_double(q.box().re);

    struct Root {
        double re, im;
        std::size_t index;
    };
    std::vector<Root> conj;
    for (std::size_t i = 0; i < sys->size(); ++i) {
        if (i == q.index())
            continue;
        RootBox b = sys->box(i);
        conj.push_back({to_double(b.re), to_double(b.im), i});
    }
    auto nearest = [&](double re, double im) {
        return *std::min_element(conj.begin(), conj.end(), [&](const Root& a, const Root& b) {
            return std::hypot(a.re - re, a.im - im) < std::hypot(b.re - re, b.im - im);
        });
    };

    std::vector<ProbeResult> out;
    for (const Probe& p : c.probes) {
        ProbeResult r{p, 0, false};
        switch (p.kind) {
        case ProbeKind::Q:
            r.measured = qd;
            break;
        case ProbeKind::RootRe:
            r.measured = nearest(p.hint_re, p.hint_im).re;
            break;
        case ProbeKind::RootIm:
            r.measured = std::abs(nearest(p.hint_re, p.hint_im).im);
            break;
        case ProbeKind::Modulus: {
            auto best = *std::min_element(conj.begin(), conj.end(), [&](const Root& a, const Root& b) {
                return std::abs(std::hypot(a.re, a.im) - p.expected) < std::abs(std::hypot(b.re, b.im) - p.expected);
            });
            r.measured = std::hypot(best.re, best.im);
            break;
        }
        case ProbeKind::QTimesModulus: {
            Root a = nearest(p.hint_re, p.hint_im);
            r.measured = qd * std::hypot(a.re, a.im);
            break;
        }
        case ProbeKind::InverseQ:
            r.measured = 1 / qd;
            break;
        case ProbeKind::InverseModulusSq: {
            Root a = nearest(p.hint_re, p.hint_im);
            r.measured = 1 / (a.re * a.re + a.im * a.im);
            break;
        }
        case ProbeKind::SquareTripleProduct: {
            auto cert = min_triple_product(reverse(squarefree_part(graeffe(f))), 60);
            r.measured = cert ? to_double(cert->product.mid()) : NAN;
            break;
        }
        }
        r.pass = std::abs(r.measured - p.expected) <= kFixtureTolerance;
        out.push_back(r);
    }
    return out;
}

FixtureResult run_fixture(const Fixture& fx, const VerdictOptions& options)
{
    auto t0 = std::chrono::steady_clock::now();
    FixtureResult res;
    res.fixture = &fx;
    for (const FixtureCase& c : fx.cases) {
        IntPolynomial f = IntPolynomial::parse(c.poly);
        AlgebraicNumber q = select_root(f, std::nullopt, std::nullopt, options.budget.precision_bits);
        CaseResult cr{c, verdict(f, q, options), {}, false, false};
        cr.probes = measure_probes(c, options.budget.precision_bits);
        cr.conclusion_ok = cr.verdict.conclusion == c.conclusion;
        cr.rules_ok = cr.verdict.rule_ids() == c.rules;
        res.cases.push_back(std::move(cr));
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

}  // namespace spectra
