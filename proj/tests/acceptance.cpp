// Acceptance run: one PASS/FAIL line per criterion with its runtime.
#include "spectra/attractor.hpp"
#include "spectra/counting.hpp"
#include "spectra/criteria.hpp"
#include "spectra/fixtures.hpp"
#include "spectra/heightsearch.hpp"
#include "spectra/spectrum.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

const char* kEx4 = "x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1";
const char* kEx5 = "x^12 - x^9 - x^6 - x^3 + 1";
const char* kEx6 = "x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1";
const char* kEx7 = "x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1";

// Brute-force oracle values, fixed before the implementation existed.
const char* kPhiLambdaMin = "0.61803398874989484820";
const char* kEx1LambdaMin24 = "0.00046741952071449577260";

struct Outcome {
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body)
{
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = s < limit_seconds;
    bool ok = o.pass && in_time;
    failures += ok ? 0 : 1;
    std::printf("%s  %d  %-34s %8.2fs (limit %gs)  %s%s\n", ok ? "PASS" : "FAIL", id, name, s, limit_seconds,
                o.detail.c_str(), in_time ? "" : "  [over time limit]");
    std::fflush(stdout);
}

std::string run_cli(const std::string& args)
{
    std::string cmd = "\"" SPECTRA_CLI_PATH "\" " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe)
        return {};
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe))
        out.append(buf.data(), n);
    pclose(pipe);
    return out;
}

}  // namespace

int main()
{
    criterion(1, "root reproduction", 5, [] {
        int probes = 0, bad = 0;
        std::ostringstream worst;
        for (const Fixture& fx : fixtures())
            for (const FixtureCase& c : fx.cases)
                for (const ProbeResult& p : measure_probes(c)) {
                    ++probes;
                    if (!p.pass) {
                        ++bad;
                        worst << " Ex" << fx.id << ":" << p.probe.name << "=" << p.measured;
                    }
                }
        return Outcome{bad == 0, std::to_string(probes - bad) + "/" + std::to_string(probes) +
                                     " probes within 1e-4" + worst.str()};
    });

    criterion(2, "verdict regression", 30, [] {
        int pass = 0, total = 0;
        std::string failed;
        for (const Fixture& fx : fixtures()) {
            ++total;
            if (run_fixture(fx).pass())
                ++pass;
            else
                failed += " Ex" + std::to_string(fx.id);
        }
        std::string out = run_cli("examples");
        bool cli_ok = out.find("8/8 pass") != std::string::npos;
        return Outcome{pass == total && cli_ok, std::to_string(pass) + "/" + std::to_string(total) +
                                                    " fixtures, cli " + (cli_ok ? "8/8" : "mismatch") + failed};
    });

    criterion(3, "exact identity suites", 60, [] {
        std::mt19937_64 rng(1);
        std::uniform_int_distribution<int> deg(1, 8), coef(-1, 1), sign(0, 1), nn(1, 10);
        int inv = 0;
        for (int t = 0; t < 50; ++t) {
            int d = deg(rng);
            std::vector<mpz_class> v(d + 1);
            for (auto& x : v)
                x = coef(rng);
            v[0] = sign(rng) ? 1 : -1;
            v[d] = sign(rng) ? 1 : -1;
            inv += verify_inversion(IntPolynomial(v), nn(rng)) ? 1 : 0;
        }
        int pid = 0;
        for (int k = 1; k <= 3; ++k)
            pid += power_count_identity(P(kEx5), k).holds();
        for (int k = 1; k <= 4; ++k)
            pid += power_count_identity(P("x^4 + x^2 + 1"), k).holds();
        return Outcome{inv == 50 && pid == 7,
                       "inversion " + std::to_string(inv) + "/50, power identity " + std::to_string(pid) + "/7"};
    });

    criterion(4, "counting lower bounds", 120, [] {
        struct Case {
            const char* poly;
            double re, im;
            int clause;
        };
        bool ok = true;
        std::ostringstream d;
        for (const Case& c : {Case{kEx4, 0.3741, 0.52404, 1}, Case{kEx6, 0.02625, 0.7414, 2}}) {
            IntPolynomial f = P(c.poly);
            Lambda l = Lambda::algebraic(AlgebraicNumber::nearest_root(f, c.re, c.im));
            auto counts = count_series(f, 14);
            for (int n = 0; n <= 14; ++n) {
                LowerBound b = zn_lower_bound(l, n);
                bool good = b.clause == c.clause && mpq_class(counts[n]) >= b.value.hi;
                ok = ok && good;
                if (n == 14)
                    d << " clause " << b.clause << ": z_14=" << counts[n] << " >= " << to_decimal(b.value.hi, 8) << ";";
            }
        }
        return Outcome{ok, d.str()};
    });

    criterion(5, "pigeonhole and duality", 120, [] {
        bool ok = true;
        int spectra_checked = 0;
        for (const char* s : {"x^2 - x - 1", "x^4 - x - 1", "x^4 - x^3 - x^2 - x + 1"}) {
            IntPolynomial f = P(s);
            AlgebraicNumber q = select_root(f);
            for (int n = 1; n <= 20; ++n) {
                SpectrumReport r = enumerate_spectrum(f, q, n, DigitSet::zero_one());
                MinGap g = min_gap(r);
                LambdaMin m = smallest_positive_lambda(f, q, n);
                bool equal = exact_compare(g.residue, m.residue, q) == 0;
                ok = ok && equal && pigeonhole_check(r);
                ++spectra_checked;
            }
        }
        return Outcome{ok, std::to_string(spectra_checked) + " spectra, exact equality of minima"};
    });

    criterion(6, "Pisot vs non-Pisot behaviour", 300, [] {
        IntPolynomial phi = P("x^2 - x - 1");
        AlgebraicNumber qp = select_root(phi);
        bool phi_ok = true;
        for (int n = 5; n <= 25; ++n) {
            LambdaMin m = smallest_positive_lambda(phi, qp, n);
            phi_ok = phi_ok && to_decimal(m.value.mid(), 20) == kPhiLambdaMin && m.value.lo >= mpq_class(1, 10);
        }
        IntPolynomial ex1 = P("x^4 - x - 1");
        AlgebraicNumber q1 = select_root(ex1);
        bool ex1_ok = true;
        RInterval prev;
        std::string last;
        for (int n = 5; n <= 24; ++n) {
            LambdaMin m = smallest_positive_lambda(ex1, q1, n);
            if (n > 5)
                ex1_ok = ex1_ok && m.value.lo <= prev.hi;
            prev = m.value;
            last = to_decimal(m.value.mid(), 20);
        }
        ex1_ok = ex1_ok && prev.hi < mpq_class(1, 100) && last == kEx1LambdaMin24;
        return Outcome{phi_ok && ex1_ok, std::string("phi constant ") + kPhiLambdaMin + (phi_ok ? "" : " [mismatch]") +
                                             ", Ex1 n=24 " + last + (ex1_ok ? "" : " [mismatch]")};
    });

    criterion(7, "triple-product stress test", 600, [] {
        SamplerResult s = claim_sampler(12, 10000, 1);
        bool sampler_ok = s.min_product.lo * s.min_product.lo >= kTripleBoundSquared &&
                          s.min_product.lo >= mpq_class(32476, 100000);
        IntPolynomial ex7 = P(kEx7);
        auto cert = three_root_filter(reverse(graeffe(ex7)));
        bool filter_ok = cert && std::abs(to_double(cert->product.mid()) - 0.226024) < 1e-4 &&
                         cert->product_squared.hi < kTripleBoundSquared;
        IntPolynomial g = squarefree_part(graeffe(ex7));
        HeightOneResult h = find_height_one_multiple(g, 20);
        bool search_ok = h.status == HeightStatus::NoneUpTo && h.dmax == 20;
        std::ostringstream d;
        d << "sampler min " << to_decimal(s.min_product.lo, 10) << " over " << s.samples << " (+" << s.skipped
          << " skipped); filter " << (cert ? to_decimal(cert->product.mid(), 8) : "none") << "; search "
          << to_string(h.status) << "(" << h.dmax << ")";
        return Outcome{sampler_ok && filter_ok && search_ok, d.str()};
    });

    criterion(8, "attractor sanity", 10, [] {
        bool a = connectivity(Lambda::exact(mpq_class(2, 5))).verdict == Connectivity::Disconnected;
        bool b = connectivity(Lambda::exact(mpq_class(7, 10))).verdict == Connectivity::Connected;
        Lambda l = Lambda::algebraic(AlgebraicNumber::nearest_root(P(kEx6), 0.02625, 0.7414));
        l.refine(mpq_class(1, 1) / mpq_class(mpz_class(1) << 80));
        CInterval e = l.enclosure();
        RInterval re = abs(e.re), rhs = norm2(e) - RInterval::point(mpq_class(1, 2));
        bool inequality = re.hi < rhs.lo;
        bool c = interior_criterion(l) && inequality;
        std::ostringstream d;
        d << "0.4 " << (a ? "Disconnected" : "?") << ", 0.7 " << (b ? "Connected" : "?") << ", Ex6 |Re| <= "
          << to_decimal(re.hi, 6) << " < " << to_decimal(rhs.lo, 6) << " <= |l|^2-1/2";
        return Outcome{a && b && c, d.str()};
    });

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
