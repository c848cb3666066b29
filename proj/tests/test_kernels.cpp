#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spectra/kernels.hpp"

#include <random>
#include <set>

using namespace spectra;

namespace {

IntPolynomial P(const char* s) { return IntPolynomial::parse(s); }

// Every digit word summed row by row, deduplicated with std::set.
std::set<std::vector<std::int64_t>> brute_force(const ResidueBasis& b, const std::vector<int>& digits)
{
    std::set<std::vector<std::int64_t>> out;
    std::size_t words = 1;
    for (int k = 0; k <= b.n; ++k)
        words *= digits.size();
    for (std::size_t w = 0; w < words; ++w) {
        std::vector<std::int64_t> v(b.dim, 0);
        std::size_t x = w;
        for (int k = 0; k <= b.n; ++k) {
            int c = digits[x % digits.size()];
            x /= digits.size();
            for (int i = 0; i < b.dim; ++i)
                v[i] += c * b.row(k)[i];
        }
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("enumeration matches brute force")
{
    struct Case {
        const char* poly;
        int n;
        std::vector<int> digits;
    };
    for (const Case& c : std::vector<Case>{{"x^2 - x - 1", 12, {0, 1}},
                                           {"x^4 - x - 1", 12, {0, 1}},
                                           {"x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1", 11, {0, 1}},
                                           {"x^3 - x - 1", 7, {-1, 0, 1}},
                                           {"x^4 + x^2 + 1", 9, {-1, 1}}}) {
        int max_digit = 1;
        ResidueBasis basis = make_basis(P(c.poly), c.n, max_digit);
        DigitCodec codec(c.digits, c.n + 1);
        auto expected = brute_force(basis, c.digits);
        for (Exec e : {Exec::Serial, Exec::Parallel}) {
            ResidueSet s = enumerate_residues(basis, 0, c.n, codec, e, std::size_t(1) << 30);
            REQUIRE(s.size() == expected.size());
            std::size_t i = 0;
            for (const auto& v : expected) {
                CHECK(std::equal(v.begin(), v.end(), s.at(i)));
                ++i;
            }
            // The stored digit word reproduces the residue.
            for (std::size_t j = 0; j < s.size(); j += 7) {
                std::vector<int> w = codec.decode(s.codes[j]);
                std::vector<std::int64_t> v(basis.dim, 0);
                for (int k = 0; k <= c.n; ++k)
                    for (int d = 0; d < basis.dim; ++d)
                        v[d] += w[k] * basis.row(k)[d];
                CHECK(std::equal(v.begin(), v.end(), s.at(j)));
            }
        }
    }
}

TEST_CASE("serial and parallel extend agree, including relations")
{
    ResidueBasis basis = make_basis(P("x^2 - x - 1"), 14, 1);
    DigitCodec codec({-1, 0, 1}, 15);
    std::vector<std::uint64_t> rs, rp;
    ResidueSet a = enumerate_residues(basis, 0, 14, codec, Exec::Serial, std::size_t(1) << 30, &rs);
    ResidueSet b = enumerate_residues(basis, 0, 14, codec, Exec::Parallel, std::size_t(1) << 30, &rp);
    CHECK(a.coords == b.coords);
    CHECK(a.codes == b.codes);
    CHECK(rs == rp);
    CHECK(!rs.empty());  // 1 + x - x^2 = 0
}

TEST_CASE("work cap")
{
    ResidueBasis basis = make_basis(P("x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1"), 20, 1);
    DigitCodec codec({0, 1}, 21);
    CHECK_THROWS(enumerate_residues(basis, 0, 20, codec, Exec::Serial, 1000));
}

TEST_CASE("evaluation, sort and sweep parity")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10, 10);
    std::vector<double> mid(200000), err(200000, 1e-12);
    for (double& v : mid)
        v = u(rng);
    mid[5] = mid[17];
    auto s = sort_by_value(mid, Exec::Serial);
    auto p = sort_by_value(mid, Exec::Parallel);
    CHECK(s == p);
    for (std::size_t i = 1; i < s.size(); ++i)
        CHECK((mid[s[i - 1]] < mid[s[i]] || (mid[s[i - 1]] == mid[s[i]] && s[i - 1] < s[i])));

    std::vector<double> amid(mid.begin(), mid.begin() + 3000), aerr(3000, 1e-12);
    std::vector<double> bmid(mid.begin() + 3000, mid.begin() + 5000), berr(2000, 1e-12);
    auto order = sort_by_value(amid, Exec::Serial);
    auto cs = sweep_min_positive(order, amid, aerr, bmid, berr, Exec::Serial);
    auto cp = sweep_min_positive(order, amid, aerr, bmid, berr, Exec::Parallel);
    REQUIRE(cs.size() == cp.size());
    for (std::size_t i = 0; i < cs.size(); ++i) {
        CHECK(cs[i].a == cp[i].a);
        CHECK(cs[i].b == cp[i].b);
    }
    // Oracle: the smallest positive a + b over all pairs is among the candidates.
    double best = 1e300;
    for (double a : amid)
        for (double b : bmid)
            if (a + b > 0)
                best = std::min(best, a + b);
    bool found = false;
    for (const auto& c : cs)
        found |= amid[c.a] + bmid[c.b] == best;
    CHECK(found);

    ResidueBasis basis = make_basis(P("x^4 - x - 1"), 14, 1);
    DigitCodec codec({0, 1}, 15);
    ResidueSet rset = enumerate_residues(basis, 0, 14, codec, Exec::Serial, std::size_t(1) << 30);
    PowerTable t;
    double q = 1.2207440846057594754;
    for (int i = 0; i < basis.dim; ++i) {
        t.mid.push_back(std::pow(q, i) / basis.scale.get_d());
        t.err.push_back(1e-15);
    }
    std::vector<double> m1, e1, m2, e2;
    evaluate_values(rset, t, m1, e1, Exec::Serial);
    evaluate_values(rset, t, m2, e2, Exec::Parallel);
    CHECK(m1 == m2);
    CHECK(e1 == e2);
}
