#include "spectra/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace spectra {

std::vector<std::uint64_t> count_series(const IntPolynomial& f, int n_max, const DigitSet& digits, const Budget& budget,
                                        Exec exec)
{
    if (n_max < 0)
        throw std::invalid_argument("n must be >= 0");
    ResidueBasis basis = make_basis(f, n_max, digits.max_abs());
    // Codes are not needed for counting.
    DigitCodec codec(digits.digits, 0);
    codec.enabled = false;
    std::vector<std::uint64_t> counts;
    ResidueSet s;
    s.dim = basis.dim;
    s.coords.assign(static_cast<std::size_t>(basis.dim), 0);
    for (int k = 0; k <= n_max; ++k) {
        if (s.size() > budget.max_values / digits.digits.size())
            throw WorkCapExceeded("enumeration would generate more than " + std::to_string(budget.max_values) +
                                  " values");
        s = extend(s, basis.row(k), codec, k, exec);
        counts.push_back(s.size());
    }
    return counts;
}

std::uint64_t count_distinct(const IntPolynomial& f, int n, const DigitSet& digits, const Budget& budget, Exec exec)
{
    return count_series(f, n, digits, budget, exec).back();
}

std::uint64_t count_distinct_numeric(std::complex<double> beta, int n, double tol)
{
    if (!(tol > 0))
        throw std::invalid_argument("tolerance must be positive");
    if (n < 0 || n > 22)
        throw WorkCapExceeded("numeric counting supports n <= 22");
    if (std::abs(beta) < 1e-6)
        throw std::invalid_argument("beta must be bounded away from 0");
    std::vector<std::complex<double>> pts{0.0};
    std::complex<double> p = 1.0;
    for (int k = 0; k <= n; ++k) {
        std::size_t m = pts.size();
        for (std::size_t i = 0; i < m; ++i)
            pts.push_back(pts[i] + p);
        p *= beta;
    }

    // Grid hashing with cell 4*tol: every pair closer than 4*tol sits in
    // neighbouring cells.
    const double cell = 4 * tol;
    auto key = [&](long a, long b) { return (static_cast<std::uint64_t>(a) * 0x9E3779B97F4A7C15ULL) ^ static_cast<std::uint64_t>(b); };
    std::unordered_multimap<std::uint64_t, std::size_t> grid;
    grid.reserve(pts.size() * 2);
    std::vector<std::pair<long, long>> cells(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        long a = static_cast<long>(std::floor(pts[i].real() / cell));
        long b = static_cast<long>(std::floor(pts[i].imag() / cell));
        cells[i] = {a, b};
        grid.emplace(key(a, b), i);
    }
    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        auto [a, b] = cells[i];
        for (long da = -1; da <= 1; ++da)
            for (long db = -1; db <= 1; ++db) {
                auto range = grid.equal_range(key(a + da, b + db));
                for (auto it = range.first; it != range.second; ++it) {
                    std::size_t j = it->second;
                    if (j <= i || cells[j] != std::make_pair(a + da, b + db))
                        continue;
                    double dist = std::abs(pts[i] - pts[j]);
                    if (dist >= tol / 4 && dist <= 4 * tol)
                        throw ToleranceAmbiguity("two sums are " + std::to_string(dist) +
                                                 " apart, inside the ambiguity window of tol " + std::to_string(tol));
                    if (dist < tol / 4)
                        parent[find(i)] = find(j);
                }
            }
    }
    std::uint64_t roots = 0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        roots += find(i) == i;
    return roots;
}

std::uint64_t count_distinct_numeric(const AlgebraicNumber& beta, int n, const Budget& budget)
{
    return count_distinct(beta.defining(), n, DigitSet::zero_one(), budget);
}

bool verify_inversion(const IntPolynomial& f, int n, const Budget& budget)
{
    return count_distinct(f, n, DigitSet::zero_one(), budget) == count_distinct(reverse(f), n, DigitSet::zero_one(), budget);
}

void check_count_invariants(const std::vector<std::uint64_t>& counts, std::size_t digit_count)
{
    long double cap = digit_count;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        if (counts[n] < 1 || static_cast<long double>(counts[n]) > cap)
            throw InvariantViolation("z_" + std::to_string(n) + " outside [1, |D|^{n+1}]");
        if (n + 1 < counts.size() && (counts[n + 1] < counts[n] || counts[n + 1] > digit_count * counts[n]))
            throw InvariantViolation("z_" + std::to_string(n + 1) + " not within [z_n, |D| z_n]");
        cap *= digit_count;
    }
}

CountSeries growth_ratio(const IntPolynomial& f, const AlgebraicNumber& q, int N, const Budget& budget, Exec exec)
{
    if (N < 0)
        throw std::invalid_argument("N must be >= 0");
    CountSeries cs;
    cs.f = f;
    cs.counts = count_series(f, N, DigitSet::zero_one(), budget, exec);
    check_count_invariants(cs.counts, 2);
    q.refine(dyadic(1, -100));
    cs.q = q.real_enclosure();
    RInterval qn = RInterval::point(1);
    for (int n = 0; n <= N; ++n) {
        cs.ratios.push_back(RInterval::point(mpq_class(mpz_class(static_cast<unsigned long>(cs.counts[static_cast<std::size_t>(n)])))) /
                            qn);
        qn = qn * cs.q;
    }
    const std::size_t len = cs.ratios.size();
    const std::size_t quarter = len / 4;
    if (quarter >= 1) {
        mpq_class first = cs.ratios[0].hi, last = cs.ratios[len - quarter].lo;
        for (std::size_t i = 0; i < quarter; ++i)
            first = std::min(first, cs.ratios[i].hi);
        for (std::size_t i = len - quarter; i < len; ++i)
            last = std::min(last, cs.ratios[i].lo);
        cs.divergence_diagnostic = last > 2 * first;
    }
    return cs;
}

PowerIdentity power_count_identity(const IntPolynomial& f, int k, const Budget& budget)
{
    if (k < 1)
        throw std::invalid_argument("k must be >= 1");
    PowerStructure ps = detect_power_structure(f);
    if (ps.m < 2)
        throw NoPowerStructure("polynomial is not of the form g(x^m) with m >= 2");
    PowerIdentity id;
    id.m = ps.m;
    id.lhs = count_distinct(f, static_cast<int>(ps.m) * k, DigitSet::zero_one(), budget);
    std::vector<std::uint64_t> g = count_series(ps.inner, k, DigitSet::zero_one(), budget);
    mpz_class rhs = static_cast<unsigned long>(g[static_cast<std::size_t>(k)]);
    for (unsigned i = 1; i < ps.m; ++i)
        rhs *= static_cast<unsigned long>(g[static_cast<std::size_t>(k - 1)]);
    if (!rhs.fits_ulong_p())
        throw WorkCapExceeded("identity right-hand side exceeds 64 bits");
    id.rhs = rhs.get_ui();
    return id;
}

}  // namespace spectra
