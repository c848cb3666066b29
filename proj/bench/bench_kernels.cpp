// Serial reference vs OpenMP timings for the hot kernels.
#include "spectra/attractor.hpp"
#include "spectra/counting.hpp"
#include "spectra/heightsearch.hpp"
#include "spectra/spectrum.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace spectra;

namespace {

double seconds(const std::function<void()>& fn, int reps)
{
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

template <class F>
void row(const std::string& name, int reps, F run)
{
    decltype(run(Exec::Serial)) a{}, b{};
    double ts = seconds([&] { a = run(Exec::Serial); }, reps);
    double tp = seconds([&] { b = run(Exec::Parallel); }, reps);
    std::printf("%-34s %10.4f %10.4f %7.2fx  %s\n", name.c_str(), ts, tp, ts / tp, a == b ? "same" : "DIFFERENT");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"kernel benchmark"};
    int n = 20, reps = 3;
    app.add_option("--n", n, "Highest power for the enumeration benchmarks");
    app.add_option("--reps", reps, "Repetitions (best time is reported)");
    CLI11_PARSE(app, argc, argv);

    std::printf("threads: %d\n", worker_count());
    std::printf("%-34s %10s %10s %8s\n", "kernel", "serial", "parallel", "speedup");

    IntPolynomial ex4 = IntPolynomial::parse("x^8 - x^7 - x^6 - x^5 + x^4 + x^3 + x^2 - x + 1");
    IntPolynomial phi = IntPolynomial::parse("x^2 - x - 1");
    IntPolynomial ex1 = IntPolynomial::parse("x^4 - x - 1");
    AlgebraicNumber q1 = AlgebraicNumber::largest_real_root(ex1);

    row("extend/enumerate (Ex4 count)", reps, [&](Exec e) { return count_distinct(ex4, n, DigitSet::zero_one(), {}, e); });
    row("enumerate+evaluate+sort (Ex1)", reps, [&](Exec e) {
        return enumerate_spectrum(ex1, q1, n, DigitSet::zero_one(), {}, e).size();
    });
    row("MITM sweep (Ex1 lambda-min)", reps, [&](Exec e) {
        return to_double(smallest_positive_lambda(ex1, q1, n, {}, e).value.mid());
    });

    std::vector<double> mid(1 << 22);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1, 1);
    for (double& v : mid)
        v = u(rng);
    row("sort_by_value (4M doubles)", reps, [&](Exec e) { return sort_by_value(mid, e); });

    Lambda ex6 = Lambda::algebraic(AlgebraicNumber::nearest_root(
        IntPolynomial::parse("x^11 - x^10 - x^9 + x^6 - x^4 + x^2 + 1"), 0.02625, 0.7414));
    row("raster (depth 22, 800 px)", reps, [&](Exec e) { return rasterize(ex6, 22, 800, false, e).data; });
    row("connectivity DFS (0.5+0.5i)", reps, [&](Exec e) {
        return static_cast<int>(connectivity(Lambda::exact(mpq_class(1, 2), mpq_class(1, 2)), 20, e).verdict);
    });
    row("height-one search (graeffe Ex7)", 1, [&](Exec e) {
        IntPolynomial g = graeffe(IntPolynomial::parse(
            "x^18 + x^16 - x^14 - x^11 - x^10 - x^9 - x^8 - x^7 - x^6 - x^5 - x^4 - x^3 - x^2 - x - 1"));
        return static_cast<int>(find_height_one_multiple(squarefree_part(g), 20, {}, e).status);
    });
    row("triple-product sampler (2000)", 1, [&](Exec e) {
        return to_double(claim_sampler(12, 2000, 1, e).min_product.mid());
    });
    return 0;
}
