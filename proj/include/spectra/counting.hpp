#pragma once

#include "spectra/errors.hpp"
#include "spectra/kernels.hpp"
#include "spectra/roots.hpp"
#include "spectra/spectrum.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace spectra {

// Number of distinct residues sum_{k<=n} a_k x^k mod f over the digit set.
std::uint64_t count_distinct(const IntPolynomial& f, int n, const DigitSet& digits = DigitSet::zero_one(),
                             const Budget& budget = {}, Exec exec = Exec::Parallel);

// Counts for every n = 0..n_max from a single incremental enumeration.
std::vector<std::uint64_t> count_series(const IntPolynomial& f, int n_max, const DigitSet& digits = DigitSet::zero_one(),
                                        const Budget& budget = {}, Exec exec = Exec::Parallel);

// Number of tol-clusters among the 2^{n+1} sums at a floating-point beta.
// Throws ToleranceAmbiguity when two sums lie within [tol/4, 4 tol].
std::uint64_t count_distinct_numeric(std::complex<double> beta, int n, double tol);
// Exact variant: z_n is the same at every root of the defining polynomial.
std::uint64_t count_distinct_numeric(const AlgebraicNumber& beta, int n, const Budget& budget = {});

bool verify_inversion(const IntPolynomial& f, int n, const Budget& budget = {});

struct CountSeries {
    IntPolynomial f;
    RInterval q;
    std::vector<std::uint64_t> counts;  // z_0..z_N
    std::vector<RInterval> ratios;      // z_n / q^n
    // Heuristic evidence only: the running minimum of the ratio over the last
    // quarter of indices exceeds twice its minimum over the first quarter.
    bool divergence_diagnostic = false;
};

CountSeries growth_ratio(const IntPolynomial& f, const AlgebraicNumber& q, int N, const Budget& budget = {},
                         Exec exec = Exec::Parallel);

// z_{mk}(x) == z_k(g) * z_{k-1}(g)^{m-1} for f = g(x^m); throws NoPowerStructure.
struct PowerIdentity {
    unsigned m = 1;
    std::uint64_t lhs = 0;
    std::uint64_t rhs = 0;
    bool holds() const { return lhs == rhs; }
};
PowerIdentity power_count_identity(const IntPolynomial& f, int k, const Budget& budget = {});

// Checks 1 <= z_n <= |D|^{n+1} and z_n <= z_{n+1} <= |D| z_n; throws
// InvariantViolation otherwise.
void check_count_invariants(const std::vector<std::uint64_t>& counts, std::size_t digit_count);

}  // namespace spectra
