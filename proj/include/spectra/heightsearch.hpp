#pragma once

#include "spectra/errors.hpp"
#include "spectra/interval.hpp"
#include "spectra/kernels.hpp"
#include "spectra/poly.hpp"
#include "spectra/roots.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

// |z1 z2 z3| >= 3 sqrt(3) / 16 for distinct nonzero roots of a height-one
// polynomial; compared through the square 27/256.
inline const mpq_class kTripleBoundSquared{27, 256};
constexpr double kTripleBound = 0.32475952641916445;

struct FilterCertificate {
    std::vector<RootBox> roots;  // the three roots used
    RInterval product;           // |z1 z2 z3|
    RInterval product_squared;
};

enum class HeightStatus { Found, NoneUpTo, Filtered };
const char* to_string(HeightStatus s);

struct HeightOneResult {
    HeightStatus status = HeightStatus::NoneUpTo;
    std::optional<IntPolynomial> witness;
    std::optional<IntPolynomial> cofactor;
    std::optional<FilterCertificate> filter;
    int dmax = 0;
    int coefficient_cap = 64;
    std::uint64_t nodes = 0;
    // Set when NoneUpTo holds for every degree, not just up to dmax.
    bool proof = false;
    std::string note;
};

// Smallest-degree p = f g with all coefficients in {-1,0,1} and deg p <= dmax;
// among those the lexicographically smallest coefficient list (ascending).
// Cofactor coefficients are bounded by `coefficient_cap`.
HeightOneResult find_height_one_multiple(const IntPolynomial& f, int dmax, const Budget& budget = {},
                                         Exec exec = Exec::Parallel, int coefficient_cap = 64);

// Certificate that no multiple of f is height-one: three distinct nonzero
// roots whose modulus product is certifiably below the bound.
std::optional<FilterCertificate> three_root_filter(const IntPolynomial& f, unsigned budget_bits = 4096);

// Smallest product of moduli over triples of distinct nonzero roots; nullopt
// for fewer than three distinct roots.
std::optional<FilterCertificate> min_triple_product(const IntPolynomial& p, unsigned bits = 60);

struct SamplerResult {
    RInterval min_product;
    IntPolynomial witness;
    std::uint64_t samples = 0;
    std::uint64_t skipped = 0;  // fewer than three distinct roots
};

// Random height-one polynomials with p(0) = +-1, leading +-1, degree in
// [3, degree_max], seeded per sample so serial and parallel runs agree.
SamplerResult claim_sampler(int degree_max, std::uint64_t samples, std::uint64_t seed, Exec exec = Exec::Parallel);
// Every such polynomial of degree 3..degree_max.
SamplerResult claim_exhaustive(int degree_max, Exec exec = Exec::Parallel);

}  // namespace spectra
