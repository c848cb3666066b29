#pragma once

#include "spectra/errors.hpp"
#include "spectra/kernels.hpp"
#include "spectra/residue.hpp"
#include "spectra/roots.hpp"

#include <optional>
#include <string>
#include <vector>

namespace spectra {

struct DigitSet {
    std::vector<int> digits;

    static DigitSet zero_one() { return {{0, 1}}; }
    static DigitSet signed_ternary() { return {{-1, 0, 1}}; }
    static DigitSet plus_minus_one() { return {{-1, 1}}; }
    // "01", "ternary"/"lambda", "pm1", or a comma list such as "-1,0,1".
    static DigitSet parse(const std::string& text);

    int max_abs() const;
    bool contains_zero() const;
    bool nonnegative() const;
    std::string name() const;
};

// Distinct values of sum_{k<=n} a_k q^k over the digit set, in ascending order.
struct SpectrumReport {
    IntPolynomial f;
    std::optional<AlgebraicNumber> q;
    int n = 0;
    DigitSet digits;
    ResidueBasis basis;
    ResidueSet set;                  // lexicographic residue order
    std::vector<std::size_t> order;  // rank -> index into set
    std::vector<double> mid;         // per set index
    std::vector<double> err;
    bool finalized = false;
    mpq_class finalized_upto;  // values below this are final (when finalized)
    std::size_t merged_exact_ties = 0;

    std::size_t size() const { return order.size(); }
    ResidueVector residue(std::size_t rank) const;
    // Rigorous enclosure from the double evaluation.
    RInterval value(std::size_t rank) const;
    // Enclosure of the exact value, computed from the residue with q refined
    // to 2^-bits.
    RInterval exact_value(std::size_t rank, unsigned bits = 100) const;
    RInterval gap(std::size_t rank) const;
    double gap_mid(std::size_t rank) const;
    std::vector<int> coefficients(std::size_t rank) const;
};

SpectrumReport enumerate_spectrum(const IntPolynomial& f, const AlgebraicNumber& q, int n, const DigitSet& digits,
                                  const Budget& budget = {}, Exec exec = Exec::Parallel);

struct GapEntry {
    std::size_t index = 0;  // gap between ranks index and index + 1
    RInterval value;
};

struct GapStats {
    GapEntry min_gap;
    GapEntry tail_min_gap;
    GapEntry max_gap_tail;
    std::vector<std::size_t> record_min_positions;
    std::size_t prefix_size = 0;  // values used
    std::size_t tail_start = 0;   // first gap index of the tail window
    bool finalized = false;       // false: the prefix is not known to be final
};

GapStats gap_stats(const SpectrumReport& r, const mpq_class& tail_fraction = mpq_class(1, 2));

// Smallest gap over the whole report, with exact resolution of near ties.
struct MinGap {
    std::size_t rank = 0;
    RInterval value;
    ResidueVector residue;
};
MinGap min_gap(const SpectrumReport& r);

// Lower bound of q^{n+1}.
mpq_class finalized_bound(const AlgebraicNumber& q, int n, unsigned bits = 80);

struct LambdaMin {
    RInterval value;
    ResidueVector residue;
    std::vector<int> witness;                 // a_0..a_n in {-1,0,1}
    std::vector<std::vector<int>> relations;  // exact zeros found, canonical sign
    std::size_t relations_found = 0;
    std::size_t low_size = 0;
    std::size_t high_size = 0;
};

LambdaMin smallest_positive_lambda(const IntPolynomial& f, const AlgebraicNumber& q, int n, const Budget& budget = {},
                                   Exec exec = Exec::Parallel);

// Sign of the exact value of a - b at q (residues mod the defining polynomial).
int exact_compare(const ResidueVector& a, const ResidueVector& b, const AlgebraicNumber& q);

// min_gap <= (max digit - min digit) q^{n+1} / ((q - 1)(count - 1)).
// Throws InvariantViolation when certainly violated.
bool pigeonhole_check(const SpectrumReport& r);

}  // namespace spectra
