#pragma once

#include "spectra/residue.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace spectra {

// Every kernel has a serial reference path and an OpenMP path; both return
// identical results.
enum class Exec { Serial, Parallel };

// Distinct scaled residue vectors in ascending lexicographic order, each with
// the digit word of the first combination that produced it.
struct ResidueSet {
    int dim = 0;
    std::vector<std::int64_t> coords;
    std::vector<std::uint64_t> codes;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / static_cast<std::size_t>(dim); }
    const std::int64_t* at(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
    bool has_codes() const { return !codes.empty(); }
};

// Digit words: position k (relative to the first enumerated power) holds the
// index into `digits`, in base digits.size().
struct DigitCodec {
    std::vector<int> digits;
    int positions = 0;
    bool enabled = false;

    DigitCodec(std::vector<int> digits, int positions);
    std::uint64_t weight(int position) const;
    std::vector<int> decode(std::uint64_t code) const;
    std::uint64_t encode(const std::vector<int>& values) const;
    std::size_t index_of(int digit) const;
};

// Single-element set holding the zero vector.
ResidueSet residue_origin(int dim, const DigitCodec& codec);

// One enumeration step: the union over digits c of (s + c * row). Elements that
// land on the zero vector through a nonzero digit are reported in `relations`.
ResidueSet extend(const ResidueSet& s, const std::int64_t* row, const DigitCodec& codec, int position, Exec exec,
                  std::vector<std::uint64_t>* relations = nullptr);

// Enumerates sum_{k=first}^{last} c_k B_k over the digit set, checking the cap
// on the number of generated combinations before each step. `on_step` sees
// the set after every power k.
ResidueSet enumerate_residues(const ResidueBasis& basis, int first, int last, const DigitCodec& codec, Exec exec,
                              std::size_t cap, std::vector<std::uint64_t>* relations = nullptr,
                              const std::function<void(int, const ResidueSet&)>& on_step = {});

// Double approximations of x^i / scale (i < dim) with absolute error bounds.
struct PowerTable {
    std::vector<double> mid;
    std::vector<double> err;
};

// Value midpoints and rigorous absolute error bounds of every element.
void evaluate_values(const ResidueSet& s, const PowerTable& t, std::vector<double>& mid, std::vector<double>& err,
                     Exec exec);

// Candidate pairs (a, b) from a meet-in-the-middle sweep of A + B.
struct SweepCandidate {
    std::size_t a = 0;
    std::size_t b = 0;
    double mid = 0;
    double err = 0;
    bool ambiguous = false;  // the enclosure contains 0
};

// `order` lists A's indices sorted by midpoint. For each b, returns the a
// values whose sum with b is not certainly negative and not certainly larger
// than the smallest certainly positive sum for that b.
std::vector<SweepCandidate> sweep_min_positive(const std::vector<std::size_t>& order, const std::vector<double>& amid,
                                               const std::vector<double>& aerr, const std::vector<double>& bmid,
                                               const std::vector<double>& berr, Exec exec);

// Ascending permutation by midpoint, ties broken by index.
std::vector<std::size_t> sort_by_value(const std::vector<double>& mid, Exec exec);

int worker_count();

}  // namespace spectra
