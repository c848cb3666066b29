#pragma once

#include <stdexcept>
#include <cstddef>
#include <cstdint>
#include <string>

namespace spectra {

// A certified comparison could not be decided within the precision budget.
class PrecisionExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Node, memory, or coordinate-size limits were hit.
class WorkCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegreeOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotApplicable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ToleranceAmbiguity : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NoPowerStructure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyTail : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raised when a property that holds as a theorem fails; always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Budget {
    unsigned precision_bits = 4096;
    std::size_t max_values = std::size_t{1} << 30;
    std::uint64_t node_budget = 100'000'000;
    unsigned pair_degree_cap = 500;
    unsigned max_input_degree = 64;
};

}  // namespace spectra
