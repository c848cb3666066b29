#pragma once

#include "spectra/poly.hpp"

#include <string>
#include <vector>

namespace spectra {

struct IrreducibilityCheck {
    // True only when the checks amount to a proof of irreducibility over Q.
    bool proven = false;
    // True when a nontrivial factor was exhibited.
    bool reducible = false;
    std::string note;
};

// Cheap irreducibility evidence: rational roots, small cyclotomic factors,
// and factor-degree patterns modulo small primes. Never factors p.
IrreducibilityCheck check_irreducible(const IntPolynomial& p);

// Degrees of the irreducible factors of p modulo the prime `prime`, or an
// empty vector when p is not squarefree mod prime or prime divides the
// leading coefficient.
std::vector<int> factor_degrees_mod(const IntPolynomial& p, unsigned long prime);

}  // namespace spectra
