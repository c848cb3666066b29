#pragma once

#include "spectra/interval.hpp"
#include "spectra/poly.hpp"
#include "spectra/roots.hpp"

#include <map>
#include <string>
#include <vector>

namespace spectra {

enum class Cmp { Less, Equal, Greater };

const char* to_string(Cmp c);

// Certified comparisons of one conjugate against the reference root q.
struct ConjugateInfo {
    std::size_t index = 0;
    RootBox box;
    bool real = false;
    RInterval modulus;       // |alpha|
    Cmp vs_one = Cmp::Less;  // |alpha| against 1
    Cmp vs_q = Cmp::Less;    // |alpha| against q
    Cmp product = Cmp::Less; // q|alpha| against 1
    // How each Equal outcome was proven.
    std::vector<std::string> tie_certificates;
};

struct NumberClass {
    bool is_pisot = false;
    bool is_perron = false;
    bool is_salem = false;
    bool is_anti_pisot = false;
    // Certified lower bounds on the modulus gaps behind each true flag; a
    // flag decided through an exact tie is listed in `exact` instead.
    std::map<std::string, mpq_class> margins;
    std::map<std::string, std::string> exact;
    bool minimality_verified = false;
    std::string minimality_note;
    RInterval q;
    std::vector<ConjugateInfo> conjugates;
};

// Comparisons of q against its conjugates (the other roots of p). p must be
// squarefree and q one of its real roots.
NumberClass classify(const IntPolynomial& p, const AlgebraicNumber& q);

// Exact test of alpha * conj(alpha) == tau for a non-real root alpha, where
// tau is a real algebraic number. Throws PrecisionExhausted when two
// different root pairs share the product tau and cannot be told apart.
bool conjugate_pair_product_equals(const AlgebraicNumber& alpha, const AlgebraicNumber& tau,
                                   unsigned pair_degree_cap = 500);

// Exact tests for |alpha| = 1 and for alpha * conj(alpha) = c with c a
// positive rational.
bool modulus_is_one(const AlgebraicNumber& alpha);
bool squared_modulus_equals(const AlgebraicNumber& alpha, const mpq_class& c);
// Re alpha == 0 exactly, for non-real alpha.
bool is_purely_imaginary(const AlgebraicNumber& alpha);

// Three-way certified comparison: `diff` returns enclosures of x - y that
// shrink as `tighten` is called; `tie` decides x == y exactly and is invoked
// at most once, when the first enclosure straddles zero.
Cmp compare_certified(const std::function<RInterval()>& diff, const std::function<void()>& tighten,
                      const std::function<bool()>& tie);

}  // namespace spectra
