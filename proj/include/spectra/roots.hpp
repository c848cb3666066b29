#pragma once

#include "spectra/bigfloat.hpp"
#include "spectra/interval.hpp"
#include "spectra/poly.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

namespace spectra {

// Closed disc guaranteed to contain exactly `multiplicity` roots (counted
// with multiplicity) of the polynomial it was computed for.
struct RootBox {
    mpq_class re;
    mpq_class im;
    mpq_class radius;
    unsigned multiplicity = 1;

    CInterval enclosure() const;
    bool contains_disc(const RootBox& inner) const;
    bool disjoint(const RootBox& other) const;
    bool intersects(const CInterval& box) const;
};

// Certified isolation of all roots of a squarefree integer polynomial. Root
// indices are fixed at construction (ordered by real part, then imaginary
// part of the first certified centers); refinement only shrinks the boxes and
// every refined box is nested inside its predecessor.
class RootSystem {
public:
    explicit RootSystem(IntPolynomial squarefree, unsigned budget_bits = 4096);

    const IntPolynomial& poly() const { return poly_; }
    std::size_t size() const;
    unsigned budget() const { return budget_; }
    unsigned precision() const;

    RootBox box(std::size_t i) const;
    std::vector<RootBox> boxes() const;
    CInterval enclosure(std::size_t i) const { return box(i).enclosure(); }
    mpq_class max_radius() const;

    // Shrinks every radius to at most eps; throws PrecisionExhausted.
    void refine(const mpq_class& eps);
    // Halves the current maximal radius at least once.
    void tighten();

    bool is_real(std::size_t i);
    std::size_t conjugate_of(std::size_t i);
    // Index of the unique root whose box meets `z`, refining as needed; npos
    // when `z` meets no box. `z` must enclose a root.
    std::size_t locate(const std::function<CInterval()>& z);

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    bool certify(unsigned prec, std::vector<RootBox>& out) const;
    void iterate_to(unsigned prec);
    void refine_locked(const mpq_class& eps);

    IntPolynomial poly_;
    unsigned budget_;
    unsigned prec_ = 0;
    std::vector<BigComplex> approx_;
    std::vector<RootBox> boxes_;
    mutable std::mutex mu_;
};

// A root of an integer polynomial, identified by a refinable isolating box.
class AlgebraicNumber {
public:
    AlgebraicNumber(std::shared_ptr<RootSystem> system, std::size_t index);

    // The unique real root of p in [lo, hi]; throws std::domain_error when
    // there is none or more than one.
    static AlgebraicNumber real_root_in(const IntPolynomial& p, const mpq_class& lo, const mpq_class& hi,
                                        unsigned budget_bits = 4096);
    static AlgebraicNumber largest_real_root(const IntPolynomial& p, unsigned budget_bits = 4096);
    static AlgebraicNumber root(const IntPolynomial& p, std::size_t index, unsigned budget_bits = 4096);
    // Root of p whose box center is closest to re + i im.
    static AlgebraicNumber nearest_root(const IntPolynomial& p, double re, double im, unsigned budget_bits = 4096);

    const IntPolynomial& defining() const { return system_->poly(); }
    const std::shared_ptr<RootSystem>& system() const { return system_; }
    std::size_t index() const { return index_; }
    unsigned refine_budget() const { return system_->budget(); }

    RootBox box() const { return system_->box(index_); }
    CInterval enclosure() const { return system_->enclosure(index_); }
    // Real-axis enclosure; only meaningful for real roots.
    RInterval real_enclosure() const;
    void refine(const mpq_class& eps) const;

    bool is_real() const;
    // Exact: true iff g vanishes at this number.
    bool is_root_of(const IntPolynomial& g) const;
    // Exact sign of c at this (real) number.
    int sign_of(const IntPolynomial& c) const;

private:
    std::shared_ptr<RootSystem> system_;
    std::size_t index_;
};

// All roots of p (any integer polynomial of degree >= 1) with multiplicities,
// every radius <= eps, boxes pairwise disjoint, ordered by real then imaginary
// part of the centers.
std::vector<RootBox> isolate_roots(const IntPolynomial& p, const mpq_class& eps, unsigned budget_bits = 4096);

// Interval evaluation helpers.
RInterval eval(const IntPolynomial& p, const RInterval& x);
CInterval eval(const IntPolynomial& p, const CInterval& z);

}  // namespace spectra
