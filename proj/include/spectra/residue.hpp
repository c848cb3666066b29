#pragma once

#include "spectra/interval.hpp"
#include "spectra/poly.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace spectra {

// Element of Q[x]/(f), stored as rational coordinates on 1, x, ..., x^{d-1}.
class ResidueVector {
public:
    ResidueVector() = default;
    ResidueVector(std::shared_ptr<const IntPolynomial> modulus, std::vector<mpq_class> coords);

    static ResidueVector zero(std::shared_ptr<const IntPolynomial> modulus);
    // a mod f
    static ResidueVector reduce(std::shared_ptr<const IntPolynomial> modulus, const IntPolynomial& a);

    const IntPolynomial& modulus() const { return *modulus_; }
    const std::shared_ptr<const IntPolynomial>& modulus_ptr() const { return modulus_; }
    const std::vector<mpq_class>& coords() const { return coords_; }

    bool is_zero() const;
    ResidueVector mul_x() const;
    // Positive rational multiple with coprime integer coefficients, so its
    // sign at any root of the modulus matches the residue's.
    IntPolynomial numerator() const;

    RInterval eval(const RInterval& x) const;
    CInterval eval(const CInterval& z) const;

    ResidueVector& operator+=(const ResidueVector& o);
    ResidueVector& operator-=(const ResidueVector& o);
    ResidueVector& operator*=(const mpq_class& c);
    friend ResidueVector operator+(ResidueVector a, const ResidueVector& b) { return a += b; }
    friend ResidueVector operator-(ResidueVector a, const ResidueVector& b) { return a -= b; }
    friend ResidueVector operator*(ResidueVector a, const mpq_class& c) { return a *= c; }
    friend bool operator==(const ResidueVector& a, const ResidueVector& b);

private:
    std::shared_ptr<const IntPolynomial> modulus_;
    std::vector<mpq_class> coords_;
};

// Rows B_k = scale * (x^k mod f), k = 0..n, as machine integers. Any digit
// combination sum_k c_k B_k with |c_k| <= max_digit fits in int64 without
// overflow; otherwise construction throws WorkCapExceeded.
struct ResidueBasis {
    std::shared_ptr<const IntPolynomial> modulus;
    int dim = 0;
    int n = 0;
    mpz_class scale;
    std::vector<std::int64_t> rows;  // (n + 1) x dim, row-major

    const std::int64_t* row(int k) const { return rows.data() + static_cast<std::size_t>(k) * dim; }
    ResidueVector to_residue(const std::int64_t* coords) const;
};

ResidueBasis make_basis(const IntPolynomial& f, int n, int max_digit);

}  // namespace spectra
