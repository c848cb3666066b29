#include "spectra/residue.hpp"

#include "spectra/errors.hpp"

#include <stdexcept>

namespace spectra {

ResidueVector::ResidueVector(std::shared_ptr<const IntPolynomial> modulus, std::vector<mpq_class> coords)
    : modulus_(std::move(modulus)), coords_(std::move(coords))
{
    if (!modulus_ || modulus_->degree() < 1)
        throw std::invalid_argument("residue modulus must have degree >= 1");
    if (static_cast<int>(coords_.size()) != modulus_->degree())
        throw std::invalid_argument("residue coordinate count must equal the modulus degree");
}

ResidueVector ResidueVector::zero(std::shared_ptr<const IntPolynomial> modulus)
{
    std::size_t d = static_cast<std::size_t>(modulus->degree());
    return ResidueVector(std::move(modulus), std::vector<mpq_class>(d));
}

ResidueVector ResidueVector::reduce(std::shared_ptr<const IntPolynomial> modulus, const IntPolynomial& a)
{
    RationalDivision qr = divide(a, *modulus);
    std::vector<mpq_class> c = qr.remainder;
    c.resize(static_cast<std::size_t>(modulus->degree()));
    return ResidueVector(std::move(modulus), std::move(c));
}

bool ResidueVector::is_zero() const
{
    for (const auto& c : coords_)
        if (c != 0)
            return false;
    return true;
}

ResidueVector ResidueVector::mul_x() const
{
    const auto& f = modulus_->coeffs();
    const std::size_t d = coords_.size();
    std::vector<mpq_class> out(d);
    mpq_class top = coords_[d - 1] / mpq_class(f[d]);
    for (std::size_t i = d - 1; i >= 1; --i)
        out[i] = coords_[i - 1];
    for (std::size_t i = 0; i < d; ++i)
        out[i] -= top * mpq_class(f[i]);
    return ResidueVector(modulus_, std::move(out));
}

IntPolynomial ResidueVector::numerator() const
{
    mpz_class den = 1;
    for (const auto& c : coords_)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (const auto& c : coords_) {
        out.push_back(c.get_num() * (den / c.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g > 1)
        for (auto& v : out)
            v /= g;
    return IntPolynomial(std::move(out));
}

RInterval ResidueVector::eval(const RInterval& x) const
{
    RInterval acc = RInterval::point(0);
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it)
        acc = acc * x + RInterval::point(*it);
    return acc;
}

CInterval ResidueVector::eval(const CInterval& z) const
{
    CInterval acc = CInterval::point(0, 0);
    for (auto it = coords_.rbegin(); it != coords_.rend(); ++it)
        acc = acc * z + CInterval::point(*it, 0);
    return acc;
}

ResidueVector& ResidueVector::operator+=(const ResidueVector& o)
{
    if (!(*modulus_ == *o.modulus_))
        throw std::invalid_argument("residues over different moduli");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] += o.coords_[i];
    return *this;
}

ResidueVector& ResidueVector::operator-=(const ResidueVector& o)
{
    if (!(*modulus_ == *o.modulus_))
        throw std::invalid_argument("residues over different moduli");
    for (std::size_t i = 0; i < coords_.size(); ++i)
        coords_[i] -= o.coords_[i];
    return *this;
}

ResidueVector& ResidueVector::operator*=(const mpq_class& c)
{
    for (auto& x : coords_)
        x *= c;
    return *this;
}

bool operator==(const ResidueVector& a, const ResidueVector& b)
{
    return *a.modulus_ == *b.modulus_ && a.coords_ == b.coords_;
}

ResidueVector ResidueBasis::to_residue(const std::int64_t* coords) const
{
    std::vector<mpq_class> c(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
        c[static_cast<std::size_t>(i)] = mpq_class(mpz_class(static_cast<long>(coords[i])), scale);
        c[static_cast<std::size_t>(i)].canonicalize();
    }
    return ResidueVector(modulus, std::move(c));
}

ResidueBasis make_basis(const IntPolynomial& f, int n, int max_digit)
{
    if (f.degree() < 1)
        throw std::invalid_argument("residue basis needs a modulus of degree >= 1");
    if (n < 0)
        throw std::invalid_argument("residue basis needs n >= 0");
    ResidueBasis b;
    b.modulus = std::make_shared<const IntPolynomial>(f.primitive());
    b.dim = f.degree();
    b.n = n;
    const int d = b.dim;
    b.scale = 1;
    for (int k = d; k <= n; ++k)
        b.scale *= b.modulus->leading();
    b.scale = abs(b.scale);

    // Column bound: sum over k of |B_k[i]| * max_digit must stay below 2^62.
    const mpz_class limit = mpz_class(1) << 62;
    std::vector<mpz_class> colsum(static_cast<std::size_t>(d));
    b.rows.resize(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(d));
    ResidueVector cur = ResidueVector::reduce(b.modulus, IntPolynomial{1});
    for (int k = 0; k <= n; ++k) {
        for (int i = 0; i < d; ++i) {
            mpq_class v = cur.coords()[static_cast<std::size_t>(i)] * mpq_class(b.scale);
            if (v.get_den() != 1)
                throw InvariantViolation("residue basis scale does not clear denominators");
            mpz_class z = v.get_num();
            colsum[static_cast<std::size_t>(i)] += abs(z) * max_digit;
            if (colsum[static_cast<std::size_t>(i)] >= limit)
                throw WorkCapExceeded("residue coordinates exceed the 64-bit range at n = " + std::to_string(n));
            b.rows[static_cast<std::size_t>(k) * static_cast<std::size_t>(d) + static_cast<std::size_t>(i)] =
                z.get_si();
        }
        cur = cur.mul_x();
    }
    return b;
}

}  // namespace spectra
