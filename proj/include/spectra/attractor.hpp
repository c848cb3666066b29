#pragma once

#include "spectra/errors.hpp"
#include "spectra/interval.hpp"
#include "spectra/kernels.hpp"
#include "spectra/roots.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

// A complex parameter given either exactly (Gaussian rational) or as a root
// of an integer polynomial.
class Lambda {
public:
    static Lambda exact(const mpq_class& re, const mpq_class& im = 0);
    static Lambda algebraic(AlgebraicNumber a);

    bool is_exact() const { return !alg_.has_value(); }
    const std::optional<AlgebraicNumber>& algebraic() const { return alg_; }
    const mpq_class& exact_re() const { return re_; }
    const mpq_class& exact_im() const { return im_; }

    CInterval enclosure() const;
    // Shrinks the enclosure (no-op for exact values).
    void tighten() const;
    void refine(const mpq_class& eps) const;
    bool is_real() const;
    std::complex<double> approx() const;
    std::string to_string(int digits = 12) const;

private:
    Lambda() = default;
    mpq_class re_, im_;
    std::optional<AlgebraicNumber> alg_;
};

enum class Connectivity { Connected, Disconnected, Unknown };
const char* to_string(Connectivity c);

struct ConnectivityResult {
    Connectivity verdict = Connectivity::Unknown;
    int depth = 0;
    std::string method;
    // Connected: b_0..b_k in {-1,0,1}, b_0 = 1, with sum b_j lambda^j = 0
    // exactly (empty for the real interval case).
    std::vector<int> witness;
    // Disconnected: smallest certified excess of |partial sum| over the tail
    // bound among all pruned prefixes.
    double margin = 0;
    std::uint64_t nodes = 0;
};

// Decides whether lambda A and lambda A + 1 intersect, A the attractor with
// digits {0,1}. Requires |lambda| < 1.
ConnectivityResult connectivity(const Lambda& lambda, int depth = 40, Exec exec = Exec::Parallel,
                                const Budget& budget = {});

// 1/2 <= |lambda|^2 < 1 and |Re lambda| <= |lambda|^2 - 1/2.
bool interior_criterion(const Lambda& lambda, unsigned budget_bits = 4096);

struct LowerBound {
    int clause = 1;  // 1: |lambda|^-(n+1), 2: |lambda|^-2(n+1)
    RInterval value;
};
// Throws NotApplicable when neither clause holds.
LowerBound zn_lower_bound(const Lambda& lambda, int n, unsigned budget_bits = 4096);

struct Raster {
    int pixels = 0;
    std::vector<std::uint8_t> data;  // row-major, row 0 at the top; 1 = marked
    double center_re = 0, center_im = 0, half_width = 0;
    std::size_t marked() const;
};

// Marks the pixel of each of the 2^{depth+1} sums sum a_k lambda^k with
// a_k in {0,1} (plus_minus = false) or {-1,1} (plus_minus = true).
Raster rasterize(const Lambda& lambda, int depth = 22, int pixels = 800, bool plus_minus = false,
                 Exec exec = Exec::Parallel);
void write_pgm(const Raster& r, std::ostream& out);

struct AttractorAnalysis {
    CInterval lambda;
    ConnectivityResult connectivity;
    bool interior = false;
    std::optional<LowerBound> bound;
};
AttractorAnalysis analyze_attractor(const Lambda& lambda, int depth, int n, Exec exec = Exec::Parallel,
                                    const Budget& budget = {});

}  // namespace spectra
