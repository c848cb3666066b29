#include "spectra/kernels.hpp"

#include "spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#include <parallel/algorithm>
#endif

namespace spectra {

int worker_count()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

DigitCodec::DigitCodec(std::vector<int> d, int pos) : digits(std::move(d)), positions(pos)
{
    if (digits.empty())
        throw std::invalid_argument("digit set must be nonempty");
    if (!std::is_sorted(digits.begin(), digits.end()) ||
        std::adjacent_find(digits.begin(), digits.end()) != digits.end())
        throw std::invalid_argument("digit set must be sorted and distinct");
    long double span = std::pow(static_cast<long double>(digits.size()), positions);
    enabled = span <= 1.8e19L;
}

std::uint64_t DigitCodec::weight(int position) const
{
    std::uint64_t w = 1;
    for (int i = 0; i < position; ++i)
        w *= digits.size();
    return w;
}

std::vector<int> DigitCodec::decode(std::uint64_t code) const
{
    std::vector<int> out(static_cast<std::size_t>(positions));
    for (int i = 0; i < positions; ++i) {
        out[static_cast<std::size_t>(i)] = digits[code % digits.size()];
        code /= digits.size();
    }
    return out;
}

std::uint64_t DigitCodec::encode(const std::vector<int>& values) const
{
    std::uint64_t code = 0;
    for (std::size_t i = values.size(); i-- > 0;)
        code = code * digits.size() + index_of(values[i]);
    return code;
}

std::size_t DigitCodec::index_of(int digit) const
{
    auto it = std::find(digits.begin(), digits.end(), digit);
    if (it == digits.end())
        throw std::invalid_argument("digit not in digit set");
    return static_cast<std::size_t>(it - digits.begin());
}

ResidueSet residue_origin(int dim, const DigitCodec& codec)
{
    ResidueSet s;
    s.dim = dim;
    s.coords.assign(static_cast<std::size_t>(dim), 0);
    if (codec.enabled)
        s.codes.push_back(0);
    return s;
}

namespace {

struct MergeInput {
    const ResidueSet* s;
    std::vector<std::vector<std::int64_t>> shifts;  // digits[j] * row
    std::vector<std::uint64_t> code_add;            // j * weight
    std::vector<bool> nonzero_digit;
};

inline int lex_cmp_shifted(const std::int64_t* a, const std::int64_t* sa, const std::int64_t* b,
                           const std::int64_t* sb, int dim)
{
    for (int i = 0; i < dim; ++i) {
        std::int64_t x = a[i] + sa[i], y = b[i] + sb[i];
        if (x != y)
            return x < y ? -1 : 1;
    }
    return 0;
}

// Merges lists j over index ranges [lo[j], hi[j]) into `out`.
void merge_range(const MergeInput& in, const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi,
                 std::vector<std::int64_t>& out_coords, std::vector<std::uint64_t>& out_codes,
                 std::vector<std::uint64_t>* relations)
{
    const int dim = in.s->dim;
    const std::size_t m = in.shifts.size();
    const bool codes = in.s->has_codes();
    std::vector<std::size_t> idx(lo);
    std::vector<std::int64_t> last(static_cast<std::size_t>(dim));
    bool have_last = false;
    for (;;) {
        std::size_t best = m;
        for (std::size_t j = 0; j < m; ++j) {
            if (idx[j] >= hi[j])
                continue;
            if (best == m ||
                lex_cmp_shifted(in.s->at(idx[j]), in.shifts[j].data(), in.s->at(idx[best]), in.shifts[best].data(),
                                dim) < 0)
                best = j;
        }
        if (best == m)
            break;
        const std::int64_t* src = in.s->at(idx[best]);
        const std::int64_t* sh = in.shifts[best].data();
        bool dup = have_last;
        bool zero = true;
        for (int i = 0; i < dim; ++i) {
            std::int64_t v = src[i] + sh[i];
            if (have_last && v != last[static_cast<std::size_t>(i)])
                dup = false;
            zero = zero && v == 0;
        }
        std::uint64_t code = codes ? in.s->codes[idx[best]] + in.code_add[best] : 0;
        if (zero && in.nonzero_digit[best] && relations && codes)
            relations->push_back(code);
        if (!dup) {
            for (int i = 0; i < dim; ++i) {
                last[static_cast<std::size_t>(i)] = src[i] + sh[i];
                out_coords.push_back(last[static_cast<std::size_t>(i)]);
            }
            if (codes)
                out_codes.push_back(code);
            have_last = true;
        }
        ++idx[best];
    }
}

// First index i in s with s[i] + shift >= key (lexicographically).
std::size_t lower_bound_shifted(const ResidueSet& s, const std::vector<std::int64_t>& shift,
                                const std::vector<std::int64_t>& key)
{
    std::size_t lo = 0, hi = s.size();
    std::vector<std::int64_t> zero(static_cast<std::size_t>(s.dim), 0);
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (lex_cmp_shifted(s.at(mid), shift.data(), key.data(), zero.data(), s.dim) < 0)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

ResidueSet extend(const ResidueSet& s, const std::int64_t* row, const DigitCodec& codec, int position, Exec exec,
                  std::vector<std::uint64_t>* relations)
{
    MergeInput in;
    in.s = &s;
    const std::size_t m = codec.digits.size();
    const std::uint64_t w = s.has_codes() ? codec.weight(position) : 0;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<std::int64_t> sh(static_cast<std::size_t>(s.dim));
        for (int i = 0; i < s.dim; ++i)
            sh[static_cast<std::size_t>(i)] = codec.digits[j] * row[i];
        in.shifts.push_back(std::move(sh));
        in.code_add.push_back(j * w);
        in.nonzero_digit.push_back(codec.digits[j] != 0);
    }

    ResidueSet out;
    out.dim = s.dim;
    const std::size_t n = s.size();
    const int chunks = exec == Exec::Parallel ? std::max(1, worker_count() * 4) : 1;
    if (chunks == 1 || n < 4096) {
        out.coords.reserve(n * m * static_cast<std::size_t>(s.dim));
        std::vector<std::size_t> lo(m, 0), hi(m, n);
        merge_range(in, lo, hi, out.coords, out.codes, relations);
        return out;
    }

    // Value-partitioned parallel merge: chunk c holds every shifted element in
    // [splitter_c, splitter_{c+1}) from every list, so no duplicate crosses a
    // chunk boundary and the concatenation equals the serial merge.
    std::vector<std::vector<std::size_t>> bounds(static_cast<std::size_t>(chunks) + 1, std::vector<std::size_t>(m));
    for (std::size_t j = 0; j < m; ++j) {
        bounds[0][j] = 0;
        bounds[static_cast<std::size_t>(chunks)][j] = n;
    }
#pragma omp parallel for schedule(static)
    for (int c = 1; c < chunks; ++c) {
        std::size_t pos = n * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
        std::vector<std::int64_t> key(static_cast<std::size_t>(s.dim));
        for (int i = 0; i < s.dim; ++i)
            key[static_cast<std::size_t>(i)] = s.at(pos)[i] + in.shifts[0][static_cast<std::size_t>(i)];
        for (std::size_t j = 0; j < m; ++j)
            bounds[static_cast<std::size_t>(c)][j] = lower_bound_shifted(s, in.shifts[j], key);
    }

    std::vector<std::vector<std::int64_t>> part_coords(static_cast<std::size_t>(chunks));
    std::vector<std::vector<std::uint64_t>> part_codes(static_cast<std::size_t>(chunks));
    std::vector<std::vector<std::uint64_t>> part_rel(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < chunks; ++c)
        merge_range(in, bounds[static_cast<std::size_t>(c)], bounds[static_cast<std::size_t>(c) + 1],
                    part_coords[static_cast<std::size_t>(c)], part_codes[static_cast<std::size_t>(c)],
                    relations ? &part_rel[static_cast<std::size_t>(c)] : nullptr);

    std::vector<std::size_t> off_c(static_cast<std::size_t>(chunks) + 1, 0), off_k(static_cast<std::size_t>(chunks) + 1, 0);
    for (int c = 0; c < chunks; ++c) {
        off_c[static_cast<std::size_t>(c) + 1] = off_c[static_cast<std::size_t>(c)] + part_coords[static_cast<std::size_t>(c)].size();
        off_k[static_cast<std::size_t>(c) + 1] = off_k[static_cast<std::size_t>(c)] + part_codes[static_cast<std::size_t>(c)].size();
    }
    out.coords.resize(off_c.back());
    out.codes.resize(off_k.back());
#pragma omp parallel for schedule(static)
    for (int c = 0; c < chunks; ++c) {
        std::copy(part_coords[static_cast<std::size_t>(c)].begin(), part_coords[static_cast<std::size_t>(c)].end(),
                  out.coords.begin() + static_cast<std::ptrdiff_t>(off_c[static_cast<std::size_t>(c)]));
        std::copy(part_codes[static_cast<std::size_t>(c)].begin(), part_codes[static_cast<std::size_t>(c)].end(),
                  out.codes.begin() + static_cast<std::ptrdiff_t>(off_k[static_cast<std::size_t>(c)]));
    }
    if (relations)
        for (const auto& r : part_rel)
            relations->insert(relations->end(), r.begin(), r.end());
    return out;
}

ResidueSet enumerate_residues(const ResidueBasis& basis, int first, int last, const DigitCodec& codec, Exec exec,
                              std::size_t cap, std::vector<std::uint64_t>* relations,
                              const std::function<void(int, const ResidueSet&)>& on_step)
{
    if (first < 0 || last > basis.n || first > last + 1)
        throw std::invalid_argument("enumeration range outside the residue basis");
    ResidueSet s = residue_origin(basis.dim, codec);
    for (int k = first; k <= last; ++k) {
        if (s.size() > cap / codec.digits.size())
            throw WorkCapExceeded("enumeration would generate more than " + std::to_string(cap) + " values");
        s = extend(s, basis.row(k), codec, k - first, exec, relations);
        if (on_step)
            on_step(k, s);
    }
    return s;
}

void evaluate_values(const ResidueSet& s, const PowerTable& t, std::vector<double>& mid, std::vector<double>& err,
                     Exec exec)
{
    const std::size_t n = s.size();
    const int dim = s.dim;
    mid.assign(n, 0.0);
    err.assign(n, 0.0);
    // Each term c_i * m_i is exact up to one rounding; the running sum adds
    // at most dim more. gamma bounds the accumulated relative error.
    const double gamma = (dim + 3) * std::numeric_limits<double>::epsilon();
    auto body = [&](std::size_t k) {
        const std::int64_t* c = s.at(k);
        double acc = 0, mag = 0, e = 0;
        for (int i = 0; i < dim; ++i) {
            double ci = static_cast<double>(c[i]);
            double term = ci * t.mid[static_cast<std::size_t>(i)];
            acc += term;
            mag += std::fabs(term);
            e += std::fabs(ci) * t.err[static_cast<std::size_t>(i)];
        }
        mid[k] = acc;
        err[k] = (e + gamma * mag) * (1 + 4 * std::numeric_limits<double>::epsilon()) +
                 std::numeric_limits<double>::denorm_min();
    };
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (std::size_t k = 0; k < n; ++k)
            body(k);
    } else {
        for (std::size_t k = 0; k < n; ++k)
            body(k);
    }
}

std::vector<std::size_t> sort_by_value(const std::vector<double>& mid, Exec exec)
{
    std::vector<std::size_t> order(mid.size());
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t a, std::size_t b) { return mid[a] < mid[b] || (mid[a] == mid[b] && a < b); };
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
        __gnu_parallel::sort(order.begin(), order.end(), less);
        return order;
    }
#endif
    (void)exec;
    std::sort(order.begin(), order.end(), less);
    return order;
}

std::vector<SweepCandidate> sweep_min_positive(const std::vector<std::size_t>& order, const std::vector<double>& amid,
                                               const std::vector<double>& aerr, const std::vector<double>& bmid,
                                               const std::vector<double>& berr, Exec exec)
{
    const std::size_t na = order.size(), nb = bmid.size();
    std::vector<double> sorted(na);
    double max_aerr = 0;
    for (std::size_t i = 0; i < na; ++i) {
        sorted[i] = amid[order[i]];
        max_aerr = std::max(max_aerr, aerr[i]);
    }

    auto scan = [&](std::size_t b, std::vector<SweepCandidate>& out) {
        const double target = -bmid[b];
        const double slack = 2 * (max_aerr + berr[b]);
        std::size_t i = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), target - slack) -
                                                 sorted.begin());
        double first_positive = std::numeric_limits<double>::infinity();
        for (; i < na; ++i) {
            std::size_t a = order[i];
            double s = amid[a] + bmid[b];
            double e = (aerr[a] + berr[b]) * (1 + 4 * std::numeric_limits<double>::epsilon()) +
                       std::fabs(s) * std::numeric_limits<double>::epsilon();
            if (s - e > first_positive + slack)
                break;
            if (s + e < 0)
                continue;
            SweepCandidate c{a, b, s, e, s - e <= 0};
            if (!c.ambiguous && s < first_positive)
                first_positive = s;
            out.push_back(c);
        }
    };

    std::vector<SweepCandidate> result;
    if (exec == Exec::Parallel) {
        const int chunks = std::max(1, worker_count() * 8);
        std::vector<std::vector<SweepCandidate>> parts(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
        for (int c = 0; c < chunks; ++c) {
            std::size_t lo = nb * static_cast<std::size_t>(c) / static_cast<std::size_t>(chunks);
            std::size_t hi = nb * (static_cast<std::size_t>(c) + 1) / static_cast<std::size_t>(chunks);
            for (std::size_t b = lo; b < hi; ++b)
                scan(b, parts[static_cast<std::size_t>(c)]);
        }
        for (auto& p : parts)
            result.insert(result.end(), p.begin(), p.end());
    } else {
        for (std::size_t b = 0; b < nb; ++b)
            scan(b, result);
    }
    return result;
}

}  // namespace spectra
