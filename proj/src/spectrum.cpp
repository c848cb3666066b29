#include "spectra/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace spectra {

DigitSet DigitSet::parse(const std::string& text)
{
    if (text == "01" || text == "y")
        return zero_one();
    if (text == "ternary" || text == "lambda")
        return signed_ternary();
    if (text == "pm1")
        return plus_minus_one();
    DigitSet d;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        d.digits.push_back(std::stoi(item));
    std::sort(d.digits.begin(), d.digits.end());
    if (d.digits.empty() || std::adjacent_find(d.digits.begin(), d.digits.end()) != d.digits.end())
        throw std::invalid_argument("digit set must be a nonempty list of distinct integers");
    return d;
}

int DigitSet::max_abs() const
{
    int m = 0;
    for (int d : digits)
        m = std::max(m, std::abs(d));
    return m;
}

bool DigitSet::contains_zero() const { return std::find(digits.begin(), digits.end(), 0) != digits.end(); }

bool DigitSet::nonnegative() const { return digits.front() >= 0; }

std::string DigitSet::name() const
{
    std::string s = "{";
    for (std::size_t i = 0; i < digits.size(); ++i)
        s += (i ? "," : "") + std::to_string(digits[i]);
    return s + "}";
}

namespace {

RInterval from_mid_err(double mid, double err)
{
    mpq_class m(mid), e(err);
    return {m - e, m + e};
}

PowerTable power_table(const AlgebraicNumber& q, const ResidueBasis& basis)
{
    q.refine(dyadic(1, -120));
    RInterval x = q.real_enclosure();
    PowerTable t;
    RInterval p = RInterval::point(mpq_class(1, basis.scale));
    for (int i = 0; i < basis.dim; ++i) {
        mpq_class c = p.mid();
        double d = to_double(c);
        mpq_class dq(d);
        mpq_class e = std::max(mpq_class(abs(p.hi - dq)), mpq_class(abs(dq - p.lo)));
        t.mid.push_back(d);
        t.err.push_back(upper_double(e));
        p = p * x;
    }
    return t;
}

void check_root(const IntPolynomial& f, const AlgebraicNumber& q)
{
    if (f.degree() < 1)
        throw std::invalid_argument("polynomial must have degree >= 1");
    if (!q.is_real())
        throw std::invalid_argument("q must be real");
    if (!q.is_root_of(f))
        throw std::invalid_argument("q is not a root of the polynomial");
}

}  // namespace

int exact_compare(const ResidueVector& a, const ResidueVector& b, const AlgebraicNumber& q)
{
    if (a == b)
        return 0;
    IntPolynomial num = (a - b).numerator();
    if (num.is_zero())
        return 0;
    return q.sign_of(num);
}

ResidueVector SpectrumReport::residue(std::size_t rank) const { return basis.to_residue(set.at(order.at(rank))); }

RInterval SpectrumReport::value(std::size_t rank) const
{
    std::size_t i = order.at(rank);
    return from_mid_err(mid[i], err[i]);
}

RInterval SpectrumReport::exact_value(std::size_t rank, unsigned bits) const
{
    q->refine(dyadic(1, -static_cast<long>(bits)));
    return residue(rank).eval(q->real_enclosure());
}

RInterval SpectrumReport::gap(std::size_t rank) const { return value(rank + 1) - value(rank); }

double SpectrumReport::gap_mid(std::size_t rank) const { return mid[order.at(rank + 1)] - mid[order.at(rank)]; }

std::vector<int> SpectrumReport::coefficients(std::size_t rank) const
{
    if (!set.has_codes())
        return {};
    DigitCodec codec(digits.digits, n + 1);
    return codec.decode(set.codes[order.at(rank)]);
}

mpq_class finalized_bound(const AlgebraicNumber& q, int n, unsigned bits)
{
    q.refine(dyadic(1, -static_cast<long>(bits)));
    RInterval x = q.real_enclosure();
    return pow(x, static_cast<unsigned>(n + 1)).lo;
}

SpectrumReport enumerate_spectrum(const IntPolynomial& f, const AlgebraicNumber& q, int n, const DigitSet& digits,
                                  const Budget& budget, Exec exec)
{
    if (n < 0)
        throw std::invalid_argument("n must be >= 0");
    check_root(f, q);
    SpectrumReport r;
    r.f = f.primitive();
    r.q.emplace(q);
    r.n = n;
    r.digits = digits;
    r.basis = make_basis(r.f, n, digits.max_abs());
    DigitCodec codec(digits.digits, n + 1);
    r.set = enumerate_residues(r.basis, 0, n, codec, exec, budget.max_values);
    PowerTable t = power_table(q, r.basis);
    evaluate_values(r.set, t, r.mid, r.err, exec);
    r.order = sort_by_value(r.mid, exec);

    // Runs of overlapping enclosures are ordered exactly; values that are
    // equal at q (possible when f is reducible) are merged.
    std::vector<std::size_t> fixed;
    fixed.reserve(r.order.size());
    for (std::size_t i = 0; i < r.order.size();) {
        std::size_t j = i + 1;
        double hi = r.mid[r.order[i]] + r.err[r.order[i]];
        while (j < r.order.size() && r.mid[r.order[j]] - r.err[r.order[j]] <= hi) {
            hi = std::max(hi, r.mid[r.order[j]] + r.err[r.order[j]]);
            ++j;
        }
        if (j == i + 1) {
            fixed.push_back(r.order[i]);
        } else {
            std::vector<std::size_t> run(r.order.begin() + static_cast<std::ptrdiff_t>(i),
                                         r.order.begin() + static_cast<std::ptrdiff_t>(j));
            auto res = [&](std::size_t k) { return r.basis.to_residue(r.set.at(k)); };
            std::stable_sort(run.begin(), run.end(),
                             [&](std::size_t a, std::size_t b) { return exact_compare(res(a), res(b), q) < 0; });
            fixed.push_back(run[0]);
            for (std::size_t k = 1; k < run.size(); ++k) {
                if (exact_compare(res(fixed.back()), res(run[k]), q) == 0)
                    ++r.merged_exact_ties;
                else
                    fixed.push_back(run[k]);
            }
        }
        i = j;
    }
    r.order = std::move(fixed);

    if (digits.nonnegative() && digits.contains_zero() && digits.digits.size() > 1) {
        r.finalized = true;
        r.finalized_upto = finalized_bound(q, n) * digits.digits[1];
    }
    return r;
}

GapStats gap_stats(const SpectrumReport& r, const mpq_class& tail_fraction)
{
    if (tail_fraction <= 0 || tail_fraction >= 1)
        throw std::invalid_argument("tail fraction must lie in (0, 1)");
    GapStats g;
    g.finalized = r.finalized;
    std::size_t prefix = r.size();
    if (r.finalized) {
        prefix = 0;
        while (prefix < r.size() && r.value(prefix).hi < r.finalized_upto)
            ++prefix;
    }
    g.prefix_size = prefix;
    if (prefix < 2)
        throw EmptyTail("fewer than two values in the finalized prefix");
    const std::size_t gaps = prefix - 1;
    mpq_class start = mpq_class(static_cast<unsigned long>(gaps)) * (1 - tail_fraction);
    g.tail_start = static_cast<std::size_t>(mpz_class(start.get_num() / start.get_den()).get_ui());
    if (g.tail_start >= gaps)
        throw EmptyTail("tail window holds no gaps");

    std::size_t best = 0;
    for (std::size_t i = 0; i < gaps; ++i) {
        if (i == 0 || r.gap_mid(i) < r.gap_mid(best)) {
            best = i;
            g.record_min_positions.push_back(i);
        }
    }
    std::size_t tmin = g.tail_start, tmax = g.tail_start;
    for (std::size_t i = g.tail_start; i < gaps; ++i) {
        if (r.gap_mid(i) < r.gap_mid(tmin))
            tmin = i;
        if (r.gap_mid(i) > r.gap_mid(tmax))
            tmax = i;
    }
    g.min_gap = {best, r.gap(best)};
    g.tail_min_gap = {tmin, r.gap(tmin)};
    g.max_gap_tail = {tmax, r.gap(tmax)};
    return g;
}

MinGap min_gap(const SpectrumReport& r)
{
    if (r.size() < 2)
        throw EmptyTail("a gap needs at least two values");
    std::size_t best = 0;
    for (std::size_t i = 1; i + 1 < r.size(); ++i)
        if (r.gap_mid(i) < r.gap_mid(best))
            best = i;
    auto gap_res = [&](std::size_t i) { return r.residue(i + 1) - r.residue(i); };
    auto gap_err = [&](std::size_t i) { return r.err[r.order[i]] + r.err[r.order[i + 1]]; };
    const double reach = r.gap_mid(best) + 2 * gap_err(best);
    RInterval bv = r.gap(best);
    ResidueVector bres = gap_res(best);
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (i == best || r.gap_mid(i) - 2 * gap_err(i) > reach || r.gap(i).lo > bv.hi)
            continue;
        ResidueVector ri = gap_res(i);
        if (exact_compare(ri, bres, *r.q) < 0) {
            best = i;
            bres = ri;
            bv = r.gap(i);
        }
    }
    MinGap m;
    m.rank = best;
    m.residue = bres;
    r.q->refine(dyadic(1, -100));
    m.value = bres.eval(r.q->real_enclosure());
    return m;
}

LambdaMin smallest_positive_lambda(const IntPolynomial& f_in, const AlgebraicNumber& q, int n, const Budget& budget,
                                   Exec exec)
{
    if (n < 1)
        throw std::invalid_argument("n must be >= 1");
    check_root(f_in, q);
    const IntPolynomial f = f_in.primitive();
    const DigitSet ternary = DigitSet::signed_ternary();
    ResidueBasis basis = make_basis(f, n, 1);
    const int h = (n + 2) / 2;
    DigitCodec low_codec(ternary.digits, h), high_codec(ternary.digits, n + 1 - h);

    std::vector<std::uint64_t> low_rel, high_rel;
    ResidueSet A = enumerate_residues(basis, 0, h - 1, low_codec, exec, budget.max_values, &low_rel);
    ResidueSet B = enumerate_residues(basis, h, n, high_codec, exec, budget.max_values, &high_rel);

    PowerTable t = power_table(q, basis);
    std::vector<double> amid, aerr, bmid, berr;
    evaluate_values(A, t, amid, aerr, exec);
    evaluate_values(B, t, bmid, berr, exec);
    std::vector<std::size_t> order = sort_by_value(amid, exec);
    std::vector<SweepCandidate> cands = sweep_min_positive(order, amid, aerr, bmid, berr, exec);

    auto join = [&](std::uint64_t ca, std::uint64_t cb) {
        std::vector<int> w = low_codec.decode(ca);
        std::vector<int> hi = high_codec.decode(cb);
        w.insert(w.end(), hi.begin(), hi.end());
        return w;
    };
    const std::uint64_t low_zero = low_codec.encode(std::vector<int>(static_cast<std::size_t>(h), 0));
    const std::uint64_t high_zero = high_codec.encode(std::vector<int>(static_cast<std::size_t>(n + 1 - h), 0));

    std::set<std::vector<int>> relations;
    auto add_relation = [&](std::vector<int> w) {
        bool nonzero = false;
        for (int v : w)
            nonzero = nonzero || v != 0;
        if (!nonzero)
            return;
        for (std::size_t i = w.size(); i-- > 0;)
            if (w[i] != 0) {
                if (w[i] < 0)
                    for (int& v : w)
                        v = -v;
                break;
            }
        relations.insert(std::move(w));
    };
    for (auto c : low_rel)
        add_relation(join(c, high_zero));
    for (auto c : high_rel)
        add_relation(join(low_zero, c));

    auto sum_residue = [&](const SweepCandidate& c) {
        std::vector<std::int64_t> s(static_cast<std::size_t>(basis.dim));
        for (int i = 0; i < basis.dim; ++i)
            s[static_cast<std::size_t>(i)] = A.at(c.a)[i] + B.at(c.b)[i];
        return basis.to_residue(s.data());
    };
    const ResidueVector zero = ResidueVector::zero(basis.modulus);

    std::vector<SweepCandidate> positive;
    for (const auto& c : cands) {
        if (!c.ambiguous) {
            positive.push_back(c);
            continue;
        }
        ResidueVector s = sum_residue(c);
        int sign = s.is_zero() ? 0 : exact_compare(s, zero, q);
        if (sign == 0)
            add_relation(join(A.codes[c.a], B.codes[c.b]));
        else if (sign > 0)
            positive.push_back(c);
    }
    if (positive.empty())
        throw InvariantViolation("no positive element found in the signed digit set");

    std::size_t best = 0;
    for (std::size_t i = 1; i < positive.size(); ++i)
        if (positive[i].mid < positive[best].mid)
            best = i;
    ResidueVector bres = sum_residue(positive[best]);
    const double reach = positive[best].mid + positive[best].err;
    for (std::size_t i = 0; i < positive.size(); ++i) {
        if (i == best || positive[i].mid - positive[i].err > reach)
            continue;
        ResidueVector ri = sum_residue(positive[i]);
        if (exact_compare(ri, bres, q) < 0) {
            best = i;
            bres = ri;
        }
    }

    LambdaMin out;
    out.residue = bres;
    q.refine(dyadic(1, -100));
    out.value = bres.eval(q.real_enclosure());
    out.witness = join(A.codes[positive[best].a], B.codes[positive[best].b]);
    out.relations_found = relations.size();
    for (const auto& w : relations) {
        if (out.relations.size() >= 32)
            break;
        out.relations.push_back(w);
    }
    out.low_size = A.size();
    out.high_size = B.size();
    return out;
}

bool pigeonhole_check(const SpectrumReport& r)
{
    if (r.size() < 2)
        return true;
    RInterval g = min_gap(r).value;
    r.q->refine(dyadic(1, -100));
    RInterval x = r.q->real_enclosure();
    RInterval top = pow(x, static_cast<unsigned>(r.n + 1)) / (x - RInterval::point(1));
    mpq_class spread = r.digits.digits.back() - r.digits.digits.front();
    RInterval bound = top * (spread / mpq_class(static_cast<unsigned long>(r.size() - 1)));
    if (g.lo > bound.hi)
        throw InvariantViolation("minimal gap exceeds the pigeonhole bound");
    return g.hi <= bound.lo;
}

}  // namespace spectra
