#include "spectra/attractor.hpp"

#include "spectra/classify.hpp"
#include "spectra/heightsearch.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>

namespace spectra {

Lambda Lambda::exact(const mpq_class& re, const mpq_class& im)
{
    Lambda l;
    l.re_ = re;
    l.im_ = im;
    return l;
}

Lambda Lambda::algebraic(AlgebraicNumber a)
{
    Lambda l;
    l.alg_ = std::move(a);
    return l;
}

CInterval Lambda::enclosure() const
{
    if (alg_)
        return alg_->enclosure();
    return CInterval::point(re_, im_);
}

void Lambda::tighten() const
{
    if (!alg_)
        return;
    mpq_class r = alg_->box().radius;
    if (r > 0)
        alg_->refine(r / 4);
}

void Lambda::refine(const mpq_class& eps) const
{
    if (alg_)
        alg_->refine(eps);
}

bool Lambda::is_real() const { return alg_ ? alg_->is_real() : im_ == 0; }

std::complex<double> Lambda::approx() const
{
    if (alg_) {
        RootBox b = alg_->box();
        return {to_double(b.re), to_double(b.im)};
    }
    return {to_double(re_), to_double(im_)};
}

std::string Lambda::to_string(int digits) const
{
    CInterval e = enclosure();
    if (is_real())
        return to_decimal(e.re.mid(), digits);
    return to_decimal(e, digits);
}

const char* to_string(Connectivity c)
{
    switch (c) {
    case Connectivity::Connected:
        return "Connected";
    case Connectivity::Disconnected:
        return "Disconnected";
    case Connectivity::Unknown:
        return "Unknown";
    }
    return "?";
}

namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();

mpq_class pow2(int k)
{
    mpz_class p = 1;
    p <<= static_cast<unsigned>(std::abs(k));
    return k >= 0 ? mpq_class(p) : mpq_class(1, 1) / mpq_class(p);
}

Cmp compare(const Lambda& l, const std::function<RInterval()>& diff, const std::function<bool()>& tie)
{
    return compare_certified(diff, [&] { l.tighten(); }, [&] {
        if (l.is_exact())
            return true;  // the point enclosure straddles zero only when it is zero
        return tie();
    });
}

// |lambda| < 1, certified.
void require_inside_disc(const Lambda& l)
{
    Cmp c = compare(l, [&] { return norm2(l.enclosure()) - RInterval::point(1); },
                    [&] { return modulus_is_one(*l.algebraic()); });
    if (c != Cmp::Less)
        throw std::invalid_argument("attractor: |lambda| < 1 required");
}

// |lambda| against 1/2 for real lambda, exactly.
bool real_at_least_half(const Lambda& l)
{
    if (l.is_exact())
        return abs(l.exact_re()) * 2 >= 1;
    const AlgebraicNumber& a = *l.algebraic();
    return a.sign_of(IntPolynomial{-1, 2}) >= 0 || a.sign_of(IntPolynomial{1, 2}) <= 0;
}

// Exact value of sum b_j lambda^j == 0.
bool is_exact_relation(const Lambda& l, const std::vector<int>& b)
{
    std::vector<mpz_class> c(b.begin(), b.end());
    IntPolynomial p(c);
    if (p.is_zero())
        return true;
    if (l.algebraic())
        return l.algebraic()->is_root_of(p);
    mpq_class re = 0, im = 0;
    for (std::size_t j = c.size(); j-- > 0;) {
        mpq_class nr = re * l.exact_re() - im * l.exact_im() + mpq_class(c[j]);
        mpq_class ni = re * l.exact_im() + im * l.exact_re();
        re = nr;
        im = ni;
    }
    return re == 0 && im == 0;
}

std::vector<int> normalized_relation(const IntPolynomial& w)
{
    std::vector<int> b;
    for (const mpz_class& c : w.coeffs())
        b.push_back(static_cast<int>(c.get_si()));
    if (!b.empty() && b[0] < 0)
        for (int& x : b)
            x = -x;
    return b;
}

// Double ball model of the truncated power series at lambda.
struct Balls {
    std::vector<std::complex<double>> pm;  // lambda^k midpoints
    std::vector<double> pr;                // radii
    std::vector<double> tail;              // upper bound of sum_{j>k} |lambda|^j
};

Balls make_balls(const Lambda& l, int depth)
{
    l.refine(pow2(-70));
    CInterval e = l.enclosure();
    mpq_class cre = e.re.mid(), cim = e.im.mid();
    std::complex<double> c(to_double(cre), to_double(cim));
    // |lambda - c| <= half-diagonal of the box + |mid - c|
    mpq_class hw = std::max(e.re.width(), e.im.width());
    mpq_class dre = cre - c.real(), dim = cim - c.imag();
    double rl = std::sqrt(upper_double(dre * dre + dim * dim)) * (1 + 4 * kU) + upper_double(hw);
    double rho = (std::abs(c) * (1 + 4 * kU) + rl) * (1 + 4 * kU);
    Balls b;
    b.pm.resize(static_cast<std::size_t>(depth) + 1);
    b.pr.resize(static_cast<std::size_t>(depth) + 1);
    b.tail.resize(static_cast<std::size_t>(depth) + 1);
    b.pm[0] = 1;
    b.pr[0] = 0;
    for (int k = 0; k < depth; ++k) {
        std::size_t i = static_cast<std::size_t>(k);
        b.pm[i + 1] = b.pm[i] * c;
        b.pr[i + 1] = (b.pr[i] * (std::abs(c) + rl) + std::abs(b.pm[i]) * rl + 8 * kU * std::abs(b.pm[i + 1])) *
                      (1 + 8 * kU);
    }
    double pk = rho;
    for (int k = 0; k <= depth; ++k) {
        b.tail[static_cast<std::size_t>(k)] =
            rho < 1 ? pk / (1 - rho) * (1 + 1e-12) : std::numeric_limits<double>::infinity();
        pk *= rho;
    }
    return b;
}

struct SeriesNode {
    int k = 0;
    std::vector<int> b;
    std::complex<double> mid;
    double rad = 0;
};

class SeriesSearch {
public:
    SeriesSearch(const Lambda& l, const Balls& balls, int depth) : l_(l), balls_(balls), depth_(depth) {}

    struct Outcome {
        std::optional<std::vector<int>> relation;
        bool survived = false;
        double margin = std::numeric_limits<double>::infinity();
    };

    // Children of a node that survive pruning; pruned margins go to out.
    template <class Fn>
    void children(const SeriesNode& n, Outcome& out, Fn&& fn) const
    {
        int k = n.k + 1;
        std::size_t i = static_cast<std::size_t>(k);
        for (int bk = -1; bk <= 1; ++bk) {
            SeriesNode c;
            c.k = k;
            c.b = n.b;
            c.b.push_back(bk);
            c.mid = n.mid + static_cast<double>(bk) * balls_.pm[i];
            c.rad = n.rad + (bk != 0 ? balls_.pr[i] : 0.0) + 4 * kU * (std::abs(n.mid) + std::abs(balls_.pm[i]));
            double excess = std::abs(c.mid) * (1 - 4 * kU) - c.rad - balls_.tail[i];
            if (excess > 0) {
                out.margin = std::min(out.margin, excess);
                continue;
            }
            fn(std::move(c));
        }
    }

    bool relation_at(const SeriesNode& n) const
    {
        if (n.b.back() == 0 || std::abs(n.mid) > n.rad + 1e-12)
            return false;
        return is_exact_relation(l_, n.b);
    }

    void dfs(const SeriesNode& n, Outcome& out, std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
             const std::function<bool()>& stop) const
    {
        if (out.relation || nodes.fetch_add(1, std::memory_order_relaxed) >= budget || stop()) {
            out.survived = true;
            return;
        }
        if (relation_at(n)) {
            out.relation = n.b;
            return;
        }
        if (n.k == depth_) {
            out.survived = true;
            return;
        }
        children(n, out, [&](SeriesNode c) {
            if (!out.relation)
                dfs(c, out, nodes, budget, stop);
        });
    }

    SeriesNode root() const
    {
        SeriesNode r;
        r.b = {1};
        r.mid = 1;
        return r;
    }

    bool root_pruned(Outcome& out) const
    {
        double excess = 1 - balls_.tail[0];
        if (excess > 0) {
            out.margin = excess;
            return true;
        }
        return false;
    }

private:
    const Lambda& l_;
    const Balls& balls_;
    int depth_;
};

}  // namespace

ConnectivityResult connectivity(const Lambda& lambda, int depth, Exec exec, const Budget& budget)
{
    if (depth < 1)
        throw std::invalid_argument("connectivity: depth must be >= 1");
    require_inside_disc(lambda);
    ConnectivityResult res;
    res.depth = depth;

    if (const auto& a = lambda.algebraic()) {
        IntPolynomial p = a->defining();
        if (p.constant_term() != 0) {
            Budget small = budget;
            small.node_budget = std::min<std::uint64_t>(budget.node_budget, 1'000'000);
            try {
                HeightOneResult h = find_height_one_multiple(p, std::max(depth, p.degree()), small, exec);
                if (h.status == HeightStatus::Found) {
                    res.verdict = Connectivity::Connected;
                    res.method = "height-one multiple of the defining polynomial";
                    res.witness = normalized_relation(*h.witness);
                    res.nodes = h.nodes;
                    return res;
                }
            } catch (const WorkCapExceeded&) {
            }
        }
    }

    if (lambda.is_real()) {
        if (real_at_least_half(lambda)) {
            res.verdict = Connectivity::Connected;
            res.method = "real parameter with |lambda| >= 1/2: the attractor is an interval";
        } else {
            res.verdict = Connectivity::Disconnected;
            res.method = "real parameter with |lambda| < 1/2: the two halves are separated";
            RInterval m = abs(lambda.enclosure().re);
            // gap (1 - 2|lambda|) / (1 - |lambda|)
            res.margin = lower_double(((RInterval::point(1) - m * mpq_class(2)) / (RInterval::point(1) - m)).lo);
        }
        return res;
    }

    Balls balls = make_balls(lambda, depth);
    SeriesSearch search(lambda, balls, depth);
    SeriesSearch::Outcome rootout;
    res.method = "pruned power-series search";
    if (search.root_pruned(rootout)) {
        res.verdict = Connectivity::Disconnected;
        res.margin = rootout.margin;
        res.nodes = 1;
        return res;
    }

    std::atomic<std::uint64_t> nodes{0};
    std::vector<SeriesNode> frontier{search.root()};
    std::size_t want = exec == Exec::Parallel ? static_cast<std::size_t>(64 * worker_count()) : 1;
    while (frontier.size() < want && frontier.front().k < depth) {
        std::vector<SeriesNode> next;
        for (const SeriesNode& n : frontier) {
            if (search.relation_at(n)) {
                res.verdict = Connectivity::Connected;
                res.witness = n.b;
                res.nodes = nodes.load();
                return res;
            }
            search.children(n, rootout, [&](SeriesNode c) { next.push_back(std::move(c)); });
        }
        nodes.fetch_add(frontier.size());
        frontier.swap(next);
        if (frontier.empty())
            break;
    }

    std::vector<SeriesSearch::Outcome> outs(frontier.size());
    std::atomic<long> best{LONG_MAX};
    const std::uint64_t node_budget = budget.node_budget;
    auto run = [&](long i) {
        auto stop = [&] { return best.load(std::memory_order_relaxed) < i; };
        search.dfs(frontier[static_cast<std::size_t>(i)], outs[static_cast<std::size_t>(i)], nodes, node_budget, stop);
        if (outs[static_cast<std::size_t>(i)].relation) {
            long cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    };
    long count = static_cast<long>(frontier.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (long i = 0; i < count; ++i)
            run(i);
    } else {
        for (long i = 0; i < count && best.load() == LONG_MAX; ++i)
            run(i);
    }
    res.nodes = nodes.load();
    if (best.load() != LONG_MAX) {
        res.verdict = Connectivity::Connected;
        res.witness = *outs[static_cast<std::size_t>(best.load())].relation;
        while (res.witness.size() > 1 && res.witness.back() == 0)
            res.witness.pop_back();
        return res;
    }
    bool survived = false;
    double margin = rootout.margin;
    for (const auto& o : outs) {
        survived = survived || o.survived;
        margin = std::min(margin, o.margin);
    }
    if (!survived) {
        res.verdict = Connectivity::Disconnected;
        res.margin = margin;
    } else {
        res.verdict = Connectivity::Unknown;
        if (res.nodes >= node_budget)
            res.method += " (node budget exhausted)";
    }
    return res;
}

namespace {

// 2^d p((x + c) / 2): roots 2 r - c for the roots r of p.
IntPolynomial double_and_shift(const IntPolynomial& p, long c)
{
    int d = p.degree();
    IntPolynomial out;
    IntPolynomial lin{c, 1};
    IntPolynomial pw{1};
    for (int i = 0; i <= d; ++i) {
        mpz_class scale = p.coeff(static_cast<std::size_t>(i));
        scale <<= static_cast<unsigned>(d - i);
        out += pw * scale;
        pw = pw * lin;
    }
    return out;
}

// For non-real algebraic lambda: |2 lambda - c|^2 == 3 exactly.
bool shifted_modulus_is_three(const AlgebraicNumber& a, long c)
{
    IntPolynomial h = squarefree_part(double_and_shift(a.defining(), c));
    auto sys = std::make_shared<RootSystem>(h, a.refine_budget());
    Lambda l = Lambda::algebraic(a);
    std::size_t idx = sys->locate([&] {
        l.tighten();
        CInterval e = l.enclosure();
        return e * mpq_class(2) - CInterval::point(c, 0);
    });
    if (idx == RootSystem::npos)
        throw InvariantViolation("interior_criterion: shifted root not found");
    return squared_modulus_equals(AlgebraicNumber(sys, idx), 3);
}

}  // namespace

bool interior_criterion(const Lambda& lambda, unsigned budget_bits)
{
    (void)budget_bits;
    auto n2 = [&] { return norm2(lambda.enclosure()); };
    const std::optional<AlgebraicNumber>& a = lambda.algebraic();

    Cmp below_one = compare(lambda, [&] { return n2() - RInterval::point(1); },
                            [&] { return modulus_is_one(*a); });
    if (below_one != Cmp::Less)
        return false;
    Cmp vs_half = compare(lambda, [&] { return n2() - RInterval::point(mpq_class(1, 2)); },
                          [&] { return squared_modulus_equals(*a, mpq_class(1, 2)); });
    if (vs_half == Cmp::Less)
        return false;

    // |lambda|^2 - 1/2 - |Re lambda| >= 0. On the boundary, |2 lambda -+ 1|^2 = 3.
    Cmp re_test = compare(
        lambda, [&] { return n2() - RInterval::point(mpq_class(1, 2)) - abs(lambda.enclosure().re); },
        [&] {
            if (a->is_real())
                return a->is_root_of(IntPolynomial{-1, -2, 2}) || a->is_root_of(IntPolynomial{-1, 2, 2});
            bool pos = shifted_modulus_is_three(*a, 1);
            bool neg = shifted_modulus_is_three(*a, -1);
            if (pos && neg)
                return true;
            if (!pos && !neg)
                return false;
            Cmp re_sign = compare(lambda, [&] { return lambda.enclosure().re; }, [&] { return is_purely_imaginary(*a); });
            return pos ? re_sign != Cmp::Less : re_sign != Cmp::Greater;
        });
    return re_test != Cmp::Less;
}

LowerBound zn_lower_bound(const Lambda& lambda, int n, unsigned budget_bits)
{
    if (n < 0)
        throw std::invalid_argument("zn_lower_bound: n must be >= 0");
    LowerBound lb;
    const std::optional<AlgebraicNumber>& a = lambda.algebraic();
    bool interior = interior_criterion(lambda, budget_bits);
    if (!interior) {
        Cmp below_one = compare(lambda, [&] { return norm2(lambda.enclosure()) - RInterval::point(1); },
                                [&] { return modulus_is_one(*a); });
        Cmp vs_quarter = compare(lambda, [&] { return norm2(lambda.enclosure()) - RInterval::point(mpq_class(1, 4)); },
                                 [&] { return squared_modulus_equals(*a, mpq_class(1, 4)); });
        if (below_one != Cmp::Less || vs_quarter != Cmp::Greater)
            throw NotApplicable("zn_lower_bound: |lambda| is not in (1/2, 1) and the interior criterion fails");
    }
    lambda.refine(pow2(-100));
    RInterval n2 = norm2(lambda.enclosure());
    RInterval p = pow(n2, static_cast<unsigned>(n + 1));
    RInterval inv{1 / p.hi, 1 / p.lo};
    if (interior) {
        lb.clause = 2;
        lb.value = inv;
    } else {
        lb.clause = 1;
        lb.value = sqrt_enclosure(inv, 80);
    }
    return lb;
}

std::size_t Raster::marked() const
{
    return static_cast<std::size_t>(std::count(data.begin(), data.end(), std::uint8_t{1}));
}

Raster rasterize(const Lambda& lambda, int depth, int pixels, bool plus_minus, Exec exec)
{
    if (depth < 0 || depth > 30)
        throw WorkCapExceeded("rasterize: depth must be in [0, 30]");
    if (pixels < 1 || pixels > 16384)
        throw WorkCapExceeded("rasterize: pixels must be in [1, 16384]");
    require_inside_disc(lambda);
    std::complex<double> l = lambda.approx();
    double modulus = std::abs(l);

    Raster r;
    r.pixels = pixels;
    r.data.assign(static_cast<std::size_t>(pixels) * static_cast<std::size_t>(pixels), 0);
    // The {0,1} frame is the image of the {-1,1} frame under z -> (z + 1/(1 - lambda)) / 2.
    if (plus_minus) {
        r.half_width = 1 / (1 - modulus);
    } else {
        std::complex<double> c = 0.5 / (1.0 - l);
        r.center_re = c.real();
        r.center_im = c.imag();
        r.half_width = 0.5 / (1 - modulus);
    }
    double d0 = plus_minus ? -1 : 0, d1 = 1;

    int positions = depth + 1;
    int low = std::min(positions, 12);
    auto sums = [&](int from, int to) {
        std::vector<std::complex<double>> s{0};
        std::complex<double> pw = std::pow(l, from);
        for (int k = from; k < to; ++k, pw *= l) {
            std::vector<std::complex<double>> next;
            next.reserve(s.size() * 2);
            for (auto v : s)
                next.push_back(v + d0 * pw);
            for (auto v : s)
                next.push_back(v + d1 * pw);
            s.swap(next);
        }
        return s;
    };
    std::vector<std::complex<double>> lo = sums(0, low), hi = sums(low, positions);

    const double x0 = r.center_re - r.half_width, y1 = r.center_im + r.half_width;
    const double scale = pixels / (2 * r.half_width);
    auto mark = [&](std::complex<double> z) {
        long col = static_cast<long>(std::floor((z.real() - x0) * scale));
        long row = static_cast<long>(std::floor((y1 - z.imag()) * scale));
        col = std::clamp(col, 0L, static_cast<long>(pixels) - 1);
        row = std::clamp(row, 0L, static_cast<long>(pixels) - 1);
        std::uint8_t& cell = r.data[static_cast<std::size_t>(row) * static_cast<std::size_t>(pixels) +
                                    static_cast<std::size_t>(col)];
        std::atomic_ref<std::uint8_t>(cell).store(1, std::memory_order_relaxed);
    };
    long nh = static_cast<long>(hi.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
        for (long j = 0; j < nh; ++j)
            for (auto v : lo)
                mark(hi[static_cast<std::size_t>(j)] + v);
    } else {
        for (long j = 0; j < nh; ++j)
            for (auto v : lo)
                mark(hi[static_cast<std::size_t>(j)] + v);
    }
    return r;
}

void write_pgm(const Raster& r, std::ostream& out)
{
    out << "P5\n" << r.pixels << ' ' << r.pixels << "\n255\n";
    for (std::uint8_t v : r.data)
        out.put(v ? static_cast<char>(0) : static_cast<char>(255));
}

AttractorAnalysis analyze_attractor(const Lambda& lambda, int depth, int n, Exec exec, const Budget& budget)
{
    AttractorAnalysis a;
    a.connectivity = connectivity(lambda, depth, exec, budget);
    a.interior = interior_criterion(lambda, budget.precision_bits);
    try {
        a.bound = zn_lower_bound(lambda, n, budget.precision_bits);
    } catch (const NotApplicable&) {
    }
    a.lambda = lambda.enclosure();
    return a;
}

}  // namespace spectra
