#include "spectra/heightsearch.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <complex>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace spectra {

const char* to_string(HeightStatus s)
{
    switch (s) {
    case HeightStatus::Found:
        return "Found";
    case HeightStatus::NoneUpTo:
        return "NoneUpTo";
    case HeightStatus::Filtered:
        return "Filtered";
    }
    return "?";
}

namespace {

using cd = std::complex<double>;

struct Node {
    int k = 0;
    std::vector<std::int64_t> g;
    std::vector<int> p;
    std::vector<cd> partial;  // p_0 + ... + p_k beta^k per root
};

// Cofactor search for one fixed cofactor degree E.
class CofactorSearch {
public:
    CofactorSearch(const std::vector<std::int64_t>& f, const std::vector<cd>& roots, int E, int cap)
        : f_(f), d_(static_cast<int>(f.size()) - 1), E_(E), D_(E + d_), cap_(cap), roots_(roots)
    {
        std::size_t r = roots.size();
        pw_.assign(r, std::vector<cd>(static_cast<std::size_t>(D_) + 1));
        tail_.assign(r, std::vector<double>(static_cast<std::size_t>(D_) + 2, 0.0));
        slack_.assign(r, 0.0);
        for (std::size_t i = 0; i < r; ++i) {
            cd x = 1;
            for (int j = 0; j <= D_; ++j) {
                pw_[i][static_cast<std::size_t>(j)] = x;
                x *= roots[i];
            }
            // tail_[i][k] = sum_{j=k+1}^{D} |beta|^j
            for (int k = D_; k >= 0; --k) {
                double next = k + 1 <= D_ ? std::abs(pw_[i][static_cast<std::size_t>(k) + 1]) : 0.0;
                tail_[i][static_cast<std::size_t>(k)] = tail_[i][static_cast<std::size_t>(k) + 1] + next;
            }
            slack_[i] = 1e-9 * (1.0 + tail_[i][0]);
        }
    }

    Node root() const
    {
        Node n;
        n.k = 0;
        n.g.assign(static_cast<std::size_t>(E_) + 1, 0);
        n.p.assign(static_cast<std::size_t>(D_) + 1, 0);
        n.g[0] = 1;
        n.p[0] = static_cast<int>(f_[0]);
        n.partial.assign(roots_.size(), cd(static_cast<double>(f_[0])));
        return n;
    }

    bool pruned(const Node& n) const
    {
        for (std::size_t i = 0; i < roots_.size(); ++i)
            if (std::abs(n.partial[i]) > tail_[i][static_cast<std::size_t>(n.k)] + slack_[i])
                return true;
        return false;
    }

    // Children in ascending order of the new coefficient of p.
    template <class Fn>
    void children(const Node& n, Fn&& fn) const
    {
        int k = n.k + 1;
        std::int64_t s = 0;
        for (int i = 1; i <= std::min(k, d_); ++i)
            s += f_[static_cast<std::size_t>(i)] * n.g[static_cast<std::size_t>(k - i)];
        for (int pk = -1; pk <= 1; ++pk) {
            std::int64_t g = (pk - s) * f_[0];
            if (g > cap_ || g < -cap_)
                continue;
            if (k == E_ && g != 1 && g != -1)
                continue;
            Node c;
            c.k = k;
            c.g = n.g;
            c.p = n.p;
            c.g[static_cast<std::size_t>(k)] = g;
            c.p[static_cast<std::size_t>(k)] = pk;
            c.partial = n.partial;
            for (std::size_t i = 0; i < roots_.size(); ++i)
                c.partial[i] += static_cast<double>(pk) * pw_[i][static_cast<std::size_t>(k)];
            if (pruned(c))
                continue;
            fn(std::move(c));
        }
    }

    // Completes p at a leaf; false when a coefficient leaves {-1,0,1}.
    bool complete(Node& n) const
    {
        for (int j = E_ + 1; j <= D_; ++j) {
            std::int64_t t = 0;
            for (int i = j - E_; i <= std::min(j, d_); ++i)
                t += f_[static_cast<std::size_t>(i)] * n.g[static_cast<std::size_t>(j - i)];
            if (t < -1 || t > 1)
                return false;
            n.p[static_cast<std::size_t>(j)] = static_cast<int>(t);
        }
        return true;
    }

    // Depth-first search below n; returns the first leaf in child order.
    std::optional<Node> dfs(const Node& n, std::atomic<std::uint64_t>& nodes, std::uint64_t budget,
                            const std::function<bool()>& stop) const
    {
        if (nodes.fetch_add(1, std::memory_order_relaxed) >= budget || stop())
            return std::nullopt;
        if (n.k == E_) {
            Node leaf = n;
            if (complete(leaf))
                return leaf;
            return std::nullopt;
        }
        std::optional<Node> found;
        children(n, [&](Node c) {
            if (!found)
                found = dfs(c, nodes, budget, stop);
        });
        return found;
    }

    int E() const { return E_; }

private:
    const std::vector<std::int64_t>& f_;
    int d_, E_, D_, cap_;
    std::vector<cd> roots_;
    std::vector<std::vector<cd>> pw_;
    std::vector<std::vector<double>> tail_;
    std::vector<double> slack_;
};

std::vector<cd> approximate_roots(const IntPolynomial& f)
{
    std::vector<cd> out;
    for (const RootBox& b : isolate_roots(squarefree_part(f), mpq_class(1, 1) / mpq_class(mpz_class(1) << 60)))
        out.emplace_back(to_double(b.re), to_double(b.im));
    return out;
}

}  // namespace

HeightOneResult find_height_one_multiple(const IntPolynomial& f_in, int dmax, const Budget& budget, Exec exec,
                                         int coefficient_cap)
{
    if (f_in.is_zero() || f_in.degree() < 1)
        throw std::invalid_argument("find_height_one_multiple: f must have degree >= 1");
    if (f_in.constant_term() == 0)
        throw std::invalid_argument("find_height_one_multiple: f(0) must be nonzero");
    if (dmax < f_in.degree())
        throw std::invalid_argument("find_height_one_multiple: dmax < deg f");
    IntPolynomial f = f_in.primitive();
    HeightOneResult res;
    res.dmax = dmax;
    res.coefficient_cap = coefficient_cap;

    // p = f g with p height-one forces |lc f| = |f(0)| = 1 (Gauss lemma).
    if (abs(f.leading()) != 1 || abs(f.constant_term()) != 1) {
        res.proof = true;
        res.note = "leading or constant coefficient of the primitive part has modulus > 1";
        return res;
    }
    std::vector<std::int64_t> fc;
    for (const mpz_class& c : f.coeffs()) {
        if (!c.fits_slong_p() || abs(c) > (mpz_class(1) << 40))
            throw WorkCapExceeded("find_height_one_multiple: coefficient too large");
        fc.push_back(c.get_si());
    }
    std::vector<cd> roots = approximate_roots(f);
    std::atomic<std::uint64_t> nodes{0};
    const std::uint64_t node_budget = budget.node_budget;

    for (int E = 0; E + f.degree() <= dmax; ++E) {
        CofactorSearch search(fc, roots, E, coefficient_cap);
        Node start = search.root();
        if (search.pruned(start))
            continue;

        // Breadth-first frontier, kept in child order.
        std::vector<Node> frontier{start};
        std::size_t want = exec == Exec::Parallel ? static_cast<std::size_t>(64 * worker_count()) : 1;
        while (frontier.size() < want && frontier.front().k < E) {
            std::vector<Node> next;
            for (const Node& n : frontier)
                search.children(n, [&](Node c) { next.push_back(std::move(c)); });
            nodes.fetch_add(frontier.size(), std::memory_order_relaxed);
            frontier.swap(next);
            if (frontier.empty())
                break;
        }

        std::vector<std::optional<Node>> hits(frontier.size());
        std::atomic<long> best{LONG_MAX};
        auto run = [&](long i) {
            auto stop = [&] { return best.load(std::memory_order_relaxed) < i; };
            hits[static_cast<std::size_t>(i)] = search.dfs(frontier[static_cast<std::size_t>(i)], nodes, node_budget, stop);
            if (hits[static_cast<std::size_t>(i)]) {
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
        if (nodes.load() >= node_budget)
            throw WorkCapExceeded("find_height_one_multiple: node budget exhausted at cofactor degree " +
                                  std::to_string(E));
        if (best.load() != LONG_MAX) {
            const Node& w = *hits[static_cast<std::size_t>(best.load())];
            std::vector<mpz_class> pc(w.p.begin(), w.p.end()), gc(w.g.begin(), w.g.end());
            res.status = HeightStatus::Found;
            res.witness = IntPolynomial(pc);
            res.cofactor = IntPolynomial(gc);
            res.nodes = nodes.load();
            if (!(f * *res.cofactor == *res.witness) || !res.witness->is_height_one())
                throw InvariantViolation("find_height_one_multiple: witness does not verify");
            return res;
        }
    }
    res.nodes = nodes.load();
    res.note = "no multiple of degree <= " + std::to_string(dmax) + " with cofactor coefficients bounded by " +
               std::to_string(coefficient_cap);
    return res;
}

std::optional<FilterCertificate> min_triple_product(const IntPolynomial& p, unsigned bits)
{
    IntPolynomial s = remove_zero_roots(squarefree_part(p));
    if (s.degree() < 3)
        return std::nullopt;
    std::vector<RootBox> boxes = isolate_roots(s, mpq_class(1) / mpq_class(mpz_class(1) << bits));
    std::vector<std::pair<RInterval, std::size_t>> mods;
    for (std::size_t i = 0; i < boxes.size(); ++i)
        mods.emplace_back(norm2(boxes[i].enclosure()), i);
    std::stable_sort(mods.begin(), mods.end(),
                     [](const auto& a, const auto& b) { return a.first.mid() < b.first.mid(); });
    FilterCertificate cert;
    cert.product_squared = RInterval::point(1);
    for (int j = 0; j < 3; ++j) {
        cert.roots.push_back(boxes[mods[static_cast<std::size_t>(j)].second]);
        cert.product_squared = cert.product_squared * mods[static_cast<std::size_t>(j)].first;
    }
    cert.product = sqrt_enclosure(cert.product_squared, bits);
    return cert;
}

std::optional<FilterCertificate> three_root_filter(const IntPolynomial& f, unsigned budget_bits)
{
    for (unsigned bits = 60; bits <= budget_bits; bits *= 2) {
        auto cert = min_triple_product(f, bits);
        if (!cert)
            return std::nullopt;
        if (cert->product_squared.hi < kTripleBoundSquared)
            return cert;
        if (cert->product_squared.lo >= kTripleBoundSquared)
            return std::nullopt;
    }
    return std::nullopt;
}

namespace {

struct SampleOutcome {
    bool used = false;
    double value = 0;
    RInterval product;
    IntPolynomial poly;
};

SampleOutcome evaluate_sample(const IntPolynomial& p)
{
    SampleOutcome o;
    o.poly = p;
    auto cert = min_triple_product(p, 40);
    if (!cert)
        return o;
    o.used = true;
    o.product = cert->product;
    o.value = to_double(cert->product.mid());
    return o;
}

SamplerResult reduce(const std::vector<SampleOutcome>& outs)
{
    SamplerResult r;
    bool have = false;
    double best = 0;
    for (const SampleOutcome& o : outs) {
        if (!o.used) {
            ++r.skipped;
            continue;
        }
        ++r.samples;
        if (!have || o.value < best) {
            have = true;
            best = o.value;
            r.min_product = o.product;
            r.witness = o.poly;
        }
    }
    return r;
}

}  // namespace

SamplerResult claim_sampler(int degree_max, std::uint64_t samples, std::uint64_t seed, Exec exec)
{
    if (samples < 1)
        throw std::invalid_argument("claim_sampler: samples must be >= 1");
    if (degree_max < 3)
        throw std::invalid_argument("claim_sampler: degree_max must be >= 3");
    std::vector<SampleOutcome> outs(samples);
    auto one = [&](std::uint64_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);
        int D = std::uniform_int_distribution<int>(3, degree_max)(rng);
        std::uniform_int_distribution<int> sign(0, 1), digit(-1, 1);
        std::vector<mpz_class> c(static_cast<std::size_t>(D) + 1);
        c[0] = sign(rng) ? 1 : -1;
        for (int k = 1; k < D; ++k)
            c[static_cast<std::size_t>(k)] = digit(rng);
        c[static_cast<std::size_t>(D)] = sign(rng) ? 1 : -1;
        outs[i] = evaluate_sample(IntPolynomial(c));
    };
    long n = static_cast<long>(samples);
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i)
            one(static_cast<std::uint64_t>(i));
    } else {
        for (long i = 0; i < n; ++i)
            one(static_cast<std::uint64_t>(i));
    }
    return reduce(outs);
}

SamplerResult claim_exhaustive(int degree_max, Exec exec)
{
    if (degree_max < 3 || degree_max > 14)
        throw std::invalid_argument("claim_exhaustive: degree_max must be in [3, 14]");
    std::vector<IntPolynomial> polys;
    for (int D = 3; D <= degree_max; ++D) {
        std::uint64_t inner = 1;
        for (int k = 1; k < D; ++k)
            inner *= 3;
        for (int s0 = -1; s0 <= 1; s0 += 2)
            for (int sd = -1; sd <= 1; sd += 2)
                for (std::uint64_t m = 0; m < inner; ++m) {
                    std::vector<mpz_class> c(static_cast<std::size_t>(D) + 1);
                    c[0] = s0;
                    c[static_cast<std::size_t>(D)] = sd;
                    std::uint64_t t = m;
                    for (int k = 1; k < D; ++k, t /= 3)
                        c[static_cast<std::size_t>(k)] = static_cast<int>(t % 3) - 1;
                    polys.emplace_back(c);
                }
    }
    std::vector<SampleOutcome> outs(polys.size());
    long n = static_cast<long>(polys.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i)
            outs[static_cast<std::size_t>(i)] = evaluate_sample(polys[static_cast<std::size_t>(i)]);
    } else {
        for (long i = 0; i < n; ++i)
            outs[static_cast<std::size_t>(i)] = evaluate_sample(polys[static_cast<std::size_t>(i)]);
    }
    return reduce(outs);
}

}  // namespace spectra
