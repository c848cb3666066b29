#include "spectra/classify.hpp"

#include "spectra/errors.hpp"
#include "spectra/irreducible.hpp"

#include <map>
#include <mutex>
#include <optional>

namespace spectra {

const char* to_string(Cmp c)
{
    switch (c) {
    case Cmp::Less:
        return "less";
    case Cmp::Equal:
        return "equal";
    case Cmp::Greater:
        return "greater";
    }
    return "?";
}

Cmp compare_certified(const std::function<RInterval()>& diff, const std::function<void()>& tighten,
                      const std::function<bool()>& tie)
{
    bool tie_checked = false;
    for (;;) {
        RInterval e = diff();
        if (e.certainly_positive())
            return Cmp::Greater;
        if (e.certainly_negative())
            return Cmp::Less;
        if (!tie_checked) {
            tie_checked = true;
            if (tie())
                return Cmp::Equal;
        }
        tighten();
    }
}

namespace {

const IntPolynomial& cached_pair_product(const IntPolynomial& p, unsigned cap)
{
    static std::mutex mu;
    static std::map<std::string, IntPolynomial> cache;
    std::lock_guard lock(mu);
    std::string key = p.to_csv() + "/" + std::to_string(cap);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, pair_product_polynomial(p, cap)).first;
    return it->second;
}

CInterval neg(const CInterval& z) { return {-z.re, -z.im}; }

}  // namespace

bool conjugate_pair_product_equals(const AlgebraicNumber& alpha, const AlgebraicNumber& tau, unsigned pair_degree_cap)
{
    const IntPolynomial& P = cached_pair_product(alpha.defining(), pair_degree_cap);
    IntPolynomial g = gcd(P, tau.defining());
    if (g.degree() < 1 || !tau.is_root_of(g))
        return false;

    // tau is the product of exactly `mult` root pairs.
    unsigned mult = 0;
    std::vector<IntPolynomial> parts = squarefree_decomposition(P);
    for (std::size_t k = 0; k < parts.size() && mult == 0; ++k)
        if (parts[k].degree() >= 1 && tau.is_root_of(parts[k]))
            mult = static_cast<unsigned>(k + 1);
    if (mult == 0)
        throw InvariantViolation("pair product root lost in squarefree decomposition");

    auto& sys = *alpha.system();
    const std::size_t partner = sys.conjugate_of(alpha.index());
    const std::size_t a = std::min(alpha.index(), partner), b = std::max(alpha.index(), partner);
    for (;;) {
        std::vector<RootBox> boxes = sys.boxes();
        RootBox t = tau.box();
        unsigned hits = 0;
        bool ours = false;
        for (std::size_t i = 0; i < boxes.size(); ++i)
            for (std::size_t j = i + 1; j < boxes.size(); ++j) {
                CInterval prod = boxes[i].enclosure() * boxes[j].enclosure();
                if (t.intersects(prod)) {
                    ++hits;
                    if (i == a && j == b)
                        ours = true;
                }
            }
        if (hits == mult)
            return ours;
        if (hits < mult)
            throw InvariantViolation("fewer root pairs than the multiplicity of their product");
        sys.tighten();
        tau.system()->tighten();
    }
}

bool modulus_is_one(const AlgebraicNumber& alpha)
{
    if (alpha.is_real())
        return alpha.is_root_of(IntPolynomial{-1, 1}) || alpha.is_root_of(IntPolynomial{1, 1});
    const IntPolynomial& p = alpha.defining();
    IntPolynomial g = gcd(p, reverse(p));
    if (g.degree() < 1 || !alpha.is_root_of(g))
        return false;
    auto& sys = *alpha.system();
    std::size_t inv_idx = sys.locate([&] { return inverse(alpha.enclosure()); });
    return inv_idx == sys.conjugate_of(alpha.index());
}

bool squared_modulus_equals(const AlgebraicNumber& alpha, const mpq_class& c)
{
    if (c <= 0)
        return false;
    IntPolynomial t(std::vector<mpz_class>{-c.get_num(), c.get_den()});
    if (alpha.is_real()) {
        // alpha^2 = c
        IntPolynomial sq(std::vector<mpz_class>{-c.get_num(), 0, c.get_den()});
        return alpha.is_root_of(sq);
    }
    AlgebraicNumber tau = AlgebraicNumber::root(t, 0, alpha.refine_budget());
    return conjugate_pair_product_equals(alpha, tau);
}

bool is_purely_imaginary(const AlgebraicNumber& alpha)
{
    // -alpha must be a root, and then it must be the conjugate of alpha.
    if (alpha.is_real() || !alpha.is_root_of(alpha.defining().reflect()))
        return false;
    auto& sys = *alpha.system();
    std::size_t idx = sys.locate([&] {
        CInterval e = alpha.enclosure();
        return CInterval{-e.re, -e.im};
    });
    return idx == sys.conjugate_of(alpha.index());
}

NumberClass classify(const IntPolynomial& p_in, const AlgebraicNumber& q_in)
{
    const IntPolynomial p = p_in.primitive();
    if (!is_squarefree(p))
        throw std::invalid_argument("classify: polynomial must be squarefree");

    std::optional<AlgebraicNumber> q_holder;
    if (q_in.defining() == p) {
        q_holder.emplace(q_in);
    } else {
        auto sys = std::make_shared<RootSystem>(p, q_in.refine_budget());
        std::size_t idx = sys->locate([&] { return q_in.enclosure(); });
        if (idx == RootSystem::npos)
            throw std::invalid_argument("classify: q is not a root of p");
        q_holder.emplace(sys, idx);
    }
    const AlgebraicNumber& q = *q_holder;
    if (!q.is_real())
        throw std::invalid_argument("classify: q must be real");

    auto sys = q.system();
    auto tighten = [&] { sys->tighten(); };
    auto q_enc = [&] { return q.real_enclosure(); };

    std::optional<AlgebraicNumber> q2, inv_q2;
    auto square_target = [&]() -> const AlgebraicNumber& {
        if (!q2) {
            auto s = std::make_shared<RootSystem>(squarefree_part(graeffe(p)), sys->budget());
            std::size_t idx = s->locate([&] {
                RInterval e = sqr(q_enc());
                return CInterval{e, RInterval::point(0)};
            });
            q2.emplace(s, idx);
        }
        return *q2;
    };
    auto inverse_square_target = [&]() -> const AlgebraicNumber& {
        if (!inv_q2) {
            auto s = std::make_shared<RootSystem>(squarefree_part(reverse(graeffe(p))), sys->budget());
            std::size_t idx = s->locate([&] {
                RInterval e = sqr(q_enc());
                return CInterval{RInterval{1 / e.hi, 1 / e.lo}, RInterval::point(0)};
            });
            inv_q2.emplace(s, idx);
        }
        return *inv_q2;
    };

    NumberClass nc;
    for (std::size_t i = 0; i < sys->size(); ++i) {
        if (i == q.index())
            continue;
        AlgebraicNumber alpha(sys, i);
        ConjugateInfo info;
        info.index = i;
        info.real = alpha.is_real();
        auto mod2 = [&] { return norm2(alpha.enclosure()); };

        info.vs_one = compare_certified([&] { return mod2() - RInterval::point(1); }, tighten, [&] {
            bool tie = modulus_is_one(alpha);
            if (tie)
                info.tie_certificates.push_back(
                    info.real ? "|alpha| = 1: alpha is +1 or -1 exactly"
                              : "|alpha| = 1: alpha is a root of gcd(p, reverse p) and 1/alpha is its complex conjugate");
            return tie;
        });

        info.vs_q = compare_certified([&] { return mod2() - sqr(q_enc()); }, tighten, [&] {
            bool tie;
            if (info.real) {
                tie = q.is_root_of(p.reflect()) && sys->locate([&] { return neg(q.enclosure()); }) == i;
                if (tie)
                    info.tie_certificates.push_back("|alpha| = q: alpha = -q, since q is a root of p(-x)");
                return tie;
            }
            tie = conjugate_pair_product_equals(alpha, square_target());
            if (tie)
                info.tie_certificates.push_back(
                    "|alpha| = q: alpha*conj(alpha) is the root q^2 of the pair-product polynomial");
            return tie;
        });

        info.product = compare_certified([&] { return mod2() * sqr(q_enc()) - RInterval::point(1); }, tighten, [&] {
            bool tie;
            if (info.real) {
                mpz_class s = alpha.box().re < 0 ? -1 : 1;
                tie = q.is_root_of(reverse(p).scale_argument(s)) && sys->locate([&] {
                    CInterval inv = inverse(q.enclosure());
                    return s < 0 ? neg(inv) : inv;
                }) == i;
                if (tie)
                    info.tie_certificates.push_back("q|alpha| = 1: alpha = +-1/q, since q is a root of reverse(p)(+-x)");
                return tie;
            }
            tie = conjugate_pair_product_equals(alpha, inverse_square_target());
            if (tie)
                info.tie_certificates.push_back(
                    "q|alpha| = 1: alpha*conj(alpha) is the root 1/q^2 of the pair-product polynomial");
            return tie;
        });
        nc.conjugates.push_back(std::move(info));
    }

    nc.q = q.real_enclosure();
    for (auto& c : nc.conjugates) {
        c.box = sys->box(c.index);
        c.modulus = sqrt_enclosure(norm2(c.box.enclosure()), 96);
    }

    std::size_t below = 0, above = 0, on = 0, reach_q = 0;
    mpq_class max_mod_hi = 0, pisot_margin, perron_margin;
    mpq_class anti_margin = -1;
    for (const auto& c : nc.conjugates) {
        below += c.vs_one == Cmp::Less;
        on += c.vs_one == Cmp::Equal;
        above += c.vs_one == Cmp::Greater;
        reach_q += c.vs_q != Cmp::Less;
        max_mod_hi = std::max(max_mod_hi, c.modulus.hi);
    }
    nc.is_perron = reach_q == 0;
    nc.is_pisot = below == nc.conjugates.size();
    nc.is_salem = above == 0 && on > 0;
    nc.is_anti_pisot = below == 1 && above >= 1;

    if (nc.is_pisot)
        nc.margins["pisot"] = 1 - max_mod_hi;
    if (nc.is_perron)
        nc.margins["perron"] = nc.q.lo - max_mod_hi;
    if (nc.is_salem)
        nc.exact["salem"] = "a conjugate lies on the unit circle (exact) and none lies outside";
    if (nc.is_anti_pisot) {
        mpq_class m;
        bool first = true;
        for (const auto& c : nc.conjugates) {
            mpq_class gap = c.vs_one == Cmp::Less ? mpq_class(1 - c.modulus.hi) : mpq_class(c.modulus.lo - 1);
            if (c.vs_one == Cmp::Equal)
                continue;
            if (first || gap < m)
                m = gap;
            first = false;
        }
        nc.margins["anti_pisot"] = m;
    }

    IrreducibilityCheck irr = check_irreducible(p);
    nc.minimality_verified = irr.proven;
    nc.minimality_note = irr.note;
    return nc;
}

}  // namespace spectra
