#include "spectra/criteria.hpp"

#include "spectra/attractor.hpp"
#include "spectra/counting.hpp"
#include "spectra/spectrum.hpp"

#include <algorithm>

namespace spectra {

const char* to_string(Conclusion c)
{
    switch (c) {
    case Conclusion::DenseL0:
        return "DenseL0";
    case Conclusion::DenseL0AndL0:
        return "DenseL0AndL0";
    case Conclusion::Discrete:
        return "Discrete";
    case Conclusion::Inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::vector<std::string> Verdict::rule_ids() const
{
    std::vector<std::string> out;
    for (const RuleFiring& r : rules)
        out.push_back(r.id);
    return out;
}

bool Verdict::fired(const std::string& id) const
{
    return std::any_of(rules.begin(), rules.end(), [&](const RuleFiring& r) { return r.id == id; });
}

namespace {

std::string interval_string(const RInterval& v, int digits = 15)
{
    return "[" + to_decimal(v.lo, digits) + ", " + to_decimal(v.hi, digits) + "]";
}

std::string value_string(const AlgebraicNumber& a, int digits = 12)
{
    a.refine(mpq_class(1, 1) / mpq_class(mpz_class(1) << 60));
    CInterval e = a.enclosure();
    if (a.is_real())
        return to_decimal(e.re.mid(), digits);
    return to_decimal(e, digits);
}

const char* kCiteR0 =
    "q is not a root of any polynomial with coefficients in {-1,0,1}, so all 2^(n+1) sums in Y_n(q) are distinct "
    "and the pigeonhole principle forces l(q) = 0";
const char* kCiteR1 = "q is a Pisot number, so Lambda(q) is uniformly discrete (Garsia)";
const char* kCiteR2 =
    "q in (1,2) is not a Perron number, so l(q) = 0; if moreover q < sqrt 2 and -q is not a conjugate of q, "
    "then L(q) = 0";
const char* kCiteR3 = "q has a conjugate alpha with q|alpha| < 1, so l(q) = 0; with q < sqrt 2 also L(q) = 0";
const char* kCiteR4 = "q has a non-real conjugate alpha with q|alpha| = 1, so l(q) = 0; with q < sqrt 2 also L(q) = 0";
const char* kCiteR5 = "q is anti-Pisot and a root of a polynomial with coefficients in {-1,0,1}, so l(q) = 0";
const char* kCiteR6 = "q is the square root of a Pisot number without being Pisot itself, so l(q) = 0";
const char* kCiteR7 =
    "a conjugate lambda satisfies the interior criterion for the attractor, so z_n(q) = z_n(lambda) >= "
    "|lambda|^(-2(n+1)), which outgrows q^n when |lambda|^(-2) > q; hence l(q) = 0";

}  // namespace

AlgebraicNumber select_root(const IntPolynomial& f, std::optional<std::size_t> index,
                            std::optional<std::pair<mpq_class, mpq_class>> interval, unsigned budget_bits)
{
    IntPolynomial p = squarefree_part(f.primitive());
    std::optional<AlgebraicNumber> q;
    if (index) {
        q.emplace(AlgebraicNumber::root(p, *index, budget_bits));
    } else if (interval) {
        q.emplace(AlgebraicNumber::real_root_in(p, interval->first, interval->second, budget_bits));
    } else {
        q.emplace(AlgebraicNumber::largest_real_root(p, budget_bits));
    }
    if (!q->is_real())
        throw std::invalid_argument("select_root: the selected root is not real");
    if (q->sign_of(IntPolynomial{-1, 1}) <= 0 || q->sign_of(IntPolynomial{-2, 1}) >= 0)
        throw std::invalid_argument("select_root: the selected root is not in (1, 2)");
    return *q;
}

Verdict verdict(const IntPolynomial& f_in, const AlgebraicNumber& q_in, const VerdictOptions& options)
{
    const IntPolynomial p = f_in.primitive();
    if (!is_squarefree(p))
        throw std::invalid_argument("verdict: polynomial must be squarefree");
    if (p.degree() > static_cast<int>(options.budget.max_input_degree))
        throw DegreeOverflow("verdict: degree exceeds the configured maximum");
    if (q_in.sign_of(IntPolynomial{-1, 1}) <= 0 || q_in.sign_of(IntPolynomial{-2, 1}) >= 0)
        throw std::invalid_argument("verdict: q must lie in (1, 2)");

    // Work with q as a root of p so conjugate indices refer to one system.
    std::optional<AlgebraicNumber> qh;
    if (q_in.defining() == p) {
        qh.emplace(q_in);
    } else {
        auto sys = std::make_shared<RootSystem>(p, options.budget.precision_bits);
        std::size_t idx = sys->locate([&] { return q_in.enclosure(); });
        if (idx == RootSystem::npos)
            throw std::invalid_argument("verdict: q is not a root of f");
        qh.emplace(sys, idx);
    }
    const AlgebraicNumber& q = *qh;
    auto sys = q.system();

    Verdict v;
    v.f = p;
    v.root_index = q.index();
    v.classification = classify(p, q);
    const NumberClass& nc = v.classification;
    if (!nc.minimality_verified)
        v.caveats.push_back("irreducibility of f not proven: " + nc.minimality_note);
    v.q_below_sqrt2 = q.sign_of(IntPolynomial{-2, 0, 1}) < 0;
    auto q_enc = [&] { return q.real_enclosure(); };

    std::vector<RuleFiring> fired;

    // Height-one premise, shared by R0 and R5.
    std::optional<HeightOneResult> search;
    try {
        search = find_height_one_multiple(p, std::max(options.dmax, p.degree()), options.budget, options.exec);
    } catch (const WorkCapExceeded& e) {
        v.caveats.push_back(std::string("height-one search: ") + e.what());
    }

    // R0
    if (search && search->status == HeightStatus::NoneUpTo) {
        auto cert = three_root_filter(p, options.budget.precision_bits);
        std::string which = "f";
        if (!cert) {
            cert = three_root_filter(reverse(remove_zero_roots(p)), options.budget.precision_bits);
            which = "reverse(f)";
        }
        if (cert) {
            RuleFiring r{"R0", kCiteR0, v.q_below_sqrt2, {}};
            r.certificate["filter_polynomial"] = which;
            r.certificate["triple_product"] = interval_string(cert->product);
            r.certificate["bound"] = "0.32475952641916";
            r.certificate["search"] = search->note;
            if (v.q_below_sqrt2)
                r.certificate["L_upgrade"] = "the squared roots have product below the bound too, so l(q^2) = 0 with "
                                             "q^2 < 2, giving L(q) = 0";
            fired.push_back(r);
        } else {
            v.notes.push_back("no height-one multiple of degree <= " + std::to_string(search->dmax) +
                              " found; this is bounded evidence only");
        }
    }

    // R1
    if (nc.is_pisot) {
        RuleFiring r{"R1", kCiteR1, false, {}};
        auto it = nc.margins.find("pisot");
        if (it != nc.margins.end())
            r.certificate["modulus_gap"] = to_decimal(it->second, 12);
        fired.push_back(r);
    }

    // R2
    if (!nc.is_perron) {
        RuleFiring r{"R2", kCiteR2, false, {}};
        for (const ConjugateInfo& c : nc.conjugates)
            if (c.vs_q != Cmp::Less) {
                AlgebraicNumber a(sys, c.index);
                r.certificate["conjugate_" + std::to_string(c.index)] =
                    value_string(a) + std::string(c.vs_q == Cmp::Equal ? " with |alpha| = q exactly"
                                                                       : " with |alpha| > q certified");
            }
        bool neg = negation_conjugate_test(p);
        r.certificate["minus_q_is_conjugate"] = neg ? "true" : "false";
        r.gives_L = v.q_below_sqrt2 && !neg;
        if (v.q_below_sqrt2) {
            // Independent route through q^2.
            try {
                IntPolynomial g = squarefree_part(graeffe(p));
                auto cert = three_root_filter(reverse(remove_zero_roots(g)), options.budget.precision_bits);
                if (cert)
                    v.notes.push_back("q^2 is not a root of a height-one polynomial: three roots of reverse(graeffe(f)) "
                                      "have modulus product " +
                                      interval_string(cert->product, 10) +
                                      " < 0.32476, so l(q^2) = 0, which also gives L(q) = 0");
            } catch (const std::exception& e) {
                v.notes.push_back(std::string("q^2 filter not evaluated: ") + e.what());
            }
        }
        fired.push_back(r);
    }

    // R3 and R4
    {
        RuleFiring r3{"R3", kCiteR3, v.q_below_sqrt2, {}};
        RuleFiring r4{"R4", kCiteR4, false, {}};
        // The q^2 step needs alpha^2 non-real, or f a polynomial in x^4 (then
        // -q^2 is a conjugate of q^2).
        bool quartic_powers = detect_power_structure(p).m % 4 == 0;
        for (const ConjugateInfo& c : nc.conjugates) {
            AlgebraicNumber a(sys, c.index);
            if (c.product == Cmp::Less) {
                RInterval prod = q_enc() * sqrt_enclosure(norm2(a.enclosure()), 80);
                r3.certificate["conjugate_" + std::to_string(c.index)] =
                    value_string(a) + ", q|alpha| in " + interval_string(prod, 12);
            } else if (c.product == Cmp::Equal && !c.real) {
                std::string how;
                for (const std::string& t : c.tie_certificates)
                    how += (how.empty() ? "" : "; ") + t;
                r4.certificate["conjugate_" + std::to_string(c.index)] = value_string(a) + ", q|alpha| = 1: " + how;
                bool imaginary = is_purely_imaginary(a);
                if (v.q_below_sqrt2 && (!imaginary || quartic_powers))
                    r4.gives_L = true;
                else if (v.q_below_sqrt2)
                    v.notes.push_back("alpha = " + value_string(a) +
                                      " is purely imaginary and f is not a polynomial in x^4: the L(q) = 0 step "
                                      "through q^2 is not available");
            } else if (c.product == Cmp::Equal && c.real) {
                v.notes.push_back("real conjugate " + value_string(a) +
                                  " with q|alpha| = 1 exactly: no criterion covers this case");
            }
        }
        if (!r3.certificate.empty())
            fired.push_back(r3);
        if (!r4.certificate.empty())
            fired.push_back(r4);
    }

    // R5
    if (nc.is_anti_pisot) {
        if (search && search->status == HeightStatus::Found) {
            RuleFiring r{"R5", kCiteR5, false, {}};
            r.certificate["height_one_multiple"] = search->witness->to_string();
            r.certificate["cofactor"] = search->cofactor->to_string();
            fired.push_back(r);
        } else {
            v.notes.push_back("q is anti-Pisot but no height-one multiple was found");
        }
    }

    // R6
    {
        PowerStructure ps = detect_power_structure(p);
        if (ps.m % 2 == 0 && !nc.is_pisot) {
            IntPolynomial g = squarefree_part(ps.inner.inflate(ps.m / 2));
            auto gs = std::make_shared<RootSystem>(g, options.budget.precision_bits);
            std::size_t idx = gs->locate([&] {
                RInterval e = sqr(q_enc());
                return CInterval{e, RInterval::point(0)};
            });
            AlgebraicNumber q2(gs, idx);
            NumberClass gc = classify(g, q2);
            if (gc.is_pisot) {
                RuleFiring r{"R6", kCiteR6, false, {}};
                r.certificate["g"] = g.to_string();
                r.certificate["q_squared"] = value_string(q2);
                if (!gc.minimality_verified)
                    v.caveats.push_back("irreducibility of g in f(x) = g(x^2) not proven");
                fired.push_back(r);
            }
        }
    }

    // R7
    {
        RuleFiring r{"R7", kCiteR7, false, {}};
        std::optional<AlgebraicNumber> inv_q;
        for (const ConjugateInfo& c : nc.conjugates) {
            if (c.real || c.vs_one != Cmp::Less)
                continue;
            AlgebraicNumber a(sys, c.index);
            Lambda lam = Lambda::algebraic(a);
            if (!interior_criterion(lam, options.budget.precision_bits))
                continue;
            // q |lambda|^2 < 1
            Cmp cmp = compare_certified([&] { return q_enc() * norm2(a.enclosure()) - RInterval::point(1); },
                                        [&] { sys->tighten(); },
                                        [&] {
                                            if (!inv_q) {
                                                auto rs = std::make_shared<RootSystem>(
                                                    squarefree_part(reverse(p)), options.budget.precision_bits);
                                                std::size_t i = rs->locate([&] {
                                                    RInterval e = q_enc();
                                                    return CInterval{RInterval{1 / e.hi, 1 / e.lo}, RInterval::point(0)};
                                                });
                                                inv_q.emplace(rs, i);
                                            }
                                            return conjugate_pair_product_equals(a, *inv_q,
                                                                                 options.budget.pair_degree_cap);
                                        });
            if (cmp != Cmp::Less)
                continue;
            a.refine(mpq_class(1, 1) / mpq_class(mpz_class(1) << 80));
            RInterval n2 = norm2(a.enclosure());
            RInterval base{1 / n2.hi, 1 / n2.lo};
            RInterval re = a.enclosure().re;
            r.certificate["conjugate_" + std::to_string(c.index)] =
                value_string(a) + ", |lambda|^-2 in " + interval_string(base, 10) + " > q, |Re lambda| in " +
                interval_string(abs(re), 10) + " <= |lambda|^2 - 1/2 in " +
                interval_string(n2 - RInterval::point(mpq_class(1, 2)), 10);
        }
        if (!r.certificate.empty())
            fired.push_back(r);
    }

    v.q = q_enc();
    bool pisot = nc.is_pisot;
    for (RuleFiring& r : fired) {
        if (pisot && r.id != "R1")
            v.preempted.push_back(r);
        else
            v.rules.push_back(r);
    }
    if (pisot) {
        v.conclusion = Conclusion::Discrete;
        if (!v.preempted.empty())
            v.notes.push_back("denseness rules preempted by the Pisot rule");
    } else if (!v.rules.empty()) {
        v.l_zero = true;
        v.L_zero = std::any_of(v.rules.begin(), v.rules.end(), [](const RuleFiring& r) { return r.gives_L; });
        if (v.L_zero && !v.q_below_sqrt2)
            throw InvariantViolation("verdict: L(q) = 0 claimed without q < sqrt 2");
        v.conclusion = v.L_zero ? Conclusion::DenseL0AndL0 : Conclusion::DenseL0;
        if (!v.L_zero && !v.q_below_sqrt2)
            v.notes.push_back("q > sqrt 2: L(q) = 0 cannot be claimed by these criteria");
    } else {
        v.conclusion = Conclusion::Inconclusive;
        if (nc.is_salem)
            v.notes.push_back("q is a Salem number: whether l(q) = 0 is open for these inputs");
        else
            v.notes.push_back("no criterion applies: q is Perron, has no conjugate with q|alpha| <= 1 of the covered "
                              "kinds, and no conjugate satisfies the interior criterion");
    }
    return v;
}

Crosscheck empirical_crosscheck(const Verdict& v, const AlgebraicNumber& q, int n_max, const Budget& budget, Exec exec)
{
    if (n_max < 1)
        throw std::invalid_argument("empirical_crosscheck: n_max must be >= 1");
    Crosscheck cc;
    std::vector<std::uint64_t> counts = count_series(v.f, n_max, DigitSet::zero_one(), budget, exec);
    q.refine(mpq_class(1, 1) / mpq_class(mpz_class(1) << 100));
    RInterval qe = q.real_enclosure();
    for (int n = 1; n <= n_max; ++n) {
        CrosscheckRow row;
        row.n = n;
        row.count = counts[static_cast<std::size_t>(n)];
        RInterval qn = pow(qe, static_cast<unsigned>(n));
        row.ratio = RInterval::point(mpq_class(mpz_class(std::to_string(row.count)))) / qn;
        row.min_lambda = smallest_positive_lambda(v.f, q, n, budget, exec).value;
        cc.rows.push_back(row);
    }
    // Lambda_n grows with n, so the minimum can only fall.
    const RInterval& first = cc.rows[static_cast<std::size_t>(std::min(n_max, 5) - 1)].min_lambda;
    const RInterval& mid = cc.rows[static_cast<std::size_t>((n_max + 1) / 2 - 1)].min_lambda;
    const RInterval& last = cc.rows.back().min_lambda;
    cc.trend = first.lo == last.lo && first.hi == last.hi ? "constant" : "nonincreasing";
    if (v.conclusion == Conclusion::Discrete) {
        cc.tension = last.hi * 2 < mid.lo;
        cc.note = cc.tension ? "minimum gap halves between n_max/2 and n_max although the verdict is Discrete"
                             : "minimum gap stable, consistent with a discrete spectrum";
    } else if (v.conclusion == Conclusion::Inconclusive) {
        cc.note = "trend reported only; the verdict stays Inconclusive";
    } else {
        cc.note = last.hi < first.lo ? "minimum gap decreasing, consistent with l(q) = 0"
                                     : "no decrease observed up to n_max; l(q) = 0 is asymptotic";
    }
    return cc;
}

}  // namespace spectra
