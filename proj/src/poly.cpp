#include "spectra/poly.hpp"

#include "spectra/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spectra {

namespace {

const mpz_class kZero = 0;

std::string normalize_minus(std::string_view text)
{
    // U+2212 MINUS SIGN is common in copied formulas.
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
            static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            out.push_back('-');
            i += 2;
        } else {
            out.push_back(text[i]);
        }
    }
    return out;
}

std::vector<mpz_class> parse_csv(const std::string& text)
{
    std::vector<mpz_class> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::string t;
        for (char ch : item)
            if (!std::isspace(static_cast<unsigned char>(ch)))
                t.push_back(ch);
        if (t.empty())
            throw std::invalid_argument("empty coefficient in polynomial list");
        if (t[0] == '+')
            t.erase(0, 1);
        mpz_class c;
        if (c.set_str(t, 10) != 0)
            throw std::invalid_argument("bad coefficient '" + item + "'");
        out.push_back(c);
    }
    return out;
}

std::vector<mpz_class> parse_symbolic(const std::string& text)
{
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch)))
            s.push_back(ch);
    if (s.empty())
        throw std::invalid_argument("empty polynomial");

    std::vector<mpz_class> out;
    std::size_t i = 0;
    bool first = true;
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in '" + s + "'");
        }
        first = false;

        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            ++i;
        mpz_class coef = 1;
        bool has_coef = i > start;
        if (has_coef)
            coef = mpz_class(s.substr(start, i - start), 10);
        if (i < s.size() && s[i] == '*') {
            if (!has_coef)
                throw std::invalid_argument("dangling '*' in '" + s + "'");
            ++i;
        }
        unsigned long power = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'X')) {
            ++i;
            power = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                std::size_t ps = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
                    ++i;
                if (i == ps)
                    throw std::invalid_argument("missing exponent in '" + s + "'");
                power = std::stoul(s.substr(ps, i - ps));
            }
        } else if (!has_coef) {
            throw std::invalid_argument("bad term in '" + s + "'");
        }
        if (i < s.size() && s[i] != '+' && s[i] != '-')
            throw std::invalid_argument("unexpected character '" + std::string(1, s[i]) + "'");
        if (power > 100000)
            throw std::invalid_argument("exponent too large");
        if (out.size() <= power)
            out.resize(power + 1);
        out[power] += sign * coef;
    }
    return out;
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long> coeffs)
{
    coeffs_.reserve(coeffs.size());
    for (long c : coeffs)
        coeffs_.emplace_back(c);
    trim();
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) { return IntPolynomial(std::vector<mpz_class>{c}); }

IntPolynomial IntPolynomial::monomial(const mpz_class& c, unsigned k)
{
    std::vector<mpz_class> v(k + 1);
    v[k] = c;
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::parse(std::string_view text)
{
    std::string s = normalize_minus(text);
    bool symbolic = s.find_first_of("xX") != std::string::npos;
    return IntPolynomial(symbolic ? parse_symbolic(s) : parse_csv(s));
}

void IntPolynomial::trim()
{
    while (!coeffs_.empty() && coeffs_.back() == 0)
        coeffs_.pop_back();
}

const mpz_class& IntPolynomial::leading() const { return coeffs_.empty() ? kZero : coeffs_.back(); }

mpz_class IntPolynomial::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

const mpz_class& IntPolynomial::constant_term() const { return coeffs_.empty() ? kZero : coeffs_.front(); }

mpz_class IntPolynomial::content() const
{
    mpz_class g = 0;
    for (const auto& c : coeffs_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive() const
{
    if (is_zero())
        return {};
    mpz_class g = content();
    if (leading() < 0)
        g = -g;
    std::vector<mpz_class> v(coeffs_);
    for (auto& c : v)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return {};
    std::vector<mpz_class> v(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        v[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::reflect() const
{
    std::vector<mpz_class> v(coeffs_);
    for (std::size_t i = 1; i < v.size(); i += 2)
        v[i] = -v[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::inflate(unsigned m) const
{
    if (is_zero() || m == 1)
        return *this;
    std::vector<mpz_class> v((coeffs_.size() - 1) * m + 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        v[i * m] = coeffs_[i];
    return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::scale_argument(const mpz_class& c) const
{
    std::vector<mpz_class> v(coeffs_);
    mpz_class pw = 1;
    for (auto& a : v) {
        a *= pw;
        pw *= c;
    }
    return IntPolynomial(std::move(v));
}

mpz_class IntPolynomial::eval(const mpz_class& x) const
{
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + *it;
    return acc;
}

mpq_class IntPolynomial::eval(const mpq_class& x) const
{
    // Homogenized Horner keeps everything integral until the final division.
    if (is_zero())
        return 0;
    const mpz_class& num = x.get_num();
    const mpz_class& den = x.get_den();
    mpz_class acc = 0;
    mpz_class dpow = 1;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * num + *it * dpow;
        dpow *= den;
    }
    mpz_class total_den;
    mpz_pow_ui(total_den.get_mpz_t(), den.get_mpz_t(), static_cast<unsigned long>(degree()));
    mpq_class r(acc, total_den);
    r.canonicalize();
    return r;
}

int IntPolynomial::sign_at(const mpq_class& x) const { return sgn(eval(x)); }

bool IntPolynomial::is_height_one() const
{
    if (is_zero())
        return false;
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c >= -1 && c <= 1; });
}

std::string IntPolynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
        const mpz_class& c = coeffs_[static_cast<std::size_t>(k)];
        if (c == 0)
            continue;
        mpz_class a = abs(c);
        if (out.empty())
            out += c < 0 ? "-" : "";
        else
            out += c < 0 ? " - " : " + ";
        if (k == 0 || a != 1)
            out += a.get_str();
        if (k >= 1)
            out += "x";
        if (k >= 2)
            out += "^" + std::to_string(k);
    }
    return out;
}

std::string IntPolynomial::to_csv() const
{
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i)
            out += ",";
        out += coeffs_[i].get_str();
    }
    return out.empty() ? "0" : out;
}

IntPolynomial IntPolynomial::operator-() const
{
    std::vector<mpz_class> v(coeffs_);
    for (auto& c : v)
        c = -c;
    return IntPolynomial(std::move(v));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o)
{
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] += o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o)
{
    if (coeffs_.size() < o.coeffs_.size())
        coeffs_.resize(o.coeffs_.size());
    for (std::size_t i = 0; i < o.coeffs_.size(); ++i)
        coeffs_[i] -= o.coeffs_[i];
    trim();
    return *this;
}

IntPolynomial& IntPolynomial::operator*=(const mpz_class& c)
{
    for (auto& a : coeffs_)
        a *= c;
    trim();
    return *this;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return {};
    std::vector<mpz_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0)
            continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
            mpz_addmul(v[i + j].get_mpz_t(), a.coeffs_[i].get_mpz_t(), b.coeffs_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(v));
}

RationalDivision divide(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero())
        throw std::domain_error("division by the zero polynomial");
    RationalDivision out;
    out.remainder.assign(a.coeffs().begin(), a.coeffs().end());
    int db = b.degree();
    int da = a.degree();
    if (da < db)
        return out;
    out.quotient.assign(static_cast<std::size_t>(da - db + 1), mpq_class(0));
    mpq_class lead(b.leading());
    for (int k = da; k >= db; --k) {
        mpq_class c = out.remainder[static_cast<std::size_t>(k)] / lead;
        out.quotient[static_cast<std::size_t>(k - db)] = c;
        if (c == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            out.remainder[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
    out.remainder.resize(static_cast<std::size_t>(db));
    while (!out.remainder.empty() && out.remainder.back() == 0)
        out.remainder.pop_back();
    return out;
}

IntPolynomial primitive_from_rational(const std::vector<mpq_class>& c)
{
    mpz_class l = 1;
    for (const auto& q : c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(c.size());
    for (const auto& q : c) {
        mpz_class t = l / q.get_den() * q.get_num();
        v.push_back(t);
    }
    return IntPolynomial(std::move(v)).primitive();
}

bool divides(const IntPolynomial& b, const IntPolynomial& a)
{
    if (b.is_zero())
        return a.is_zero();
    return divide(a, b).remainder.empty();
}

IntPolynomial divexact(const IntPolynomial& a, const IntPolynomial& b)
{
    RationalDivision d = divide(a, b);
    if (!d.remainder.empty())
        throw std::domain_error("polynomial division is not exact");
    std::vector<mpz_class> v;
    v.reserve(d.quotient.size());
    for (const auto& q : d.quotient) {
        if (q.get_den() != 1)
            throw std::domain_error("quotient is not integral");
        v.push_back(q.get_num());
    }
    return IntPolynomial(std::move(v));
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b)
{
    IntPolynomial x = a.primitive();
    IntPolynomial y = b.primitive();
    if (x.degree() < y.degree())
        std::swap(x, y);
    while (!y.is_zero()) {
        RationalDivision d = divide(x, y);
        IntPolynomial r = primitive_from_rational(d.remainder);
        x = std::move(y);
        y = std::move(r);
    }
    return x.primitive();
}

IntPolynomial squarefree_part(const IntPolynomial& p)
{
    if (p.degree() <= 0)
        return p.primitive();
    IntPolynomial g = gcd(p, p.derivative());
    if (g.degree() == 0)
        return p.primitive();
    return primitive_from_rational(divide(p, g).quotient);
}

bool is_squarefree(const IntPolynomial& p)
{
    if (p.degree() <= 0)
        return !p.is_zero();
    return gcd(p, p.derivative()).degree() == 0;
}

std::vector<IntPolynomial> squarefree_decomposition(const IntPolynomial& p)
{
    // f_1 = p, f_{k+1} = gcd(f_k, f_k'); s_k = f_k / f_{k+1} collects the roots of
    // multiplicity >= k and a_k = s_k / s_{k+1}. Every step is an exact
    // division, so primitive normalization in between is harmless.
    std::vector<IntPolynomial> out;
    if (p.degree() <= 0)
        return out;
    auto quotient = [](const IntPolynomial& a, const IntPolynomial& b) {
        return primitive_from_rational(divide(a, b).quotient);
    };
    IntPolynomial fk = p.primitive();
    IntPolynomial fnext = gcd(fk, fk.derivative());
    IntPolynomial sk = quotient(fk, fnext);
    while (sk.degree() > 0) {
        IntPolynomial fk2 = fnext.degree() > 0 ? gcd(fnext, fnext.derivative()) : fnext;
        IntPolynomial sk2 = fnext.degree() > 0 ? quotient(fnext, fk2) : IntPolynomial::constant(1);
        out.push_back(quotient(sk, sk2));
        fk = fnext;
        fnext = fk2;
        sk = sk2;
    }
    while (!out.empty() && out.back().degree() == 0)
        out.pop_back();
    return out;
}

IntPolynomial reverse(const IntPolynomial& p)
{
    if (p.is_zero() || p.constant_term() == 0)
        throw std::domain_error("reverse: zero constant term");
    std::vector<mpz_class> v(p.coeffs().rbegin(), p.coeffs().rend());
    return IntPolynomial(std::move(v));
}

IntPolynomial graeffe(const IntPolynomial& p)
{
    if (p.is_zero())
        return {};
    // p(x) = e(x^2) + x o(x^2); p(x) p(-x) = e(y)^2 - y o(y)^2 with y = x^2.
    std::vector<mpz_class> even, odd;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        (i % 2 == 0 ? even : odd).push_back(p.coeffs()[i]);
    IntPolynomial e(even), o(odd);
    IntPolynomial r = e * e - IntPolynomial::monomial(1, 1) * (o * o);
    return r.primitive();
}

PowerStructure detect_power_structure(const IntPolynomial& p)
{
    PowerStructure out;
    if (p.degree() <= 0) {
        out.inner = p;
        return out;
    }
    unsigned long g = 0;
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        if (p.coeffs()[i] != 0)
            g = std::gcd(g, static_cast<unsigned long>(i));
    out.m = static_cast<unsigned>(g == 0 ? 1 : g);
    std::vector<mpz_class> v;
    for (std::size_t i = 0; i < p.coeffs().size(); i += out.m)
        v.push_back(p.coeffs()[i]);
    out.inner = IntPolynomial(std::move(v));
    return out;
}

bool negation_conjugate_test(const IntPolynomial& p)
{
    IntPolynomial q = remove_zero_roots(p);
    return gcd(q, q.reflect()).degree() >= 1;
}

IntPolynomial pair_product_polynomial(const IntPolynomial& p, unsigned degree_cap)
{
    int d = p.degree();
    if (d < 2)
        throw std::domain_error("pair_product_polynomial: degree must be at least 2");
    unsigned long n = static_cast<unsigned long>(d) * static_cast<unsigned long>(d - 1) / 2;
    if (n > degree_cap)
        throw DegreeOverflow("pair product degree " + std::to_string(n) + " exceeds cap " +
                             std::to_string(degree_cap));

    // Power sums of the roots via Newton's identities.
    std::size_t K = 2 * n;
    std::vector<mpq_class> e(static_cast<std::size_t>(d) + 1);
    mpq_class lead(p.leading());
    for (int k = 0; k <= d; ++k) {
        mpq_class c(p.coeffs()[static_cast<std::size_t>(d - k)]);
        e[static_cast<std::size_t>(k)] = (k % 2 == 0 ? c : -c) / lead;
    }
    std::vector<mpq_class> ps(K + 1);
    ps[0] = d;
    for (std::size_t k = 1; k <= K; ++k) {
        mpq_class s = 0;
        std::size_t top = std::min<std::size_t>(k - 1, static_cast<std::size_t>(d));
        for (std::size_t i = 1; i <= top; ++i) {
            mpq_class t = e[i] * ps[k - i];
            if (i % 2 == 1)
                s += t;
            else
                s -= t;
        }
        if (k <= static_cast<std::size_t>(d)) {
            mpq_class t = e[k] * static_cast<unsigned long>(k);
            if (k % 2 == 1)
                s += t;
            else
                s -= t;
        }
        ps[k] = s;
    }

    // Power sums of pairwise products, then back to elementary symmetric
    // functions.
    std::vector<mpq_class> s(n + 1);
    for (std::size_t k = 1; k <= n; ++k)
        s[k] = (ps[k] * ps[k] - ps[2 * k]) / 2;
    std::vector<mpq_class> E(n + 1);
    E[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        mpq_class acc = 0;
        for (std::size_t i = 1; i <= k; ++i) {
            mpq_class t = E[k - i] * s[i];
            if (i % 2 == 1)
                acc += t;
            else
                acc -= t;
        }
        E[k] = acc / static_cast<unsigned long>(k);
    }
    std::vector<mpq_class> c(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        c[n - k] = (k % 2 == 0) ? E[k] : mpq_class(-E[k]);
    return primitive_from_rational(c);
}

IntPolynomial cyclotomic(unsigned n)
{
    if (n == 0)
        throw std::domain_error("cyclotomic(0)");
    // x^n - 1 divided by Phi_d for every proper divisor d.
    IntPolynomial r = IntPolynomial::monomial(1, n) - IntPolynomial::constant(1);
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0)
            r = divexact(r, cyclotomic(d));
    return r;
}

IntPolynomial remove_zero_roots(const IntPolynomial& p)
{
    if (p.is_zero())
        return p;
    std::size_t k = 0;
    while (p.coeffs()[k] == 0)
        ++k;
    return IntPolynomial(std::vector<mpz_class>(p.coeffs().begin() + static_cast<long>(k), p.coeffs().end()));
}

}  // namespace spectra
