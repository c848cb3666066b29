#include "spectra/report.hpp"

#include <ostream>
#include <sstream>

namespace spectra {

json envelope(const std::string& command, json result)
{
    json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["result"] = std::move(result);
    return j;
}

json to_json(const IntPolynomial& p)
{
    json coeffs = json::array();
    for (const mpz_class& c : p.coeffs())
        coeffs.push_back(c.get_str());
    return {{"symbolic", p.to_string()}, {"coefficients", coeffs}};
}

json to_json(const RInterval& v, int digits)
{
    return {{"mid", to_decimal(v.mid(), digits)}, {"lo", to_decimal(v.lo, digits)}, {"hi", to_decimal(v.hi, digits)}};
}

json to_json(const CInterval& v, int digits) { return {{"re", to_json(v.re, digits)}, {"im", to_json(v.im, digits)}}; }

json to_json(const RootBox& b)
{
    return {{"re", to_decimal(b.re, 20)},
            {"im", to_decimal(b.im, 20)},
            {"radius", to_decimal(b.radius, 6)},
            {"multiplicity", b.multiplicity}};
}

json to_json(const NumberClass& nc)
{
    json j;
    j["q"] = to_json(nc.q);
    j["is_pisot"] = nc.is_pisot;
    j["is_perron"] = nc.is_perron;
    j["is_salem"] = nc.is_salem;
    j["is_anti_pisot"] = nc.is_anti_pisot;
    json margins = json::object();
    for (const auto& [k, v] : nc.margins)
        margins[k] = to_decimal(v, 12);
    j["margins"] = margins;
    json exact = json::object();
    for (const auto& [k, v] : nc.exact)
        exact[k] = v;
    j["exact"] = exact;
    j["minimality_verified"] = nc.minimality_verified;
    j["minimality_note"] = nc.minimality_note;
    json conj = json::array();
    for (const ConjugateInfo& c : nc.conjugates) {
        json cj;
        cj["index"] = c.index;
        cj["root"] = to_json(c.box);
        cj["real"] = c.real;
        cj["modulus"] = to_json(c.modulus, 15);
        cj["modulus_vs_1"] = to_string(c.vs_one);
        cj["modulus_vs_q"] = to_string(c.vs_q);
        cj["q_times_modulus_vs_1"] = to_string(c.product);
        if (!c.tie_certificates.empty())
            cj["exact_ties"] = c.tie_certificates;
        conj.push_back(cj);
    }
    j["conjugates"] = conj;
    return j;
}

namespace {

json rule_json(const RuleFiring& r)
{
    json cert = json::object();
    for (const auto& [k, v] : r.certificate)
        cert[k] = v;
    return {{"id", r.id}, {"citation", r.citation}, {"gives_L", r.gives_L}, {"certificate", cert}};
}

}  // namespace

json to_json(const Verdict& v)
{
    json j;
    j["polynomial"] = to_json(v.f);
    j["q"] = to_json(v.q);
    j["root_index"] = v.root_index;
    j["conclusion"] = to_string(v.conclusion);
    j["l_zero"] = v.l_zero;
    j["L_zero"] = v.L_zero;
    j["q_below_sqrt2"] = v.q_below_sqrt2;
    json ids = json::array();
    for (const auto& id : v.rule_ids())
        ids.push_back(id);
    j["rules"] = ids;
    json rules = json::array();
    for (const RuleFiring& r : v.rules)
        rules.push_back(rule_json(r));
    j["rules_applied"] = rules;
    json pre = json::array();
    for (const RuleFiring& r : v.preempted)
        pre.push_back(rule_json(r));
    j["preempted"] = pre;
    j["caveats"] = v.caveats;
    j["notes"] = v.notes;
    j["classification"] = to_json(v.classification);
    return j;
}

json to_json(const FilterCertificate& c)
{
    json roots = json::array();
    for (const RootBox& b : c.roots)
        roots.push_back(to_json(b));
    return {{"roots", roots},
            {"product", to_json(c.product, 12)},
            {"bound", "0.32475952641916"},
            {"below_bound", c.product_squared.hi < kTripleBoundSquared}};
}

json to_json(const HeightOneResult& r)
{
    json j;
    j["status"] = to_string(r.status);
    j["dmax"] = r.dmax;
    j["coefficient_cap"] = r.coefficient_cap;
    j["proof"] = r.proof;
    if (r.witness)
        j["witness"] = to_json(*r.witness);
    if (r.cofactor)
        j["cofactor"] = to_json(*r.cofactor);
    if (r.filter)
        j["filter_certificate"] = to_json(*r.filter);
    if (!r.note.empty())
        j["note"] = r.note;
    return j;
}

json to_json(const SamplerResult& r)
{
    return {{"min_product", to_json(r.min_product, 12)},
            {"witness", to_json(r.witness)},
            {"samples", r.samples},
            {"skipped", r.skipped},
            {"bound", "0.32475952641916"},
            {"respects_bound", r.min_product.lo * r.min_product.lo >= kTripleBoundSquared}};
}

json to_json(const ConnectivityResult& c)
{
    json j;
    j["verdict"] = to_string(c.verdict);
    j["depth"] = c.depth;
    j["method"] = c.method;
    if (!c.witness.empty())
        j["witness"] = c.witness;
    if (c.verdict == Connectivity::Disconnected) {
        std::ostringstream m;
        m.precision(12);
        m << c.margin;
        j["margin"] = m.str();
    }
    return j;
}

json to_json(const AttractorAnalysis& a)
{
    json j;
    j["lambda"] = to_json(a.lambda, 15);
    j["connectivity"] = to_json(a.connectivity);
    j["interior"] = a.interior;
    if (a.bound) {
        j["zn_lower_bound"] = {{"clause", a.bound->clause}, {"value", to_json(a.bound->value, 12)}};
        j["zn_lower_bound_exponent"] = a.bound->clause;
    } else {
        j["zn_lower_bound_exponent"] = nullptr;
    }
    return j;
}

json to_json(const GapStats& g)
{
    json j;
    j["min_gap"] = {{"index", g.min_gap.index}, {"value", to_json(g.min_gap.value, 15)}};
    j["tail_min_gap"] = {{"index", g.tail_min_gap.index}, {"value", to_json(g.tail_min_gap.value, 15)}};
    j["max_gap_tail"] = {{"index", g.max_gap_tail.index}, {"value", to_json(g.max_gap_tail.value, 15)}};
    j["record_min_positions"] = g.record_min_positions;
    j["prefix_size"] = g.prefix_size;
    j["tail_start"] = g.tail_start;
    j["finalized"] = g.finalized;
    return j;
}

json to_json(const LambdaMin& m)
{
    json j;
    j["value"] = to_json(m.value, 20);
    j["witness"] = m.witness;
    j["relations_found"] = m.relations_found;
    j["relations"] = m.relations;
    j["low_size"] = m.low_size;
    j["high_size"] = m.high_size;
    return j;
}

json to_json(const CountSeries& s)
{
    json j;
    j["polynomial"] = to_json(s.f);
    j["q"] = to_json(s.q, 15);
    j["counts"] = s.counts;
    json ratios = json::array();
    for (const RInterval& r : s.ratios)
        ratios.push_back(to_decimal(r.mid(), 12));
    j["ratios"] = ratios;
    j["divergence_diagnostic"] = s.divergence_diagnostic;
    return j;
}

json to_json(const Crosscheck& c)
{
    json rows = json::array();
    for (const CrosscheckRow& r : c.rows)
        rows.push_back({{"n", r.n},
                        {"count", r.count},
                        {"ratio", to_decimal(r.ratio.mid(), 12)},
                        {"min_lambda", to_decimal(r.min_lambda.mid(), 20)}});
    return {{"rows", rows}, {"trend", c.trend}, {"tension", c.tension}, {"note", c.note}};
}

json to_json(const FixtureResult& r)
{
    json j;
    j["id"] = r.fixture->id;
    j["label"] = r.fixture->label;
    j["pass"] = r.pass();
    json cases = json::array();
    for (const CaseResult& c : r.cases) {
        json cj;
        cj["polynomial"] = c.expected.poly;
        cj["expected_conclusion"] = to_string(c.expected.conclusion);
        cj["conclusion"] = to_string(c.verdict.conclusion);
        cj["expected_rules"] = c.expected.rules;
        cj["rules"] = c.verdict.rule_ids();
        json probes = json::array();
        for (const ProbeResult& p : c.probes) {
            std::ostringstream m, e;
            m.precision(8);
            e.precision(8);
            m << p.measured;
            e << p.probe.expected;
            probes.push_back({{"name", p.probe.name}, {"expected", e.str()}, {"measured", m.str()}, {"pass", p.pass}});
        }
        cj["probes"] = probes;
        cj["pass"] = c.pass();
        cases.push_back(cj);
    }
    j["cases"] = cases;
    return j;
}

json spectrum_json(const SpectrumReport& r, const GapStats& g, std::size_t limit)
{
    json j;
    j["polynomial"] = to_json(r.f);
    if (r.q)
        j["q"] = to_json(r.q->real_enclosure(), 15);
    j["n"] = r.n;
    j["digits"] = r.digits.name();
    j["size"] = r.size();
    j["merged_exact_ties"] = r.merged_exact_ties;
    j["finalized"] = r.finalized;
    if (r.finalized)
        j["finalized_upto"] = to_decimal(r.finalized_upto, 15);
    j["gaps"] = to_json(g);
    json values = json::array();
    std::size_t n = limit == 0 ? r.size() : std::min(limit, r.size());
    for (std::size_t i = 0; i < n; ++i)
        values.push_back(
            {{"index", i}, {"value", to_decimal(r.exact_value(i, 128).mid(), 20)}, {"digits", r.coefficients(i)}});
    j["values"] = values;
    return j;
}

namespace {

void flatten(const json& j, const std::string& prefix, std::ostringstream& out)
{
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_string()) {
        out << prefix << ": " << j.get<std::string>() << '\n';
    } else {
        out << prefix << ": " << j.dump() << '\n';
    }
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

}  // namespace

std::string to_text(const json& j)
{
    std::ostringstream out;
    flatten(j, "", out);
    return out.str();
}

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows)
{
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i)
            out << (i ? "," : "") << csv_field(r[i]);
        out << '\n';
    };
    line(header);
    for (const auto& r : rows)
        line(r);
}

}  // namespace spectra
