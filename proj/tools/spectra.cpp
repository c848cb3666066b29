#include "spectra/report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace spectra;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitUsage = 64;

struct Config {
    unsigned budget_bits = 4096;
    std::uint64_t seed = 1;
    std::string format = "text";
    std::string output;
    bool serial = false;

    Exec exec() const { return serial ? Exec::Serial : Exec::Parallel; }
    Budget budget() const
    {
        Budget b;
        b.precision_bits = budget_bits;
        return b;
    }
};

struct RootChoice {
    std::string poly;
    int root_index = -1;
    std::string root_interval;
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::pair<std::string, std::string> split_pair(const std::string& s)
{
    auto comma = s.find(',');
    if (comma == std::string::npos)
        return {s, ""};
    return {s.substr(0, comma), s.substr(comma + 1)};
}

IntPolynomial parse_poly(const std::string& s)
{
    try {
        IntPolynomial p = IntPolynomial::parse(s);
        if (p.degree() < 1)
            throw UsageError("polynomial must have degree >= 1");
        return p;
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad polynomial: ") + e.what());
    }
}

mpq_class parse_number(const std::string& s)
{
    try {
        return parse_rational(s);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("bad number: ") + e.what());
    }
}

AlgebraicNumber choose_q(const RootChoice& rc, const Config& cfg)
{
    IntPolynomial f = parse_poly(rc.poly);
    std::optional<std::size_t> index;
    std::optional<std::pair<mpq_class, mpq_class>> interval;
    if (rc.root_index >= 0)
        index = static_cast<std::size_t>(rc.root_index);
    if (!rc.root_interval.empty()) {
        auto [a, b] = split_pair(rc.root_interval);
        interval = std::make_pair(parse_number(a), parse_number(b));
    }
    return select_root(f, index, interval, cfg.budget_bits);
}

void add_root_options(CLI::App* sub, RootChoice& rc)
{
    sub->add_option("--poly", rc.poly, "Polynomial, e.g. \"x^4 - x - 1\" or ascending coefficients \"-1,-1,0,0,1\"")
        ->required();
    auto* idx = sub->add_option("--root-index", rc.root_index, "Index of q in the root ordering");
    sub->add_option("--root-interval", rc.root_interval, "Interval a,b isolating the real root q")->excludes(idx);
}

class Output {
public:
    explicit Output(const Config& cfg) : cfg_(cfg) {}

    std::ostream& stream()
    {
        if (cfg_.output.empty())
            return std::cout;
        if (!file_.is_open()) {
            file_.open(cfg_.output, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open " + cfg_.output);
        }
        return file_;
    }

    // json: the envelope; text: flattened lines; csv: key,value rows unless
    // the caller supplies a table.
    void emit(const std::string& command, const json& result,
              const std::vector<std::string>& header = {}, const std::vector<std::vector<std::string>>& rows = {})
    {
        std::ostream& out = stream();
        if (cfg_.format == "json") {
            out << envelope(command, result).dump(2) << '\n';
        } else if (cfg_.format == "csv") {
            if (!header.empty()) {
                write_csv(out, header, rows);
            } else {
                std::vector<std::vector<std::string>> kv;
                std::istringstream lines(to_text(result));
                std::string line;
                while (std::getline(lines, line)) {
                    auto colon = line.find(": ");
                    kv.push_back({line.substr(0, colon), colon == std::string::npos ? "" : line.substr(colon + 2)});
                }
                write_csv(out, {"key", "value"}, kv);
            }
        } else {
            out << to_text(result);
        }
    }

private:
    const Config& cfg_;
    std::ofstream file_;
};

std::vector<std::string> digits_row(const std::vector<int>& d)
{
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? " " : "") + std::to_string(d[i]);
    return {s};
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Power-sum spectra of algebraic numbers"};
    app.require_subcommand(1);
    app.fallthrough();
    Config cfg;
    if (const char* env = std::getenv("SPECTRA_BUDGET_BITS")) {
        try {
            cfg.budget_bits = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            std::cerr << "error: SPECTRA_BUDGET_BITS must be a positive integer\n";
            return kExitUsage;
        }
    }
    app.add_option("--budget", cfg.budget_bits, "Precision budget in bits (default 4096)")
        ->check(CLI::Range(64u, 1u << 20));
    app.add_option("--seed", cfg.seed, "Random seed (default 1)");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--output", cfg.output, "Write output to this file");
    app.add_flag("--serial", cfg.serial, "Use the serial kernels");

    RootChoice classify_rc, verdict_rc, spectrum_rc, lambda_rc;
    auto* classify_cmd = app.add_subcommand("classify", "Pisot/Perron/Salem/anti-Pisot classification of q");
    add_root_options(classify_cmd, classify_rc);

    int dmax = 20, crosscheck = 0;
    auto* verdict_cmd = app.add_subcommand("verdict", "Apply the denseness criteria to q");
    add_root_options(verdict_cmd, verdict_rc);
    verdict_cmd->add_option("--dmax", dmax, "Degree bound for the height-one search");
    verdict_cmd->add_option("--crosscheck", crosscheck, "Also compute spectra up to this n");

    int n = 10;
    std::string digits = "01";
    std::size_t limit = 50;
    auto* spectrum_cmd = app.add_subcommand("spectrum", "Sorted distinct values of the power sums and gap statistics");
    add_root_options(spectrum_cmd, spectrum_rc);
    spectrum_cmd->add_option("--n", n, "Highest power")->required();
    spectrum_cmd->add_option("--digits", digits, "01, ternary, pm1, or a comma list");
    spectrum_cmd->add_option("--limit", limit, "Number of values to list (0 = all)");

    std::string count_poly, count_digits = "01";
    int count_n = 10;
    bool series = false;
    auto* count_cmd = app.add_subcommand("count", "Number of distinct power sums z_n");
    count_cmd->add_option("--poly", count_poly, "Polynomial")->required();
    count_cmd->add_option("--n", count_n, "Highest power")->required();
    count_cmd->add_option("--digits", count_digits, "Digit set");
    count_cmd->add_flag("--series", series, "Report z_0..z_n");

    auto* lambda_cmd = app.add_subcommand("lambda-min", "Smallest positive element of Lambda_n(q)");
    add_root_options(lambda_cmd, lambda_rc);
    int lambda_n = 10;
    lambda_cmd->add_option("--n", lambda_n, "Highest power")->required();

    std::string lambda_text, att_poly, near;
    int att_index = -1, att_depth = 40, att_n = 10, pixels = 800, raster_depth = 22;
    std::string image, raster_digits = "01";
    auto* att_cmd = app.add_subcommand("attractor", "Connectivity, interior criterion and counting bound for lambda");
    auto* lam_opt = att_cmd->add_option("--lambda", lambda_text, "re or re,im (exact decimals or fractions)");
    att_cmd->add_option("--poly", att_poly, "Take lambda as a root of this polynomial")->excludes(lam_opt);
    att_cmd->add_option("--root-index", att_index, "Root index for --poly");
    att_cmd->add_option("--near", near, "re,im: the root of --poly nearest to this point");
    att_cmd->add_option("--depth", att_depth, "Connectivity search depth");
    att_cmd->add_option("--n", att_n, "n for the counting lower bound");
    att_cmd->add_option("--image", image, "Write a P5 raster to this file");
    att_cmd->add_option("--pixels", pixels, "Raster size");
    att_cmd->add_option("--raster-depth", raster_depth, "Number of powers in the raster");
    att_cmd->add_option("--raster-digits", raster_digits, "01 or pm1")->check(CLI::IsMember({"01", "pm1"}));

    std::string search_poly;
    int search_dmax = 20, cap = 64, degree_max = 12;
    std::uint64_t samples = 0;
    bool exhaustive = false;
    auto* search_cmd = app.add_subcommand("search", "Height-one multiple search, triple filter and sampler");
    search_cmd->add_option("--poly", search_poly, "Polynomial");
    search_cmd->add_option("--dmax", search_dmax, "Maximal degree of the multiple");
    search_cmd->add_option("--cap", cap, "Bound on cofactor coefficients");
    search_cmd->add_option("--samples", samples, "Run the triple-product sampler with this many samples");
    search_cmd->add_option("--degree-max", degree_max, "Sampler degree bound");
    search_cmd->add_flag("--exhaustive", exhaustive, "Sampler over all polynomials of degree <= degree-max");

    auto* examples_cmd = app.add_subcommand("examples", "Run the bundled worked examples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Output out(cfg);
    try {
        if (*classify_cmd) {
            AlgebraicNumber q = choose_q(classify_rc, cfg);
            NumberClass nc = classify(q.defining(), q);
            json j = to_json(nc);
            j = json{{"polynomial", to_json(q.defining())}, {"classification", j}};
            out.emit("classify", j);
            return kExitOk;
        }
        if (*verdict_cmd) {
            AlgebraicNumber q = choose_q(verdict_rc, cfg);
            VerdictOptions opt;
            opt.dmax = dmax;
            opt.budget = cfg.budget();
            opt.exec = cfg.exec();
            Verdict v = verdict(parse_poly(verdict_rc.poly), q, opt);
            json j = to_json(v);
            if (crosscheck > 0)
                j["crosscheck"] = to_json(empirical_crosscheck(v, q, crosscheck, cfg.budget(), cfg.exec()));
            std::vector<std::vector<std::string>> rows;
            for (const RuleFiring& r : v.rules)
                rows.push_back({r.id, r.gives_L ? "l=0,L=0" : (r.id == "R1" ? "discrete" : "l=0"), r.citation});
            out.emit("verdict", j, {"rule", "gives", "citation"}, rows);
            return v.conclusion == Conclusion::Inconclusive ? kExitInconclusive : kExitOk;
        }
        if (*spectrum_cmd) {
            AlgebraicNumber q = choose_q(spectrum_rc, cfg);
            SpectrumReport r =
                enumerate_spectrum(q.defining(), q, n, DigitSet::parse(digits), cfg.budget(), cfg.exec());
            GapStats g = gap_stats(r);
            std::vector<std::vector<std::string>> rows;
            std::size_t m = limit == 0 ? r.size() : std::min(limit, r.size());
            RInterval next = m > 0 ? r.exact_value(0, 128) : RInterval{};
            for (std::size_t i = 0; i < m; ++i) {
                RInterval cur = next;
                if (i + 1 < r.size())
                    next = r.exact_value(i + 1, 128);
                auto d = digits_row(r.coefficients(i));
                rows.push_back({std::to_string(i), to_decimal(cur.mid(), 20),
                                i + 1 < r.size() ? to_decimal((next - cur).mid(), 20) : "", d[0]});
            }
            out.emit("spectrum", spectrum_json(r, g, limit), {"index", "value_decimal", "gap_to_next", "digits"},
                     rows);
            return kExitOk;
        }
        if (*count_cmd) {
            IntPolynomial f = parse_poly(count_poly);
            DigitSet ds = DigitSet::parse(count_digits);
            if (series) {
                auto counts = count_series(f, count_n, ds, cfg.budget(), cfg.exec());
                std::vector<std::vector<std::string>> rows;
                for (std::size_t i = 0; i < counts.size(); ++i)
                    rows.push_back({std::to_string(i), std::to_string(counts[i])});
                json j{{"polynomial", to_json(f)}, {"digits", ds.name()}, {"counts", counts}};
                if (cfg.format == "text") {
                    for (auto& r : rows)
                        out.stream() << r[0] << ' ' << r[1] << '\n';
                } else {
                    out.emit("count", j, {"n", "count"}, rows);
                }
            } else {
                std::uint64_t c = count_distinct(f, count_n, ds, cfg.budget(), cfg.exec());
                json j{{"polynomial", to_json(f)}, {"digits", ds.name()}, {"n", count_n}, {"count", c}};
                if (cfg.format == "text")
                    out.stream() << c << '\n';
                else
                    out.emit("count", j, {"n", "count"}, {{std::to_string(count_n), std::to_string(c)}});
            }
            return kExitOk;
        }
        if (*lambda_cmd) {
            AlgebraicNumber q = choose_q(lambda_rc, cfg);
            LambdaMin m = smallest_positive_lambda(q.defining(), q, lambda_n, cfg.budget(), cfg.exec());
            json j = to_json(m);
            j["n"] = lambda_n;
            out.emit("lambda-min", j, {"n", "value", "digits"},
                     {{std::to_string(lambda_n), to_decimal(m.value.mid(), 20), digits_row(m.witness)[0]}});
            return kExitOk;
        }
        if (*att_cmd) {
            std::optional<Lambda> lam;
            if (!lambda_text.empty()) {
                auto [re, im] = split_pair(lambda_text);
                lam = Lambda::exact(parse_number(re), im.empty() ? mpq_class(0) : parse_number(im));
            } else if (!att_poly.empty()) {
                IntPolynomial p = parse_poly(att_poly);
                if (att_index >= 0) {
                    lam = Lambda::algebraic(AlgebraicNumber::root(p, static_cast<std::size_t>(att_index), cfg.budget_bits));
                } else if (!near.empty()) {
                    auto [re, im] = split_pair(near);
                    lam = Lambda::algebraic(AlgebraicNumber::nearest_root(
                        p, to_double(parse_number(re)), im.empty() ? 0 : to_double(parse_number(im)), cfg.budget_bits));
                } else {
                    throw UsageError("attractor --poly needs --root-index or --near");
                }
            } else {
                throw UsageError("attractor needs --lambda or --poly");
            }
            AttractorAnalysis a = analyze_attractor(*lam, att_depth, att_n, cfg.exec(), cfg.budget());
            json j = to_json(a);
            if (!image.empty()) {
                Raster r = rasterize(*lam, raster_depth, pixels, raster_digits == "pm1", cfg.exec());
                std::ofstream f(image, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot open " + image);
                write_pgm(r, f);
                j["raster"] = {{"file", image}, {"pixels", pixels}, {"depth", raster_depth}, {"marked", r.marked()}};
            }
            out.emit("attractor", j);
            return kExitOk;
        }
        if (*search_cmd) {
            json j;
            if (!search_poly.empty()) {
                IntPolynomial f = parse_poly(search_poly);
                HeightOneResult r = find_height_one_multiple(f, search_dmax, cfg.budget(), cfg.exec(), cap);
                if (f.degree() >= 3) {
                    r.filter = three_root_filter(f, cfg.budget_bits);
                    if (r.filter && r.status == HeightStatus::NoneUpTo)
                        r.status = HeightStatus::Filtered;
                }
                j["search"] = to_json(r);
            }
            if (exhaustive)
                j["sampler"] = to_json(claim_exhaustive(degree_max, cfg.exec()));
            else if (samples > 0)
                j["sampler"] = to_json(claim_sampler(degree_max, samples, cfg.seed, cfg.exec()));
            if (j.empty())
                throw UsageError("search needs --poly and/or --samples/--exhaustive");
            out.emit("search", j);
            return kExitOk;
        }
        if (*examples_cmd) {
            VerdictOptions opt;
            opt.budget = cfg.budget();
            opt.exec = cfg.exec();
            json all = json::array();
            std::vector<std::vector<std::string>> rows;
            int passed = 0, total = 0;
            for (const Fixture& fx : fixtures()) {
                FixtureResult r = run_fixture(fx, opt);
                all.push_back(to_json(r));
                ++total;
                passed += r.pass() ? 1 : 0;
                for (const CaseResult& c : r.cases) {
                    std::string ids;
                    for (const auto& id : c.verdict.rule_ids())
                        ids += (ids.empty() ? "" : " ") + id;
                    rows.push_back({std::to_string(fx.id), c.expected.poly, to_string(c.verdict.conclusion), ids,
                                    c.pass() ? "pass" : "FAIL"});
                }
            }
            if (cfg.format == "text") {
                std::ostream& o = out.stream();
                for (const auto& r : rows)
                    o << "Ex" << r[0] << "  " << r[4] << "  " << r[2] << "  [" << r[3] << "]  " << r[1] << '\n';
                o << passed << "/" << total << " pass\n";
            } else {
                out.emit("examples", json{{"fixtures", all}, {"passed", passed}, {"total", total}},
                         {"example", "polynomial", "conclusion", "rules", "status"}, rows);
            }
            return passed == total ? kExitOk : kExitFailure;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "precision exhausted: " << e.what() << '\n';
        return kExitPrecision;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
