#pragma once

#include "spectra/classify.hpp"
#include "spectra/errors.hpp"
#include "spectra/heightsearch.hpp"
#include "spectra/kernels.hpp"
#include "spectra/roots.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spectra {

enum class Conclusion { DenseL0, DenseL0AndL0, Discrete, Inconclusive };
const char* to_string(Conclusion c);

struct RuleFiring {
    std::string id;  // R0 .. R7
    std::string citation;
    bool gives_L = false;  // also L(q) = 0
    std::map<std::string, std::string> certificate;
};

struct Verdict {
    IntPolynomial f;
    RInterval q;
    std::size_t root_index = 0;
    Conclusion conclusion = Conclusion::Inconclusive;
    std::vector<RuleFiring> rules;
    // Rules whose hypotheses hold but that were overridden by the Pisot rule.
    std::vector<RuleFiring> preempted;
    std::vector<std::string> caveats;
    std::vector<std::string> notes;
    bool q_below_sqrt2 = false;
    bool l_zero = false;
    bool L_zero = false;
    NumberClass classification;

    std::vector<std::string> rule_ids() const;
    bool fired(const std::string& id) const;
};

struct VerdictOptions {
    int dmax = 20;
    Budget budget;
    Exec exec = Exec::Parallel;
};

// The real root of f in (1, 2) selected by index into the root system of the
// squarefree primitive part, by an isolating interval, or (neither given) the
// largest real root.
AlgebraicNumber select_root(const IntPolynomial& f, std::optional<std::size_t> index = std::nullopt,
                            std::optional<std::pair<mpq_class, mpq_class>> interval = std::nullopt,
                            unsigned budget_bits = 4096);

Verdict verdict(const IntPolynomial& f, const AlgebraicNumber& q, const VerdictOptions& options = {});

struct CrosscheckRow {
    int n = 0;
    std::uint64_t count = 0;
    RInterval ratio;       // z_n / q^n
    RInterval min_lambda;  // smallest positive element of Lambda_n
};

struct Crosscheck {
    std::vector<CrosscheckRow> rows;
    std::string trend;  // "constant", "nonincreasing", "mixed"
    bool tension = false;
    std::string note;
};

Crosscheck empirical_crosscheck(const Verdict& v, const AlgebraicNumber& q, int n_max, const Budget& budget = {},
                                Exec exec = Exec::Parallel);

}  // namespace spectra
