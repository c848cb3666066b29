#pragma once

#include "spectra/criteria.hpp"

#include <string>
#include <vector>

namespace spectra {

enum class ProbeKind {
    Q,                  // the selected root q
    RootRe,             // real part of the conjugate nearest to (hint_re, hint_im)
    RootIm,             // |imaginary part| of that conjugate
    Modulus,            // modulus of the conjugate whose modulus is nearest to `expected`
    QTimesModulus,      // q |alpha| for the conjugate nearest to the hint
    InverseQ,           // 1/q
    InverseModulusSq,   // |alpha|^-2 for the conjugate nearest to the hint
    SquareTripleProduct // smallest triple product of roots of reverse(graeffe(f))
};

struct Probe {
    std::string name;
    ProbeKind kind = ProbeKind::Q;
    double expected = 0;
    double hint_re = 0;
    double hint_im = 0;
};

struct FixtureCase {
    std::string poly;
    Conclusion conclusion = Conclusion::Inconclusive;
    std::vector<std::string> rules;
    std::vector<Probe> probes;
};

struct Fixture {
    int id = 0;
    std::string label;
    std::vector<FixtureCase> cases;
};

constexpr double kFixtureTolerance = 1e-4;

const std::vector<Fixture>& fixtures();

struct ProbeResult {
    Probe probe;
    double measured = 0;
    bool pass = false;
};

struct CaseResult {
    FixtureCase expected;
    Verdict verdict;
    std::vector<ProbeResult> probes;
    bool conclusion_ok = false;
    bool rules_ok = false;
    bool pass() const;
};

struct FixtureResult {
    const Fixture* fixture = nullptr;
    std::vector<CaseResult> cases;
    double seconds = 0;
    bool pass() const;
};

// Numeric probes only (no verdict).
std::vector<ProbeResult> measure_probes(const FixtureCase& c, unsigned budget_bits = 4096);

FixtureResult run_fixture(const Fixture& f, const VerdictOptions& options = {});

}  // namespace spectra
