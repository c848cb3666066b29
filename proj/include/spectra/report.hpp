#pragma once

#include "spectra/attractor.hpp"
#include "spectra/classify.hpp"
#include "spectra/counting.hpp"
#include "spectra/criteria.hpp"
#include "spectra/fixtures.hpp"
#include "spectra/heightsearch.hpp"
#include "spectra/spectrum.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace spectra {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

// {"schema_version": 1, "command": ..., "result": ...}
json envelope(const std::string& command, json result);

json to_json(const IntPolynomial& p);
json to_json(const RInterval& v, int digits = 20);
json to_json(const CInterval& v, int digits = 20);
json to_json(const RootBox& b);
json to_json(const NumberClass& nc);
json to_json(const Verdict& v);
json to_json(const HeightOneResult& r);
json to_json(const FilterCertificate& c);
json to_json(const SamplerResult& r);
json to_json(const ConnectivityResult& c);
json to_json(const AttractorAnalysis& a);
json to_json(const GapStats& g);
json to_json(const LambdaMin& m);
json to_json(const CountSeries& s);
json to_json(const Crosscheck& c);
json to_json(const FixtureResult& r);

// Spectrum summary plus the first `limit` values (all when limit is 0).
json spectrum_json(const SpectrumReport& r, const GapStats& g, std::size_t limit);

// "key: value" lines with dotted paths for nested objects.
std::string to_text(const json& j);

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace spectra
