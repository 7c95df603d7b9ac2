#pragma once

#include <string>

#include "json.hpp"
#include "speclab/restriction.hpp"
#include "speclab/sphere_sharp.hpp"
#include "speclab/uncertainty.hpp"
#include "speclab/weyl.hpp"

namespace speclab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

/// Finite doubles as numbers, infinities and NaN as strings.
Json number(double v);

Json to_json(const UncertaintyCertificate& c);
Json to_json(const SuiteResult& r, bool include_draws);
Json to_json(const FourierRatioCheck& c);
Json to_json(const std::vector<FrSweepRow>& rows);
Json to_json(const TubularReport& t);
Json to_json(const TubularSweep& s, bool include_reports);
Json to_json(const BrScan& s);
Json to_json(const SharpnessRow& r);
Json to_json(const WeylReport& r);
Json to_json(const HomogeneityDefect& d);
Json to_json(const UpForHvCertificate& c);

/// {"tool", "version", "command", "provenance": {config...}, "generated_at", "result"}.
Json envelope(const std::string& command, const Json& config, Json result);

/// Removes the timestamp so two runs can be compared byte for byte.
std::string payload_without_timestamp(const std::string& report);

}  // namespace speclab
