#pragma once

// JSON and CSV serialisation of reports. Every JSON document is wrapped in
// an envelope carrying the tool version, the resolved configuration and
// the seed, so a rerun with the embedded config reproduces the payload.

#include <cstdint>
#include <iosfwd>
#include <string_view>

#include <json.hpp>

#include "stardecomp/analytic.hpp"
#include "stardecomp/certify.hpp"
#include "stardecomp/decomp.hpp"

namespace stardecomp::report {

using nlohmann::json;

inline constexpr std::string_view kToolName = "stardecomp";
inline constexpr std::string_view kToolVersion = "0.1.0";

json to_json(const analytic::ThresholdReport& r);
json to_json(const certify::GridOptions& grid);
json to_json(const certify::CertifyResult& r);
json to_json(const certify::DegreeOutcome& outcome);
json to_json(const certify::SweepReport& sweep);
json to_json(const decomp::DecomposeOutcome& outcome);
json to_json(const decomp::Verification& v);

/// {tool, version, command, config, payload}. `config` must include the seed
/// (use 0 for commands that draw nothing).
json envelope(std::string_view command, json config, json payload);

/// One row per degree.
void write_sweep_csv(std::ostream& out, const certify::SweepReport& sweep);
/// `d,k_ind,k_certified` for the exceptional degrees only.
void write_exceptional_csv(std::ostream& out, const certify::SweepReport& sweep);

}  // namespace stardecomp::report
