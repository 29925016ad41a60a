#pragma once

// JSON and CSV serialisation for the command-line tool.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chamber/beta.hpp"
#include "chamber/expansion.hpp"
#include "chamber/mc.hpp"

namespace chamber {

using Json = nlohmann::json;

/// {num, den, pi_half_power, approx} with num and den as decimal strings.
/// Parsing also accepts plain JSON integers.
Json to_json(const PiScaledRational& x);
PiScaledRational pi_scaled_from_json(const Json& j);

Json to_json(const CrossCheck& c);
CrossCheck crosscheck_from_json(const Json& j);

Json to_json(const McEstimate& e);

struct OutputEnvelope {
  std::string command;
  std::optional<int> m;
  Json results = Json::object();
  bool exact = true;
  std::vector<CrossCheck> checks;
  std::string version = CHAMBER_VERSION;

  Json to_json() const;
  /// Throws SchemaError on any missing or mistyped field.
  static OutputEnvelope from_json(const Json& j);
};

OutputEnvelope beta_envelope(const BetaReport& r);

/// One row per leaf value of results: exact values fill num/den/pi_half_power,
/// Monte Carlo estimates fill approx/stderr, plain numbers fill approx.
struct CsvRow {
  std::string command;
  std::string m;
  bool exact = true;
  std::string key;
  std::string num;
  std::string den;
  std::string pi_half_power;
  std::string approx;
  std::string std_error;
};

std::vector<CsvRow> csv_rows(const OutputEnvelope& env);
std::string csv_header();
std::string to_csv_line(const CsvRow& row);

/// A single input, or {"a": {...}, "b": {...}} for a comparison. The beta2
/// coefficient is never read from the document.
struct ExpansionRequest {
  ExpansionInput a;
  std::optional<ExpansionInput> b;
  std::uint64_t n_max = 1'000'000;
};

/// Throws SchemaError on malformed documents and, unless override_bounds,
/// when n_of_m lies outside the leading-coefficient bounds.
ExpansionRequest expansion_request_from_json(const Json& j, bool override_bounds);

}  // namespace chamber
