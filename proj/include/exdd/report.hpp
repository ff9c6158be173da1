#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "exdd/circuit.hpp"
#include "exdd/dd.hpp"
#include "exdd/stabtrack.hpp"

namespace exdd {

struct RunConfig {
  Mode mode = Mode::EVDD;
  Backend backend = Backend::Exact;
  double tolerance = 1e-14;
  NormRule norm = NormRule::Low;
  bool check_bounds = false;
  bool check_coeffs = false;
  bool keep_caches = false;
  bool native_ccx = false;
  bool trace = false;
  std::optional<std::uint64_t> seed;
  std::optional<double> gc_threshold;  // falls back to QDD_GC_THRESHOLD, then 0.75
};

struct RunOutput {
  nlohmann::json report;
  std::string dot;
};

// Simulates, measures the top qubit and fills a report object.
RunOutput run(const Circuit& c, const RunConfig& cfg, bool want_dot = false);

nlohmann::json bounds_json(const BoundReport& r);

// exact and float runs of the same circuit, plus deviation of p0
nlohmann::json compare(const Circuit& c, const RunConfig& cfg);

// |a - b| / |b| > 5%, with b = 0 flagged whenever a != 0
bool deviates(double p_float, double p_exact, double rel = 0.05);

double gc_threshold_from_env();

}  // namespace exdd
