#include "exdd/exdd.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "exdd/circuit.hpp"
#include "exdd/measure.hpp"
#include "exdd/report.hpp"

struct exdd_circuit {
  exdd::Circuit c;
};

namespace {

using nlohmann::json;

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void set(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

template <class Fn>
int guarded(char** err, Fn&& fn) {
  try {
    fn();
    return EXDD_OK;
  } catch (const exdd::ParseError& e) {
    set(err, e.what());
    return EXDD_ERR_PARSE;
  } catch (const json::exception& e) {
    set(err, std::string("bad options: ") + e.what());
    return EXDD_ERR_ARGUMENT;
  } catch (const exdd::TooLarge& e) {
    set(err, e.what());
    return EXDD_ERR_TOO_LARGE;
  } catch (const exdd::IndexOutOfRange& e) {
    set(err, e.what());
    return EXDD_ERR_RANGE;
  } catch (const exdd::ZeroState& e) {
    set(err, e.what());
    return EXDD_ERR_ZERO_STATE;
  } catch (const std::invalid_argument& e) {
    set(err, e.what());
    return EXDD_ERR_ARGUMENT;
  } catch (const std::out_of_range& e) {
    set(err, e.what());
    return EXDD_ERR_RANGE;
  } catch (const std::exception& e) {
    set(err, e.what());
    return EXDD_ERR_INTERNAL;
  }
}

json parse_options(const char* text) {
  if (!text || !*text) return json::object();
  json j = json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("options must be a JSON object");
  return j;
}

exdd::RunConfig config_from(const json& o) {
  exdd::RunConfig cfg;
  const std::string backend = o.value("backend", "evdd");
  if (backend == "evdd") cfg.mode = exdd::Mode::EVDD;
  else if (backend == "limdd") cfg.mode = exdd::Mode::LIMDD;
  else throw std::invalid_argument("unknown backend: " + backend);
  const std::string coeffs = o.value("coeffs", "exact");
  if (coeffs == "exact") cfg.backend = exdd::Backend::Exact;
  else if (coeffs == "float") cfg.backend = exdd::Backend::Float;
  else throw std::invalid_argument("unknown coefficient backend: " + coeffs);
  cfg.tolerance = o.value("tolerance", 1e-14);
  const std::string norm = o.value("norm", "low");
  if (norm == "low") cfg.norm = exdd::NormRule::Low;
  else if (norm == "l2") cfg.norm = exdd::NormRule::L2;
  else throw std::invalid_argument("unknown normalization: " + norm);
  cfg.check_bounds = o.value("check_bounds", false);
  cfg.check_coeffs = o.value("check_coeffs", false);
  cfg.keep_caches = o.value("keep_caches", false);
  cfg.native_ccx = o.value("native_ccx", false);
  cfg.trace = o.value("trace", false);
  if (o.contains("seed") && !o["seed"].is_null()) cfg.seed = o["seed"].get<std::uint64_t>();
  return cfg;
}

}  // namespace

extern "C" {

const char* exdd_version(void) { return "0.1.0"; }

const char* exdd_status_string(int status) {
  switch (status) {
    case EXDD_OK: return "ok";
    case EXDD_ERR_PARSE: return "parse error";
    case EXDD_ERR_ARGUMENT: return "invalid argument";
    case EXDD_ERR_RANGE: return "out of range";
    case EXDD_ERR_TOO_LARGE: return "too large";
    case EXDD_ERR_ZERO_STATE: return "zero state";
    case EXDD_ERR_INTERNAL: return "internal error";
    default: return "unknown status";
  }
}

void exdd_string_free(char* s) { std::free(s); }

int exdd_circuit_parse(const char* qasm, exdd_circuit** out, char** err) {
  if (!qasm || !out) return EXDD_ERR_ARGUMENT;
  return guarded(err, [&] { *out = new exdd_circuit{exdd::parse_qasm(qasm)}; });
}

int exdd_circuit_generate(const char* kind, const char* params_json, exdd_circuit** out, char** err) {
  if (!kind || !out) return EXDD_ERR_ARGUMENT;
  return guarded(err, [&] {
    const json p = parse_options(params_json);
    const std::string k = kind;
    const int n = p.value("n", 0);
    exdd::Circuit c;
    if (k == "grover") {
      std::optional<int> it;
      if (p.contains("iterations")) it = p["iterations"].get<int>();
      c = exdd::gen_grover(n, p.value("marked", std::string(static_cast<std::size_t>(std::max(n, 0)), '1')), it);
    } else if (k == "wstate") {
      c = exdd::gen_wstate(n);
    } else if (k == "random") {
      exdd::RandomOptions ro;
      ro.max_t = p.value("max_t", -1);
      ro.max_h = p.value("max_h", -1);
      ro.clifford_only = p.value("clifford_only", false);
      c = exdd::gen_random(n, p.value("depth", 50), p.value("seed", std::uint64_t{0}), ro);
    } else {
      throw std::invalid_argument("unknown generator: " + k);
    }
    *out = new exdd_circuit{std::move(c)};
  });
}

void exdd_circuit_free(exdd_circuit* c) { delete c; }

int exdd_circuit_qubits(const exdd_circuit* c) { return c ? c->c.n_qubits : -1; }

int exdd_circuit_emit(const exdd_circuit* c, char** qasm) {
  if (!c || !qasm) return EXDD_ERR_ARGUMENT;
  return guarded(nullptr, [&] { *qasm = dup(exdd::emit_qasm(c->c)); });
}

int exdd_circuit_set_name(exdd_circuit* c, const char* name) {
  if (!c || !name) return EXDD_ERR_ARGUMENT;
  c->c.name = name;
  return EXDD_OK;
}

int exdd_simulate(const exdd_circuit* c, const char* options_json, char** report_json, char** dot, char** err) {
  if (!c || !report_json) return EXDD_ERR_ARGUMENT;
  return guarded(err, [&] {
    const auto out = exdd::run(c->c, config_from(parse_options(options_json)), dot != nullptr);
    *report_json = dup(out.report.dump(2));
    if (dot) *dot = dup(out.dot);
  });
}

int exdd_bounds(const exdd_circuit* c, int native_ccx, char** out, char** err) {
  if (!c || !out) return EXDD_ERR_ARGUMENT;
  return guarded(err, [&] { *out = dup(exdd::bounds_json(exdd::track(c->c, native_ccx != 0)).dump(2)); });
}

int exdd_compare(const exdd_circuit* c, const char* options_json, char** out, char** err) {
  if (!c || !out) return EXDD_ERR_ARGUMENT;
  return guarded(err, [&] { *out = dup(exdd::compare(c->c, config_from(parse_options(options_json))).dump(2)); });
}

}  // extern "C"
