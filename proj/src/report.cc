#include "exdd/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "exdd/measure.hpp"

namespace exdd {

using nlohmann::json;

double gc_threshold_from_env() {
  const char* v = std::getenv("QDD_GC_THRESHOLD");
  if (!v || !*v) return 0.75;
  char* end = nullptr;
  const double r = std::strtod(v, &end);
  if (*end != '\0' || !(r > 0.0 && r <= 1.0)) throw std::invalid_argument("QDD_GC_THRESHOLD must be in (0, 1]");
  return r;
}

namespace {

std::string fixed30(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.30f", x);
  return buf;
}

json circuit_json(const Circuit& c) {
  json j;
  j["name"] = c.name;
  j["n_qubits"] = c.n_qubits;
  j["gates"] = c.gates.size();
  j["measured"] = c.measured;
  j["seed"] = c.seed;
  return j;
}

json bound_summary(const BoundReport& r) {
  return {{"native_ccx", r.native_ccx},
          {"nullity", r.nullity},
          {"local_nullity", r.local_nullity},
          {"limdd_width_bound", r.limdd_width_bound},
          {"evdd_width_bound", r.evdd_width_bound},
          {"closed_form_exponent", r.closed_form},
          {"t_count", r.t},
          {"max_ccx_drop", r.max_ccx_drop}};
}

template <class F>
RunOutput run_with(const Circuit& c, const RunConfig& cfg, F field, bool want_dot) {
  Store<F> store(cfg.mode, field, cfg.norm);
  store.set_gc_threshold(cfg.gc_threshold ? *cfg.gc_threshold : gc_threshold_from_env());
  SimOptions opt;
  opt.check_bounds = cfg.check_bounds;
  opt.check_coeffs = cfg.check_coeffs;
  opt.keep_caches = cfg.keep_caches;
  opt.record_trace = cfg.trace;
  State<F> s;
  RunStats rs = simulate(store, c, &s, opt);
  const DiagramStats st = store.stats(s.root);

  json r;
  r["circuit"] = circuit_json(c);
  r["mode"] = mode_name(cfg.mode);
  r["policy"] = {{"coeffs", F::kIsFloat ? "float" : "exact"},
                 {"tolerance", F::kIsFloat ? cfg.tolerance : 0.0},
                 {"norm", cfg.norm == NormRule::L2 ? "l2" : "low"}};
  r["final_nodes"] = st.node_count + 1;
  r["internal_nodes"] = st.node_count;
  r["peak_nodes"] = rs.peak_nodes + 1;
  r["width"] = st.width;
  r["peak_width"] = rs.peak_width;
  r["width_per_level"] = st.width_per_level;
  r["max_coeff_bits"] = rs.max_coeff_bits;
  r["h_count"] = rs.counts.h;
  r["t_count"] = rs.counts.t;
  r["cz_count"] = rs.counts.cz;
  r["toffoli_count"] = rs.counts.toffoli;
  r["runtime_ms"] = rs.runtime_ms;
  r["gc_runs"] = rs.gc_runs;

  const auto m = measurement_probability(store, s);
  json p0;
  if constexpr (F::kIsFloat) {
    p0["symbolic"] = fixed30(m.p0.real());
    p0["decimal"] = fixed30(m.p0.real());
    p0["value"] = m.p0.real();
  } else {
    p0["symbolic"] = render(m.p0);
    p0["decimal"] = render_decimal(m.p0, 30);
    p0["value"] = m.p0.to_complex().real();
  }
  r["p0"] = p0;
  if (cfg.seed) r["sampled_outcome"] = sample(store, s, *cfg.seed);

  BoundReport br = track(c, cfg.native_ccx, cfg.trace);
  json b = bound_summary(br);
  if (cfg.trace) b["trace"] = bounds_json(br);
  r["bound_report"] = b;

  if (cfg.trace) {
    json t = json::array();
    for (const auto& g : rs.trace)
      t.push_back({{"gate", g.gate}, {"nodes", g.nodes + 1}, {"width", g.width}, {"max_coeff_bits", g.max_coeff_bits}});
    r["trace"] = t;
  }
  r["violations"] = rs.violations;
  RunOutput out{r, {}};
  if (want_dot) out.dot = store.dot(s.root);
  return out;
}

}  // namespace

RunOutput run(const Circuit& c, const RunConfig& cfg, bool want_dot) {
  if (cfg.backend == Backend::Exact) return run_with(c, cfg, ExactField{}, want_dot);
  if (!(cfg.tolerance >= 0.0)) throw std::invalid_argument("tolerance must be nonnegative");
  return run_with(c, cfg, FloatField{cfg.tolerance}, want_dot);
}

json bounds_json(const BoundReport& r) {
  json a = json::array();
  for (const auto& e : r.trace)
    a.push_back({{"gate", e.gate},
                 {"nullity", e.nullity},
                 {"local_nullity", e.local_nullity},
                 {"limdd_bound", e.limdd_bound},
                 {"evdd_bound", e.evdd_bound}});
  return a;
}

bool deviates(double p_float, double p_exact, double rel) {
  const double d = std::abs(p_float - p_exact);
  if (p_exact == 0.0) return d > 0.0;
  return d / std::abs(p_exact) > rel;
}

json compare(const Circuit& c, const RunConfig& cfg) {
  RunConfig ex = cfg, fl = cfg;
  ex.backend = Backend::Exact;
  ex.norm = NormRule::Low;
  fl.backend = Backend::Float;
  const json a = run(c, ex).report;
  const json b = run(c, fl).report;
  const double pe = a["p0"]["value"], pf = b["p0"]["value"];
  json r;
  r["exact"] = a;
  r["float"] = b;
  r["node_delta"] = static_cast<long>(b["final_nodes"].get<std::size_t>()) -
                    static_cast<long>(a["final_nodes"].get<std::size_t>());
  r["p0_deviation"] = std::abs(pf - pe);
  r["incorrect"] = deviates(pf, pe);
  return r;
}

}  // namespace exdd
