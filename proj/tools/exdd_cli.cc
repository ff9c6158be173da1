#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "exdd/exdd.h"

namespace {

using nlohmann::json;

constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct Failure {
  std::string msg;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{"cannot write " + path};
  out << text;
}

// owns a char* from the library
struct Str {
  char* p = nullptr;
  ~Str() { exdd_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

void check(int status, const Str& err) {
  if (status == EXDD_OK) return;
  throw Failure{std::string(exdd_status_string(status)) + (err.p ? ": " + err.str() : "")};
}

struct Handle {
  exdd_circuit* c = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  ~Handle() { exdd_circuit_free(c); }
};

void load(Handle& h, const std::string& path) {
  Str err;
  check(exdd_circuit_parse(slurp(path).c_str(), &h.c, &err.p), err);
  std::string name = path;
  if (auto s = name.find_last_of('/'); s != std::string::npos) name = name.substr(s + 1);
  exdd_circuit_set_name(h.c, name.c_str());
}

void generate(Handle& h, const std::string& family, const json& params) {
  Str err;
  check(exdd_circuit_generate(family.c_str(), params.dump().c_str(), &h.c, &err.p), err);
}

struct SimArgs {
  std::string file;
  std::string backend = "evdd";
  std::string coeffs = "exact";
  std::string norm = "low";
  double tolerance = 1e-14;
  bool check_bounds = false, check_coeffs = false, keep_caches = false, native_ccx = false, trace = false;
  std::string stats, dot;
  std::int64_t seed = -1;
};

json options(const SimArgs& a) {
  json o = {{"backend", a.backend},     {"coeffs", a.coeffs},           {"tolerance", a.tolerance},
            {"norm", a.norm},           {"check_bounds", a.check_bounds}, {"check_coeffs", a.check_coeffs},
            {"keep_caches", a.keep_caches}, {"native_ccx", a.native_ccx},   {"trace", a.trace}};
  if (a.seed >= 0) o["seed"] = a.seed;
  return o;
}

int cmd_simulate(const SimArgs& a) {
  Handle h;
  load(h, a.file);
  Str rep, dot, err;
  check(exdd_simulate(h.c, options(a).dump().c_str(), &rep.p, a.dot.empty() ? nullptr : &dot.p, &err.p), err);
  const std::string text = rep.str() + "\n";
  if (!a.stats.empty()) dump(a.stats, text);
  if (!a.dot.empty()) dump(a.dot, dot.str());
  std::cout << text;
  const json r = json::parse(rep.str());
  for (const auto& v : r["violations"]) std::cerr << "violation: " << v.get<std::string>() << "\n";
  return r["violations"].empty() ? 0 : kExitViolation;
}

int cmd_bounds(const std::string& file, bool native) {
  Handle h;
  load(h, file);
  Str out, err;
  check(exdd_bounds(h.c, native ? 1 : 0, &out.p, &err.p), err);
  std::cout << out.str() << "\n";
  return 0;
}

int cmd_compare(const SimArgs& a) {
  Handle h;
  load(h, a.file);
  Str out, err;
  check(exdd_compare(h.c, options(a).dump().c_str(), &out.p, &err.p), err);
  const std::string text = out.str() + "\n";
  if (!a.stats.empty()) dump(a.stats, text);
  std::cout << text;
  const json r = json::parse(out.str());
  return r["exact"]["violations"].empty() && r["float"]["violations"].empty() ? 0 : kExitViolation;
}

const std::vector<std::string> kCsvColumns = {
    "family",      "size",       "seed",        "backend",        "coeffs",        "tolerance", "n_qubits",
    "gates",       "final_nodes", "peak_nodes", "width",          "max_coeff_bits", "h_count",   "t_count",
    "cz_count",    "toffoli_count", "runtime_ms", "p0",           "violations"};

struct BenchArgs {
  std::string family;
  std::vector<int> sizes;
  int depth = 50;
  int seeds = 1;
  int max_t = -1;
  std::string backend = "evdd";
  double tolerance = 1e-14;
  std::string out;
};

int cmd_bench(const BenchArgs& b) {
  const bool fresh = [&] {
    std::ifstream in(b.out);
    return !in || in.peek() == std::ifstream::traits_type::eof();
  }();
  std::ofstream csv(b.out, std::ios::app);
  if (!csv) throw Failure{"cannot write " + b.out};
  if (fresh) {
    for (std::size_t i = 0; i < kCsvColumns.size(); ++i) csv << (i ? "," : "") << kCsvColumns[i];
    csv << "\n";
  }
  int status = 0;
  const int n_seeds = b.family == "random" ? b.seeds : 1;
  for (int size : b.sizes) {
    for (int seed = 0; seed < n_seeds; ++seed) {
      json params = {{"n", size}};
      if (b.family == "random") params.update({{"depth", b.depth}, {"seed", seed}, {"max_t", b.max_t}});
      Handle h;
      generate(h, b.family, params);
      for (const char* coeffs : {"exact", "float"}) {
        SimArgs a;
        a.backend = b.backend;
        a.coeffs = coeffs;
        a.tolerance = b.tolerance;
        Str rep, err;
        check(exdd_simulate(h.c, options(a).dump().c_str(), &rep.p, nullptr, &err.p), err);
        const json r = json::parse(rep.str());
        if (!r["violations"].empty()) status = kExitViolation;
        csv << b.family << ',' << size << ',' << seed << ',' << b.backend << ',' << coeffs << ','
            << r["policy"]["tolerance"].get<double>() << ',' << r["circuit"]["n_qubits"] << ','
            << r["circuit"]["gates"] << ',' << r["final_nodes"] << ',' << r["peak_nodes"] << ',' << r["width"]
            << ',' << r["max_coeff_bits"] << ',' << r["h_count"] << ',' << r["t_count"] << ',' << r["cz_count"]
            << ',' << r["toffoli_count"] << ',' << r["runtime_ms"].get<double>() << ','
            << r["p0"]["decimal"].get<std::string>() << ',' << r["violations"].size() << "\n";
      }
    }
  }
  return status;
}

struct GenArgs {
  std::string family;
  int n = 2;
  std::string marked;
  int iterations = -1;
  int depth = 50;
  std::uint64_t seed = 0;
  int max_t = -1;
  std::string out;
};

int cmd_generate(const GenArgs& g) {
  json params = {{"n", g.n}, {"depth", g.depth}, {"seed", g.seed}, {"max_t", g.max_t}};
  if (!g.marked.empty()) params["marked"] = g.marked;
  if (g.iterations >= 0) params["iterations"] = g.iterations;
  Handle h;
  generate(h, g.family, params);
  Str q;
  check(exdd_circuit_emit(h.c, &q.p), Str{});
  if (g.out.empty()) std::cout << q.str();
  else dump(g.out, q.str());
  return 0;
}

void add_sim_flags(CLI::App* sc, SimArgs& a, bool checks) {
  sc->add_option("file", a.file, "circuit in the QASM subset")->required();
  sc->add_option("--backend", a.backend, "evdd or limdd")->check(CLI::IsMember({"evdd", "limdd"}));
  sc->add_option("--tolerance", a.tolerance, "float comparison tolerance")->check(CLI::NonNegativeNumber);
  sc->add_option("--norm", a.norm, "low or l2 (l2: float EVDD only)")->check(CLI::IsMember({"low", "l2"}));
  sc->add_option("--stats", a.stats, "write the JSON report here");
  sc->add_flag("--keep-caches", a.keep_caches, "keep operation caches across gates");
  if (!checks) return;
  sc->add_option("--coeffs", a.coeffs, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  sc->add_flag("--check-bounds", a.check_bounds, "assert width bounds after every gate");
  sc->add_flag("--check-coeffs", a.check_coeffs, "assert coefficient ring membership after every gate");
  sc->add_flag("--native-ccx", a.native_ccx, "track CCX as one gate in the bound report");
  sc->add_flag("--trace", a.trace, "include per-gate traces");
  sc->add_option("--dot", a.dot, "write the final diagram in Graphviz format");
  sc->add_option("--seed", a.seed, "sample the top qubit with this seed")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact-coefficient EVDD/LIMDD simulator for Clifford+T circuits"};
  app.require_subcommand(1);

  SimArgs sim;
  auto* s = app.add_subcommand("simulate", "simulate a circuit and measure its top qubit");
  add_sim_flags(s, sim, true);

  std::string bfile;
  bool native = false;
  auto* b = app.add_subcommand("bounds", "stabilizer-nullity width bounds without building diagrams");
  b->add_option("file", bfile)->required();
  b->add_flag("--native-ccx", native);

  SimArgs cmp;
  auto* c = app.add_subcommand("compare", "run exact and float coefficients side by side");
  add_sim_flags(c, cmp, false);

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "benchmark sweep, one CSV row per run");
  be->add_option("family", bench.family)->required()->check(CLI::IsMember({"grover", "wstate", "random"}));
  be->add_option("--sizes", bench.sizes)->required()->delimiter(',');
  be->add_option("--depth", bench.depth)->check(CLI::NonNegativeNumber);
  be->add_option("--seeds", bench.seeds, "number of seeds for random circuits")->check(CLI::PositiveNumber);
  be->add_option("--max-t", bench.max_t);
  be->add_option("--backend", bench.backend)->check(CLI::IsMember({"evdd", "limdd"}));
  be->add_option("--tolerance", bench.tolerance)->check(CLI::NonNegativeNumber);
  be->add_option("--out", bench.out)->required();

  GenArgs gen;
  auto* g = app.add_subcommand("generate", "write a benchmark circuit as QASM");
  g->add_option("family", gen.family)->required()->check(CLI::IsMember({"grover", "wstate", "random"}));
  g->add_option("-n,--n", gen.n);
  g->add_option("--marked", gen.marked);
  g->add_option("--iterations", gen.iterations);
  g->add_option("--depth", gen.depth);
  g->add_option("--seed", gen.seed);
  g->add_option("--max-t", gen.max_t);
  g->add_option("--out", gen.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*b) return cmd_bounds(bfile, native);
    if (*c) return cmd_compare(cmp);
    if (*be) return cmd_bench(bench);
    if (*g) return cmd_generate(gen);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.msg << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
