#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

std::string data(const std::string& f) { return std::string(EXDD_TEST_DATA) + "/" + f; }
std::string tmp(const std::string& f) { return std::string(EXDD_TMP) + "/cli_" + f; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// runs the cli with stdout to `out`, returns the exit status
int cli(const std::string& args, const std::string& out) {
  const std::string cmd = std::string("\"") + EXDD_CLI + "\" " + args + " > \"" + out + "\" 2> \"" + out + ".err\"";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

json load(const std::string& path) {
  try {
    return json::parse(slurp(path));
  } catch (const std::exception& e) {
    check(false, "json parse of " + path + ": " + e.what());
    return json::object();
  }
}

void check_required(const json& obj, const json& schema, const std::string& where) {
  if (!schema.contains("required")) return;
  for (const auto& k : schema["required"]) {
    const auto key = k.get<std::string>();
    check(obj.contains(key), where + " missing " + key);
    if (obj.contains(key) && schema.contains("properties") && schema["properties"].contains(key) &&
        obj[key].is_object())
      check_required(obj[key], schema["properties"][key], where + "." + key);
  }
  if (schema.value("additionalProperties", true) == false && schema.contains("properties"))
    for (const auto& [k, v] : obj.items()) check(schema["properties"].contains(k), where + " unexpected key " + k);
}

}  // namespace

int main() {
  const json schema = load(EXDD_SCHEMA);

  // exact default
  {
    const auto out = tmp("motivating.json");
    check(cli("simulate " + data("motivating.qasm") + " --stats " + tmp("stats.json") + " --dot " + tmp("m.dot"),
              out) == 0,
          "simulate motivating exit 0");
    const auto r = load(out);
    check(r.value("final_nodes", 0) == 3, "motivating exact final_nodes 3");
    check(r["p0"].value("decimal", "") == "1.000000000000000000000000000000", "motivating p0 decimal");
    check(r["violations"].empty(), "motivating no violations");
    check_required(r, schema, "report");
    check(fs::exists(tmp("stats.json")) && load(tmp("stats.json")) == r, "--stats file matches stdout");
    check(slurp(tmp("m.dot")).find("digraph") != std::string::npos, "--dot file written");
  }
  // float tolerance 0 keeps the spurious node
  {
    const auto out = tmp("motivating_float.json");
    check(cli("simulate " + data("motivating.qasm") + " --coeffs float --tolerance 0", out) == 0,
          "simulate float exit 0");
    const auto r = load(out);
    check(r.value("final_nodes", 0) == 4, "motivating float tol 0 final_nodes 4");
    check(r["policy"].value("coeffs", "") == "float", "policy records float");
    check_required(r, schema, "float report");
  }
  // limdd with trace and seed
  {
    const auto out = tmp("leading.json");
    check(cli("simulate " + data("leading.qasm") + " --backend limdd --trace --check-bounds --check-coeffs --seed 7",
              out) == 0,
          "simulate limdd exit 0");
    const auto r = load(out);
    check(r.value("mode", "") == "limdd", "mode limdd");
    check(r.contains("trace") && r["trace"].size() == r["circuit"].value("gates", 0u),
          "trace has one entry per primitive");
    check(r.contains("sampled_outcome"), "seed gives sampled outcome");
    check_required(r, schema, "limdd report");
    const auto again = tmp("leading2.json");
    cli("simulate " + data("leading.qasm") + " --backend limdd --trace --check-bounds --check-coeffs --seed 7", again);
    auto a = r, b = load(again);
    a.erase("runtime_ms");
    b.erase("runtime_ms");
    check(a == b, "repeat run identical apart from runtime");
  }
  // measure statements and toffoli
  check(cli("simulate " + data("clifford.qasm") + " --backend limdd --check-bounds", tmp("cliff.json")) == 0,
        "clifford exit 0");
  check(load(tmp("cliff.json")).value("width", 0) == 1, "clifford limdd width 1");
  check(cli("simulate " + data("toffoli.qasm") + " --native-ccx --check-bounds", tmp("toff.json")) == 0,
        "toffoli exit 0");
  check(load(tmp("toff.json"))["bound_report"].value("native_ccx", false), "native ccx recorded");

  // errors
  check(cli("simulate " + data("bad_gate.qasm"), tmp("bad.json")) == 1, "unsupported gate exit 1");
  check(slurp(tmp("bad.json") + ".err").find("rx") != std::string::npos, "parse error names the gate");
  check(cli("simulate " + data("does_not_exist.qasm"), tmp("missing.json")) == 1, "missing file exit 1");
  check(cli("simulate " + data("motivating.qasm") + " --bogus", tmp("flag.json")) == 1, "bad flag exit 1");
  check(cli("simulate " + data("motivating.qasm") + " --coeffs float --norm l2 --backend limdd", tmp("l2.json")) == 1,
        "l2 limdd rejected");
  check(cli("simulate " + data("motivating.qasm") + " --tolerance -1 --coeffs float", tmp("tol.json")) == 1,
        "negative tolerance rejected");

  // violation
  {
    const auto out = tmp("drift.json");
    check(cli("simulate " + data("float_drift.qasm") + " --coeffs float --tolerance 0 --check-bounds", out) == 2,
          "float drift exit 2");
    check(!load(out)["violations"].empty(), "violations listed");
    check(cli("simulate " + data("float_drift.qasm") + " --check-bounds --check-coeffs", tmp("drift_exact.json")) == 0,
          "exact drift circuit exit 0");
  }

  // bounds
  {
    const auto out = tmp("bounds.json");
    check(cli("bounds " + data("leading.qasm"), out) == 0, "bounds exit 0");
    const auto r = load(out);
    check(r.is_array() && r.size() == 6, "bounds one entry per gate");
    for (const auto& e : r) check_required(e, schema["definitions"]["bounds"]["items"], "bounds entry");
    check(!r.empty() && r.back().value("nullity", -1) == 2, "bounds final nullity");
  }

  // compare
  {
    const auto out = tmp("compare.json");
    check(cli("compare " + data("motivating.qasm") + " --tolerance 0", out) == 0, "compare exit 0");
    const auto r = load(out);
    for (const char* k : {"exact", "float", "node_delta", "p0_deviation", "incorrect"})
      check(r.contains(k), std::string("compare key ") + k);
    check(r.value("node_delta", 0) == 1, "compare node delta 1");
    check(r.value("incorrect", true) == false, "compare not incorrect");
  }

  // bench and generate
  {
    const auto csv = tmp("bench.csv");
    fs::remove(csv);
    check(cli("bench wstate --sizes 2,4,8 --out " + csv, tmp("bench.out")) == 0, "bench exit 0");
    std::istringstream in(slurp(csv));
    std::string line;
    int rows = 0;
    std::getline(in, line);
    check(line.rfind("family,size,seed,backend,coeffs,tolerance,n_qubits", 0) == 0, "bench header");
    while (std::getline(in, line))
      if (!line.empty()) ++rows;
    check(rows == 6, "bench rows exact+float per size");
    check(cli("bench random --sizes 3 --depth 10 --seeds 2 --out " + csv, tmp("bench2.out")) == 0, "bench append");
    std::istringstream in2(slurp(csv));
    int lines = 0;
    while (std::getline(in2, line))
      if (!line.empty()) ++lines;
    check(lines == 1 + 6 + 4, "bench appends without a second header");

    check(cli("generate grover -n 3 --marked 101 --out " + tmp("g.qasm"), tmp("gen.out")) == 0, "generate exit 0");
    check(cli("simulate " + tmp("g.qasm") + " --check-bounds", tmp("g.json")) == 0, "generated circuit simulates");
    check(cli("generate nosuch -n 3", tmp("gen2.out")) == 1, "unknown family exit 1");
  }

  // full schema check when jsonschema is available
  if (std::system("python3 -c 'import jsonschema' > /dev/null 2>&1") == 0) {
    for (const char* f : {"motivating.json", "motivating_float.json", "leading.json", "drift.json", "cliff.json"}) {
      const std::string cmd = "python3 -c \"import json,sys,jsonschema; jsonschema.validate(json.load(open(sys.argv[1])),"
                              " json.load(open(sys.argv[2])))\" \"" +
                              tmp(f) + "\" \"" + EXDD_SCHEMA + "\"";
      check(std::system(cmd.c_str()) == 0, std::string("jsonschema validates ") + f);
    }
  } else {
    std::cout << "jsonschema not available, required-key check only\n";
  }

  if (failures) {
    std::cerr << failures << " cli checks failed\n";
    return 1;
  }
  std::cout << "cli: all checks passed\n";
  return 0;
}
