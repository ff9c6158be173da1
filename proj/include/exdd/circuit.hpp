#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "exdd/coeff.hpp"
#include "exdd/pauli.hpp"

namespace exdd {

// Qubits are 1-based; qubit n is the top of the diagram and QASM q[0].
struct GateInstance {
  GateKind kind;
  std::array<int, 3> q{0, 0, 0};

  int arity() const { return gate_arity(kind); }
  friend bool operator==(const GateInstance&, const GateInstance&) = default;
};

struct Circuit {
  int n_qubits = 1;
  std::vector<GateInstance> gates;
  std::vector<int> measured;
  std::string name;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.n_qubits == b.n_qubits && a.gates == b.gates && a.measured == b.measured;
  }
};

struct GateCounts {
  long h = 0, t = 0, cz = 0, toffoli = 0, clifford_other = 0;
};

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(int line_, int column_, const std::string& reason)
      : std::runtime_error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " +
                           reason),
        line(line_),
        column(column_) {}
};

struct TooLarge : std::length_error {
  using std::length_error::length_error;
};

Circuit parse_qasm(const std::string& text);
std::string emit_qasm(const Circuit& c);
std::string gate_text(const GateInstance& g, int n);

Circuit gen_grover(int n_search, const std::string& marked, std::optional<int> iterations = std::nullopt);
Circuit gen_wstate(int n);

struct RandomOptions {
  int max_t = -1;  // compiled T/Tdg cap, -1 = none
  int max_h = -1;  // compiled H cap
  bool clifford_only = false;
};
Circuit gen_random(int n, int depth, std::uint64_t seed, const RandomOptions& opt = {});

GateCounts counts(const Circuit& c);
Circuit compiled(const Circuit& c);

// amplitude index: bit k-1 is qubit k
std::vector<RingValue> dense_simulate(const Circuit& c, int cap = 12);
void dense_apply(std::vector<RingValue>& psi, int n, const GateInstance& g);

}  // namespace exdd
