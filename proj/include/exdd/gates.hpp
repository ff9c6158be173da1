#pragma once

#include <string>
#include <vector>

#include "exdd/circuit.hpp"
#include "exdd/dd.hpp"

namespace exdd {

template <class F>
struct State {
  typename Store<F>::Edge root;
  int n = 0;
};

// CX -> H, CZ, H; CCX -> 7-T Clifford+T network; primitives pass through.
std::vector<GateInstance> compile(const GateInstance& g);

template <class F>
State<F> initial_state(Store<F>& store, int n);

template <class F>
typename Store<F>::Edge pauli_on_edge(Store<F>& store, const typename Store<F>::Edge& e, GateKind p, int k);

template <class F>
void apply_pauli(Store<F>& store, State<F>& s, GateKind p, int k);
template <class F>
void apply_diagonal(Store<F>& store, State<F>& s, GateKind g, int k);
template <class F>
void apply_hadamard(Store<F>& store, State<F>& s, int k);
template <class F>
void apply_cz(Store<F>& store, State<F>& s, int i, int j);
template <class F>
void apply_swap(Store<F>& store, State<F>& s, int i, int j);
// derived gates are compiled first
template <class F>
void apply_gate(Store<F>& store, State<F>& s, const GateInstance& g);

struct SimOptions {
  bool check_coeffs = false;
  bool check_bounds = false;
  bool keep_caches = false;
  bool record_trace = true;
};

struct GateRecord {
  std::string gate;
  std::size_t nodes = 0;  // terminal excluded
  std::size_t width = 0;
  std::size_t table = 0;
  unsigned max_coeff_bits = 0;
};

struct RunStats {
  std::vector<GateRecord> trace;
  std::size_t peak_nodes = 0;  // terminal excluded
  std::size_t peak_width = 0;
  std::size_t peak_table = 0;
  unsigned max_coeff_bits = 0;
  GateCounts counts;
  double runtime_ms = 0;
  std::vector<std::string> violations;
  std::size_t gc_runs = 0;
};

template <class F>
RunStats simulate(Store<F>& store, const Circuit& c, State<F>* out, const SimOptions& opt = {});

}  // namespace exdd
