#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exdd/circuit.hpp"
#include "exdd/pauli.hpp"

namespace exdd {

// Certified subgroup of the stabilizer group of the simulated state.
class StabilizerTableau {
 public:
  static StabilizerTableau init(int n);

  int n() const { return n_; }
  const std::vector<SignedPauli>& generators() const { return gens_; }

  void apply_clifford(GateKind g, int q1, int q2 = 0);
  int apply_t(int k);                         // rows dropped (0 or 1)
  int apply_toffoli(int c1, int c2, int tar);  // rows dropped (<= 3)
  int apply(const GateInstance& g);            // dispatches, CCX handled natively

  int nullity() const { return n_ - static_cast<int>(gens_.size()); }
  int local_nullity() const;
  bool in_group(const PauliString& s) const;

 private:
  int n_ = 0;
  std::vector<SignedPauli> gens_;
};

struct BoundEntry {
  std::string gate;
  int nullity = 0;
  int local_nullity = 0;
  std::uint64_t limdd_bound = 1;
  std::uint64_t evdd_bound = 1;
  long h = 0, t = 0, cz = 0;
  int closed_form = 0;  // min(#H, 2#CZ + #T)
};

struct BoundReport {
  int n_qubits = 0;
  bool native_ccx = false;
  int nullity = 0;
  int local_nullity = 0;
  std::uint64_t limdd_width_bound = 1;
  std::uint64_t evdd_width_bound = 1;
  long h = 0, t = 0, cz = 0, toffoli = 0;
  int closed_form = 0;
  int max_ccx_drop = 0;
  std::vector<BoundEntry> trace;
};

// primitive stream fed to the tracker: everything compiled, except CCX when native
std::vector<GateInstance> tracking_stream(const Circuit& c, bool native_ccx);
BoundReport track(const Circuit& c, bool native_ccx = false, bool with_trace = true);

inline std::uint64_t pow2_sat(long e) {
  return e >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << e);
}

}  // namespace exdd
