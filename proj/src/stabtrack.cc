#include "exdd/stabtrack.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "exdd/gates.hpp"

namespace exdd {

namespace {

SignedPauli to_signed(const PhasedPauli& p) {
  if (p.phase % 2 != 0) throw std::logic_error("stabilizer generator with imaginary phase");
  return {p.phase == 2, p.s};
}

bool has_x(const SignedPauli& g, int k) { return (g.s.x >> (k - 1)) & 1; }
bool has_z(const SignedPauli& g, int k) { return (g.s.z >> (k - 1)) & 1; }

}  // namespace

StabilizerTableau StabilizerTableau::init(int n) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  StabilizerTableau t;
  t.n_ = n;
  for (int k = 1; k <= n; ++k) t.gens_.push_back({false, PauliString::single(k, PauliOp::Z)});
  return t;
}

void StabilizerTableau::apply_clifford(GateKind g, int q1, int q2) {
  for (auto& row : gens_) row = to_signed(conjugate_by_clifford(row.phased(), g, q1, q2));
}

namespace {

// Clears `bit(row)` from every row but one, then removes that row.
template <class Pred>
int eliminate_column(std::vector<SignedPauli>& gens, Pred bit) {
  auto pivot = std::find_if(gens.begin(), gens.end(), bit);
  if (pivot == gens.end()) return 0;
  const SignedPauli p = *pivot;
  gens.erase(pivot);
  for (auto& row : gens)
    if (bit(row)) row = to_signed(row.phased() * p.phased());
  return 1;
}

}  // namespace

int StabilizerTableau::apply_t(int k) {
  return eliminate_column(gens_, [k](const SignedPauli& g) { return has_x(g, k); });
}

int StabilizerTableau::apply_toffoli(int c1, int c2, int tar) {
  int dropped = 0;
  dropped += eliminate_column(gens_, [c1](const SignedPauli& g) { return has_x(g, c1); });
  dropped += eliminate_column(gens_, [c2](const SignedPauli& g) { return has_x(g, c2); });
  dropped += eliminate_column(gens_, [tar](const SignedPauli& g) { return has_z(g, tar); });
  return dropped;
}

int StabilizerTableau::apply(const GateInstance& g) {
  switch (g.kind) {
    case GateKind::T:
    case GateKind::Tdg: return apply_t(g.q[0]);
    case GateKind::CCX: return apply_toffoli(g.q[0], g.q[1], g.q[2]);
    default: apply_clifford(g.kind, g.q[0], g.q[1]); return 0;
  }
}

bool StabilizerTableau::in_group(const PauliString& s) const {
  using u128 = unsigned __int128;
  std::map<int, u128, std::greater<int>> basis;
  auto lead = [](u128 v) {
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    return hi ? 127 - std::countl_zero(hi) : 63 - std::countl_zero(static_cast<std::uint64_t>(v));
  };
  for (const auto& g : gens_) {
    u128 v = lex_encode(g.s);
    while (v) {
      const int l = lead(v);
      auto it = basis.find(l);
      if (it == basis.end()) {
        basis.emplace(l, v);
        break;
      }
      v ^= it->second;
    }
  }
  u128 v = lex_encode(s);
  for (const auto& [l, row] : basis)
    if ((v >> l) & 1) v ^= row;
  return v == 0;
}

int StabilizerTableau::local_nullity() const {
  int local = 0;
  for (int k = 1; k <= n_; ++k) {
    for (PauliOp p : {PauliOp::X, PauliOp::Y, PauliOp::Z}) {
      if (in_group(PauliString::single(k, p))) {
        ++local;
        break;
      }
    }
  }
  return n_ - local;
}

std::vector<GateInstance> tracking_stream(const Circuit& c, bool native_ccx) {
  std::vector<GateInstance> out;
  for (const auto& g : c.gates) {
    if (native_ccx && g.kind == GateKind::CCX) {
      out.push_back(g);
      continue;
    }
    for (const auto& p : compile(g)) out.push_back(p);
  }
  return out;
}

BoundReport track(const Circuit& c, bool native_ccx, bool with_trace) {
  c.validate();
  BoundReport r;
  r.n_qubits = c.n_qubits;
  r.native_ccx = native_ccx;
  auto tab = StabilizerTableau::init(c.n_qubits);
  for (const auto& g : tracking_stream(c, native_ccx)) {
    const int dropped = tab.apply(g);
    switch (g.kind) {
      case GateKind::H: ++r.h; break;
      case GateKind::T:
      case GateKind::Tdg: ++r.t; break;
      case GateKind::CZ: ++r.cz; break;
      case GateKind::CCX:
        ++r.toffoli;
        r.max_ccx_drop = std::max(r.max_ccx_drop, dropped);
        break;
      default: break;
    }
    if (!with_trace) continue;
    BoundEntry e;
    e.gate = gate_text(g, c.n_qubits);
    e.nullity = tab.nullity();
    e.local_nullity = tab.local_nullity();
    e.limdd_bound = pow2_sat(e.nullity);
    e.evdd_bound = pow2_sat(e.local_nullity);
    e.h = r.h;
    e.t = r.t;
    e.cz = r.cz;
    e.closed_form = static_cast<int>(std::min(r.h, 2 * r.cz + r.t));
    r.trace.push_back(e);
  }
  r.nullity = tab.nullity();
  r.local_nullity = tab.local_nullity();
  r.limdd_width_bound = pow2_sat(r.nullity);
  r.evdd_width_bound = pow2_sat(r.local_nullity);
  r.closed_form = static_cast<int>(std::min(r.h, 2 * r.cz + r.t));
  return r;
}

}  // namespace exdd
