#include "exdd/pauli.hpp"

#include <bit>

namespace exdd {

const char* gate_name(GateKind g) {
  switch (g) {
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    case GateKind::CX: return "cx";
    case GateKind::CCX: return "ccx";
  }
  return "?";
}

int gate_arity(GateKind g) {
  switch (g) {
    case GateKind::CZ:
    case GateKind::SWAP:
    case GateKind::CX: return 2;
    case GateKind::CCX: return 3;
    default: return 1;
  }
}

bool is_diagonal(GateKind g) {
  return g == GateKind::Z || g == GateKind::S || g == GateKind::Sdg || g == GateKind::T ||
         g == GateKind::Tdg;
}

char pauli_char(PauliOp p) { return "IXYZ"[static_cast<int>(p)]; }

int product_phase(const PauliString& a, const PauliString& b) {
  const std::uint64_t ax = a.x & ~a.z, ay = a.x & a.z, az = ~a.x & a.z;
  const std::uint64_t bx = b.x & ~b.z, by = b.x & b.z, bz = ~b.x & b.z;
  const std::uint64_t plus = (ax & by) | (ay & bz) | (az & bx);
  const std::uint64_t minus = (ax & bz) | (ay & bx) | (az & by);
  return ((std::popcount(plus) - std::popcount(minus)) % 4 + 4) % 4;
}

bool commutes(const PauliString& a, const PauliString& b) {
  return std::popcount((a.x & b.z) ^ (a.z & b.x)) % 2 == 0;
}

namespace {

inline int digit(const PauliString& s, int pos) {
  const int xb = (s.x >> pos) & 1, zb = (s.z >> pos) & 1;
  return (zb << 1) | (xb ^ zb);
}

}  // namespace

int string_compare(const PauliString& a, const PauliString& b) {
  const std::uint64_t diff = (a.x ^ b.x) | (a.z ^ b.z);
  if (diff == 0) return 0;
  const int pos = 63 - std::countl_zero(diff);
  return digit(a, pos) < digit(b, pos) ? -1 : 1;
}

unsigned __int128 lex_encode(const PauliString& s) {
  unsigned __int128 v = 0;
  std::uint64_t live = s.x | s.z;
  while (live) {
    const int p = std::countr_zero(live);
    live &= live - 1;
    v |= static_cast<unsigned __int128>(digit(s, p)) << (2 * p);
  }
  return v;
}

PauliString lex_decode(unsigned __int128 v) {
  PauliString s;
  for (int p = 0; v != 0; ++p, v >>= 2) {
    const int d = static_cast<int>(v & 3);
    const std::uint64_t zb = d >> 1, xb = (d & 1) ^ zb;
    s.x |= xb << p;
    s.z |= zb << p;
  }
  return s;
}

std::string render_string(const PauliString& s, int m) {
  std::string out;
  for (int k = m; k >= 1; --k) {
    if (!out.empty()) out += '.';
    out += pauli_char(s.op(k));
  }
  return out;
}

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) {
  return {product_string(a.s, b.s), (a.phase + b.phase + product_phase(a.s, b.s)) % 4};
}

namespace {

PhasedPauli single(int k, PauliOp p, int phase = 0) { return {PauliString::single(k, p), phase}; }

// images of X_q and Z_q under the gate
std::pair<PhasedPauli, PhasedPauli> images(GateKind g, int q, int q1, int q2) {
  using P = PauliOp;
  const PhasedPauli X = single(q, P::X), Z = single(q, P::Z);
  switch (g) {
    case GateKind::H: return {single(q, P::Z), single(q, P::X)};
    case GateKind::S: return {single(q, P::Y), Z};
    case GateKind::Sdg: return {single(q, P::Y, 2), Z};
    case GateKind::X: return {X, single(q, P::Z, 2)};
    case GateKind::Y: return {single(q, P::X, 2), single(q, P::Z, 2)};
    case GateKind::Z: return {single(q, P::X, 2), Z};
    case GateKind::CZ: {
      const int other = q == q1 ? q2 : q1;
      return {X * single(other, P::Z), Z};
    }
    case GateKind::CX:
      if (q == q1) return {X * single(q2, P::X), Z};
      return {X, single(q1, P::Z) * Z};
    case GateKind::SWAP: {
      const int other = q == q1 ? q2 : q1;
      return {single(other, P::X), single(other, P::Z)};
    }
    default: throw std::invalid_argument("not a Clifford gate");
  }
}

}  // namespace

PhasedPauli conjugate_by_clifford(const PhasedPauli& p, GateKind g, int q1, int q2) {
  const int arity = gate_arity(g);
  if (arity > 2) throw std::invalid_argument("not a Clifford gate");
  if (q1 < 1 || q1 > kMaxQubits || (arity == 2 && (q2 < 1 || q2 > kMaxQubits || q2 == q1)))
    throw IndexOutOfRange("qubit index out of range");
  PhasedPauli rest = p;
  PhasedPauli out{{}, 0};
  for (int q : {q1, q2}) {
    if (q == 0 || (q == q2 && arity == 1)) continue;
    const PauliOp op = p.s.op(q);
    rest.s.set(q, PauliOp::I);
    if (op == PauliOp::I) continue;
    const auto [ix, iz] = images(g, q, q1, q2);
    PhasedPauli img{{}, 0};
    if (op == PauliOp::X) img = ix;
    else if (op == PauliOp::Z) img = iz;
    else img = PhasedPauli{{}, 1} * ix * iz;  // Y = iXZ
    out = out * img;
  }
  return rest * out;
}

PauliLim conjugate_by_clifford(const PauliLim& A, GateKind g, int q1, int q2) {
  const PhasedPauli r = conjugate_by_clifford(PhasedPauli{A.str, 0}, g, q1, q2);
  return {A.factor * RingValue::i_power(r.phase), r.s};
}

int diagonal_omega_power(GateKind gate) {
  switch (gate) {
    case GateKind::T: return 1;
    case GateKind::Tdg: return 7;
    case GateKind::S: return 2;
    case GateKind::Sdg: return 6;
    case GateKind::Z: return 4;
    default: throw std::invalid_argument("not a diagonal gate");
  }
}

GateKind diagonal_adjoint(GateKind gate) {
  switch (gate) {
    case GateKind::T: return GateKind::Tdg;
    case GateKind::Tdg: return GateKind::T;
    case GateKind::S: return GateKind::Sdg;
    case GateKind::Sdg: return GateKind::S;
    case GateKind::Z: return GateKind::Z;
    default: throw std::invalid_argument("not a diagonal gate");
  }
}

DiagonalCommute commute_diagonal_past_pauli(GateKind gate, PauliOp p) {
  const int k = diagonal_omega_power(gate);
  if (p == PauliOp::I || p == PauliOp::Z) return {1, p, gate};
  return {omega_power(k), p, diagonal_adjoint(gate)};
}

PauliLim lim_mul(const PauliLim& A, const PauliLim& B) { return lim_mul(ExactField{}, A, B); }
PauliLim lim_inverse(const PauliLim& A) {
  if (A.factor.is_zero()) throw std::domain_error("inverse of the zero LIM");
  return lim_inverse(ExactField{}, A);
}
int lim_lex_compare(const PauliLim& A, const PauliLim& B) { return lim_lex_compare(ExactField{}, A, B); }

std::string render_lim(const PauliLim& A, int m) {
  std::string out = "(" + render(A.factor) + ")";
  if (m > 0) out += "*" + render_string(A.str, m);
  return out;
}

FollowResult follow_basis_phase(const PauliString& s, std::uint64_t bits) {
  // <0|Y = -i<1|, <1|Y = i<0|, <1|Z = -<1|
  const std::uint64_t y = s.x & s.z, zonly = s.z & ~s.x;
  const int ones_y = std::popcount(y & bits), zeros_y = std::popcount(y & ~bits);
  const int phase = (ones_y + 3 * zeros_y + 2 * std::popcount(zonly & bits)) % 4;
  return {phase, bits ^ s.x};
}

std::pair<RingValue, std::uint64_t> follow_basis(const PauliLim& A, std::uint64_t bits) {
  const FollowResult r = follow_basis_phase(A.str, bits);
  return {A.factor * RingValue::i_power(r.phase), r.bits};
}

}  // namespace exdd
