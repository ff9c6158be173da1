#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "exdd/coeff.hpp"

namespace exdd {

constexpr int kMaxQubits = 63;

enum class GateKind : std::uint8_t { X, Y, Z, H, S, Sdg, T, Tdg, CZ, SWAP, CX, CCX };

const char* gate_name(GateKind g);
int gate_arity(GateKind g);
bool is_diagonal(GateKind g);

enum class PauliOp : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(PauliOp p);

// Bit k-1 holds qubit k; qubit m is the top of an m-qubit string.
// Y is stored as x=z=1 and means the Hermitian Y, not XZ.
struct PauliString {
  std::uint64_t x = 0, z = 0;

  PauliOp op(int k) const {
    const int xb = (x >> (k - 1)) & 1, zb = (z >> (k - 1)) & 1;
    if (xb) return zb ? PauliOp::Y : PauliOp::X;
    return zb ? PauliOp::Z : PauliOp::I;
  }
  void set(int k, PauliOp p) {
    const std::uint64_t m = std::uint64_t{1} << (k - 1);
    x &= ~m;
    z &= ~m;
    if (p == PauliOp::X || p == PauliOp::Y) x |= m;
    if (p == PauliOp::Z || p == PauliOp::Y) z |= m;
  }
  // keep qubits 1..m
  PauliString truncated(int m) const {
    const std::uint64_t mask = m >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    return {x & mask, z & mask};
  }
  bool is_identity() const { return x == 0 && z == 0; }

  static PauliString single(int k, PauliOp p) {
    PauliString s;
    s.set(k, p);
    return s;
  }

  friend bool operator==(const PauliString&, const PauliString&) = default;
};

// a*b = i^e * (a xor b)
int product_phase(const PauliString& a, const PauliString& b);
inline PauliString product_string(const PauliString& a, const PauliString& b) {
  return {a.x ^ b.x, a.z ^ b.z};
}
bool commutes(const PauliString& a, const PauliString& b);

// lexicographic, I < X < Y < Z, qubit m first
int string_compare(const PauliString& a, const PauliString& b);
// linear bijection F2^{2m} -> integer whose numeric order is string_compare
unsigned __int128 lex_encode(const PauliString& s);
PauliString lex_decode(unsigned __int128 v);

std::string render_string(const PauliString& s, int m);

// i^phase * s
struct PhasedPauli {
  PauliString s;
  int phase = 0;

  friend bool operator==(const PhasedPauli& a, const PhasedPauli& b) {
    return a.s == b.s && ((a.phase - b.phase) % 4 + 4) % 4 == 0;
  }
};

PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b);

struct SignedPauli {
  bool negative = false;
  PauliString s;

  PhasedPauli phased() const { return {s, negative ? 2 : 0}; }
  friend bool operator==(const SignedPauli&, const SignedPauli&) = default;
};

struct IndexOutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

// G * P * G^dagger for a Clifford gate; qubits are 1-based.
PhasedPauli conjugate_by_clifford(const PhasedPauli& p, GateKind g, int q1, int q2 = 0);

struct DiagonalCommute {
  RingValue scalar;
  PauliOp p;
  GateKind gate;
};

// gate * p == scalar * p * gate' as 2x2 matrices
DiagonalCommute commute_diagonal_past_pauli(GateKind gate, PauliOp p);
int diagonal_omega_power(GateKind gate);  // (1,1) entry as omega^k
GateKind diagonal_adjoint(GateKind gate);

// Scalar times Pauli string; factor == 0 is the zero LIM.
template <class S>
struct BasicLim {
  S factor;
  PauliString str;
};

using PauliLim = BasicLim<RingValue>;

template <class Field>
BasicLim<typename Field::Scalar> lim_mul(const Field& f, const BasicLim<typename Field::Scalar>& A,
                                         const BasicLim<typename Field::Scalar>& B) {
  return {f.mul(f.mul(A.factor, B.factor), f.i_power(product_phase(A.str, B.str))),
          product_string(A.str, B.str)};
}

template <class Field>
BasicLim<typename Field::Scalar> lim_inverse(const Field& f, const BasicLim<typename Field::Scalar>& A) {
  return {f.div(f.one(), A.factor), A.str};
}

template <class Field>
BasicLim<typename Field::Scalar> lim_from(const Field& f, const PhasedPauli& p) {
  return {f.i_power(p.phase), p.s};
}

template <class Field>
int lim_lex_compare(const Field& f, const BasicLim<typename Field::Scalar>& A,
                    const BasicLim<typename Field::Scalar>& B) {
  if (int c = string_compare(A.str, B.str)) return c;
  return f.compare(A.factor, B.factor);
}

PauliLim lim_mul(const PauliLim& A, const PauliLim& B);
PauliLim lim_inverse(const PauliLim& A);
int lim_lex_compare(const PauliLim& A, const PauliLim& B);
PauliLim conjugate_by_clifford(const PauliLim& A, GateKind g, int q1, int q2 = 0);
std::string render_lim(const PauliLim& A, int m);

struct FollowResult {
  int phase;      // gamma = factor * i^phase
  std::uint64_t bits;
};

// <bits| P restricted to qubits m..m-len+1, as gamma <bits'|
FollowResult follow_basis_phase(const PauliString& s, std::uint64_t bits);
std::pair<RingValue, std::uint64_t> follow_basis(const PauliLim& A, std::uint64_t bits);

}  // namespace exdd
