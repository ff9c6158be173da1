#pragma once

#include <complex>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "exdd/circuit.hpp"
#include "exdd/coeff.hpp"
#include "exdd/gates.hpp"

namespace testutil {

using exdd::Fraction;
using exdd::RingValue;

inline Fraction small_fraction(std::mt19937_64& rng, int span = 9, int den_max = 8) {
  const long num = static_cast<long>(rng() % (2 * span + 1)) - span;
  const long den = 1 + static_cast<long>(rng() % den_max);
  return Fraction(num, den);
}

inline RingValue random_ring(std::mt19937_64& rng, int span = 9, int den_max = 8) {
  return {small_fraction(rng, span, den_max), small_fraction(rng, span, den_max), small_fraction(rng, span, den_max),
          small_fraction(rng, span, den_max)};
}

inline RingValue omega() { return exdd::omega_power(1); }

inline RingValue frac(long p, long q = 1) { return {Fraction(p, q), 0, 0, 0}; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// H1 T1 T1 Sdg1 H1 CNOT1,2 with QASM q[0] as qubit 1
inline const char* kMotivating =
    "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nt q[0];\nt q[0];\nsdg q[0];\nh q[0];\ncx q[0],q[1];\n";

// H1 H2 CZ T1 H1 T2
inline const char* kLeading = "OPENQASM 2.0;\nqreg q[2];\nh q[0];\nh q[1];\ncz q[0],q[1];\nt q[0];\nh q[0];\nt q[1];\n";

// (L v)[x] = gamma v[y] where <x|L = gamma <y|
inline std::vector<RingValue> apply_dense(const exdd::PauliLim& L, const std::vector<RingValue>& v) {
  std::vector<RingValue> r(v.size());
  for (std::uint64_t x = 0; x < v.size(); ++x) {
    const auto [g, y] = exdd::follow_basis(L, x);
    r[x] = g * v[y];
  }
  return r;
}

template <class F>
exdd::State<F> run(exdd::Store<F>& st, const exdd::Circuit& c, exdd::SimOptions opt = {}) {
  exdd::State<F> s;
  opt.record_trace = false;
  exdd::simulate(st, c, &s, opt);
  return s;
}

template <class F>
bool matches_dense(exdd::Store<F>& st, const exdd::State<F>& s, const std::vector<RingValue>& psi, double tol = 1e-9) {
  for (std::uint64_t b = 0; b < psi.size(); ++b) {
    const auto a = st.eval_amplitude(s.root, b);
    if constexpr (F::kIsFloat) {
      if (std::abs(a - psi[b].to_complex()) > tol) return false;
    } else {
      if (!(a == psi[b])) return false;
    }
  }
  return true;
}

}  // namespace testutil
