#include "exdd/gates.hpp"

#include <chrono>

#include "exdd/stabtrack.hpp"

namespace exdd {

namespace {

enum Op { kDiag = 1, kHad, kCZ, kPauli };

template <class F>
using EdgeOf = typename Store<F>::Edge;

template <class F>
EdgeOf<F> diag_node(Store<F>& st, NodeRef v, GateKind g, int k);

// D_k (A|v>) = c A D'_k |v>
template <class F>
EdgeOf<F> diag_edge(Store<F>& st, const EdgeOf<F>& e, GateKind g, int k) {
  if (st.is_zero(e)) return e;
  const PauliOp p = e.label.str.op(k);
  GateKind g2 = g;
  typename F::Scalar c = st.field().one();
  if (p == PauliOp::X || p == PauliOp::Y) {
    c = st.field().omega_power(diagonal_omega_power(g));
    g2 = diagonal_adjoint(g);
  }
  const EdgeOf<F> r = diag_node(st, e.target, g2, k);
  typename Store<F>::Lim A = e.label;
  A.factor = st.field().mul(A.factor, c);
  return st.apply_lim(A, r);
}

template <class F>
EdgeOf<F> diag_node(Store<F>& st, NodeRef v, GateKind g, int k) {
  if (auto hit = st.op_find(kDiag, v, k, static_cast<int>(g))) return *hit;
  EdgeOf<F> r;
  if (st.level(v) == k) {
    const auto d = st.field().omega_power(diagonal_omega_power(g));
    r = st.make_edge(st.low_edge(v), st.scale(d, st.high_edge(v)));
  } else {
    r = st.make_edge(diag_edge(st, st.low_edge(v), g, k), diag_edge(st, st.high_edge(v), g, k));
  }
  st.op_put(kDiag, v, k, static_cast<int>(g), r);
  return r;
}

template <class F>
typename Store<F>::Lim conj_lim(const Store<F>& st, const typename Store<F>::Lim& A, GateKind g, int q1,
                                int q2 = 0) {
  const PhasedPauli r = conjugate_by_clifford(PhasedPauli{A.str, 0}, g, q1, q2);
  return {st.field().mul(A.factor, st.field().i_power(r.phase)), r.s};
}

template <class F>
EdgeOf<F> had_node(Store<F>& st, NodeRef v, int k);

template <class F>
EdgeOf<F> had_edge(Store<F>& st, const EdgeOf<F>& e, int k) {
  if (st.is_zero(e)) return e;
  const EdgeOf<F> r = had_node(st, e.target, k);
  return st.apply_lim(conj_lim(st, e.label, GateKind::H, k), r);
}

template <class F>
EdgeOf<F> had_node(Store<F>& st, NodeRef v, int k) {
  if (auto hit = st.op_find(kHad, v, k)) return *hit;
  EdgeOf<F> r;
  if (st.level(v) == k) {
    const EdgeOf<F> lo = st.low_edge(v), hi = st.high_edge(v);
    const auto minus = st.field().neg(st.field().one());
    r = st.make_edge(st.add(lo, hi), st.add(lo, st.scale(minus, hi)));
    r = st.scale(st.field().inv_sqrt2(), r);
  } else {
    r = st.make_edge(had_edge(st, st.low_edge(v), k), had_edge(st, st.high_edge(v), k));
  }
  st.op_put(kHad, v, k, 0, r);
  return r;
}

template <class F>
EdgeOf<F> cz_node(Store<F>& st, NodeRef v, int top, int bot);

template <class F>
EdgeOf<F> cz_edge(Store<F>& st, const EdgeOf<F>& e, int top, int bot) {
  if (st.is_zero(e)) return e;
  const EdgeOf<F> r = cz_node(st, e.target, top, bot);
  return st.apply_lim(conj_lim(st, e.label, GateKind::CZ, top, bot), r);
}

template <class F>
EdgeOf<F> cz_node(Store<F>& st, NodeRef v, int top, int bot) {
  if (auto hit = st.op_find(kCZ, v, top, bot)) return *hit;
  EdgeOf<F> r;
  if (st.level(v) == top) {
    r = st.make_edge(st.low_edge(v), diag_edge(st, st.high_edge(v), GateKind::Z, bot));
  } else {
    r = st.make_edge(cz_edge(st, st.low_edge(v), top, bot), cz_edge(st, st.high_edge(v), top, bot));
  }
  st.op_put(kCZ, v, top, bot, r);
  return r;
}

template <class F>
EdgeOf<F> pauli_node(Store<F>& st, NodeRef v, GateKind p, int k);

template <class F>
EdgeOf<F> pauli_descend(Store<F>& st, const EdgeOf<F>& e, GateKind p, int k) {
  if (st.is_zero(e)) return e;
  const EdgeOf<F> r = pauli_node(st, e.target, p, k);
  return st.apply_lim(conj_lim(st, e.label, p, k), r);
}

template <class F>
EdgeOf<F> pauli_node(Store<F>& st, NodeRef v, GateKind p, int k) {
  if (auto hit = st.op_find(kPauli, v, k, static_cast<int>(p))) return *hit;
  EdgeOf<F> r;
  if (st.level(v) == k) {
    const EdgeOf<F> lo = st.low_edge(v), hi = st.high_edge(v);
    const auto& f = st.field();
    switch (p) {
      case GateKind::X: r = st.make_edge(hi, lo); break;
      case GateKind::Y: r = st.make_edge(st.scale(f.i_power(3), hi), st.scale(f.i_power(1), lo)); break;
      default: r = st.make_edge(lo, st.scale(f.i_power(2), hi)); break;
    }
  } else {
    r = st.make_edge(pauli_descend(st, st.low_edge(v), p, k), pauli_descend(st, st.high_edge(v), p, k));
  }
  st.op_put(kPauli, v, k, static_cast<int>(p), r);
  return r;
}

PauliOp pauli_of(GateKind p) {
  switch (p) {
    case GateKind::X: return PauliOp::X;
    case GateKind::Y: return PauliOp::Y;
    case GateKind::Z: return PauliOp::Z;
    default: throw std::invalid_argument("not a Pauli gate");
  }
}

template <class F>
void check_qubit(const State<F>& s, int k) {
  if (k < 1 || k > s.n) throw IndexOutOfRange("qubit index out of range");
}

}  // namespace

std::vector<GateInstance> compile(const GateInstance& g) {
  using G = GateKind;
  auto one = [](G k, int q) { return GateInstance{k, {q, 0, 0}}; };
  switch (g.kind) {
    case G::CX: {
      const int a = g.q[0], b = g.q[1];
      return {one(G::H, b), GateInstance{G::CZ, {a, b, 0}}, one(G::H, b)};
    }
    case G::CCX: {
      const int a = g.q[0], b = g.q[1], c = g.q[2];
      auto cx = [](int x, int y) { return GateInstance{G::CX, {x, y, 0}}; };
      const std::vector<GateInstance> net = {
          one(G::H, c), cx(b, c),      one(G::Tdg, c), cx(a, c),      one(G::T, c),
          cx(b, c),     one(G::Tdg, c), cx(a, c),      one(G::T, b),  one(G::T, c),
          one(G::H, c), cx(a, b),      one(G::T, a),   one(G::Tdg, b), cx(a, b)};
      std::vector<GateInstance> out;
      for (const auto& x : net)
        for (const auto& p : compile(x)) out.push_back(p);
      return out;
    }
    default: return {g};
  }
}

template <class F>
State<F> initial_state(Store<F>& store, int n) {
  return {store.basis_state(n, 0), n};
}

template <class F>
typename Store<F>::Edge pauli_on_edge(Store<F>& store, const typename Store<F>::Edge& e, GateKind p, int k) {
  if (store.mode() == Mode::LIMDD) {
    return store.apply_lim({store.field().one(), PauliString::single(k, pauli_of(p))}, e);
  }
  return pauli_descend(store, e, p, k);
}

template <class F>
void apply_pauli(Store<F>& store, State<F>& s, GateKind p, int k) {
  check_qubit(s, k);
  s.root = pauli_on_edge(store, s.root, p, k);
}

template <class F>
void apply_diagonal(Store<F>& store, State<F>& s, GateKind g, int k) {
  check_qubit(s, k);
  if (!is_diagonal(g)) throw std::invalid_argument("not a diagonal gate");
  s.root = diag_edge(store, s.root, g, k);
}

template <class F>
void apply_hadamard(Store<F>& store, State<F>& s, int k) {
  check_qubit(s, k);
  s.root = had_edge(store, s.root, k);
}

template <class F>
void apply_cz(Store<F>& store, State<F>& s, int i, int j) {
  check_qubit(s, i);
  check_qubit(s, j);
  if (i == j) throw std::invalid_argument("cz needs two distinct qubits");
  s.root = cz_edge(store, s.root, std::max(i, j), std::min(i, j));
}

template <class F>
void apply_swap(Store<F>& store, State<F>& s, int i, int j) {
  check_qubit(s, i);
  check_qubit(s, j);
  if (i == j) throw std::invalid_argument("swap needs two distinct qubits");
  // SWAP = (II + XX + YY + ZZ) / 2
  using E = typename Store<F>::Edge;
  const E e0 = s.root;
  const E e1 = pauli_on_edge(store, pauli_on_edge(store, e0, GateKind::X, i), GateKind::X, j);
  const E e2 = pauli_on_edge(store, pauli_on_edge(store, e0, GateKind::Y, i), GateKind::Y, j);
  const E e3 = pauli_on_edge(store, pauli_on_edge(store, e0, GateKind::Z, i), GateKind::Z, j);
  const E sum = store.add(store.add(e0, e1), store.add(e2, e3));
  s.root = store.scale(store.field().half(), sum);
}

template <class F>
void apply_gate(Store<F>& store, State<F>& s, const GateInstance& g) {
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::Z:
      if (store.mode() == Mode::LIMDD || g.kind != GateKind::Z) apply_pauli(store, s, g.kind, g.q[0]);
      else apply_diagonal(store, s, g.kind, g.q[0]);
      break;
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg: apply_diagonal(store, s, g.kind, g.q[0]); break;
    case GateKind::H: apply_hadamard(store, s, g.q[0]); break;
    case GateKind::CZ: apply_cz(store, s, g.q[0], g.q[1]); break;
    case GateKind::SWAP: apply_swap(store, s, g.q[0], g.q[1]); break;
    case GateKind::CX:
    case GateKind::CCX:
      for (const auto& p : compile(g)) apply_gate(store, s, p);
      break;
  }
}

template <class F>
RunStats simulate(Store<F>& store, const Circuit& c, State<F>* out, const SimOptions& opt) {
  c.validate();
  const auto t0 = std::chrono::steady_clock::now();
  RunStats rs;
  State<F> s = initial_state(store, c.n_qubits);
  const int n = c.n_qubits;
  auto tab = StabilizerTableau::init(n);
  long h = 0, t = 0, cz = 0;
  std::size_t step = 0;
  auto violation = [&](const GateInstance& g, const std::string& what) {
    rs.violations.push_back("gate " + std::to_string(step) + " (" + gate_text(g, n) + "): " + what);
  };
  for (const auto& orig : c.gates) {
    if (orig.kind == GateKind::CCX) ++rs.counts.toffoli;
    for (const auto& g : compile(orig)) {
      ++step;
      apply_gate(store, s, g);
      switch (g.kind) {
        case GateKind::H: ++h; break;
        case GateKind::T:
        case GateKind::Tdg: ++t; break;
        case GateKind::CZ: ++cz; break;
        default: ++rs.counts.clifford_other;
      }
      const DiagramStats st = store.stats(s.root);
      rs.peak_nodes = std::max(rs.peak_nodes, st.node_count);
      rs.peak_width = std::max(rs.peak_width, st.width);
      rs.peak_table = std::max(rs.peak_table, store.table_size());
      rs.max_coeff_bits = std::max(rs.max_coeff_bits, st.max_coeff_bits);
      if (opt.record_trace) rs.trace.push_back({gate_text(g, n), st.node_count, st.width, store.table_size(), st.max_coeff_bits});
      if constexpr (!F::kIsFloat) {
        if (opt.check_coeffs) {
          const unsigned k = static_cast<unsigned>(2 * n + 2 * t + 1);
          for (const auto& x : store.bulk_labels(s.root)) {
            if (!in_Rk(x, k)) {
              violation(g, "bulk label " + render(x) + " outside R_" + std::to_string(k));
              break;
            }
          }
          const RingValue r2 = abs2(s.root.label.factor);
          if (!in_Rk(r2, k)) violation(g, "root |r|^2 " + render(r2) + " outside R_" + std::to_string(k));
          if (!(store.squared_norm(s.root) == RingValue(1))) violation(g, "squared norm is not 1");
        }
      }
      if (opt.check_bounds) {
        tab.apply(g);
        auto exceeds = [](std::size_t w, long e) { return e < 63 && w > (std::size_t{1} << e); };
        if (store.mode() == Mode::LIMDD) {
          if (exceeds(st.width, tab.nullity())) violation(g, "LIMDD width " + std::to_string(st.width) + " > 2^nullity");
          if (exceeds(st.width, t)) violation(g, "LIMDD width " + std::to_string(st.width) + " > 2^t");
          if (t < 56 && st.node_count > static_cast<std::size_t>(n) * (std::size_t{1} << t))
            violation(g, "LIMDD node count " + std::to_string(st.node_count) + " > n*2^t");
        } else {
          if (exceeds(st.width, tab.local_nullity()))
            violation(g, "EVDD width " + std::to_string(st.width) + " > 2^local_nullity");
          if (exceeds(st.width, std::min(h, 2 * cz + t)))
            violation(g, "EVDD width " + std::to_string(st.width) + " > 2^min(#H, 2#CZ+#T)");
        }
      }
      if (!opt.keep_caches) store.clear_op_cache();
      if (store.maybe_gc({s.root})) ++rs.gc_runs;
    }
  }
  rs.counts.h = h;
  rs.counts.t = t;
  rs.counts.cz = cz;
  rs.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (out) *out = s;
  return rs;
}

#define EXDD_INSTANTIATE(F)                                                                                 \
  template State<F> initial_state(Store<F>&, int);                                                           \
  template Store<F>::Edge pauli_on_edge(Store<F>&, const Store<F>::Edge&, GateKind, int);                    \
  template void apply_pauli(Store<F>&, State<F>&, GateKind, int);                                            \
  template void apply_diagonal(Store<F>&, State<F>&, GateKind, int);                                         \
  template void apply_hadamard(Store<F>&, State<F>&, int);                                                   \
  template void apply_cz(Store<F>&, State<F>&, int, int);                                                    \
  template void apply_swap(Store<F>&, State<F>&, int, int);                                                  \
  template void apply_gate(Store<F>&, State<F>&, const GateInstance&);                                       \
  template RunStats simulate(Store<F>&, const Circuit&, State<F>*, const SimOptions&);

EXDD_INSTANTIATE(ExactField)
EXDD_INSTANTIATE(FloatField)

}  // namespace exdd
