#include "exdd/dd.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace exdd {

const char* mode_name(Mode m) { return m == Mode::EVDD ? "evdd" : "limdd"; }

namespace {

using u128 = unsigned __int128;

inline int msb(u128 v) {
  const std::uint64_t hi = static_cast<std::uint64_t>(v >> 64);
  if (hi) return 64 + 63 - std::countl_zero(hi);
  return 63 - std::countl_zero(static_cast<std::uint64_t>(v));
}

inline void mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

struct Row {
  u128 vec;
  u128 combo;
};

// Echelon basis keyed by leading bit; dependent rows go to `null_combos`.
std::map<int, Row, std::greater<int>> echelon(const std::vector<u128>& vecs, std::vector<u128>* null_combos) {
  std::map<int, Row, std::greater<int>> basis;
  for (std::size_t i = 0; i < vecs.size(); ++i) {
    Row r{vecs[i], u128{1} << i};
    while (r.vec != 0) {
      const int lead = msb(r.vec);
      auto it = basis.find(lead);
      if (it == basis.end()) {
        basis.emplace(lead, r);
        break;
      }
      r.vec ^= it->second.vec;
      r.combo ^= it->second.combo;
    }
    if (r.vec == 0 && null_combos) null_combos->push_back(r.combo);
  }
  return basis;
}

PhasedPauli product_of(const std::vector<PhasedPauli>& G, u128 combo, int offset) {
  PhasedPauli out{{}, 0};
  for (std::size_t i = 0; i < G.size(); ++i) {
    if ((combo >> (offset + i)) & 1) out = out * G[i];
  }
  return out;
}

std::string scalar_text(const RingValue& x) { return render(x); }
std::string scalar_text(const FloatValue& x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g%+.6gi", x.real(), x.imag());
  return buf;
}

std::size_t string_hash(const PauliString& s) {
  std::size_t h = std::hash<std::uint64_t>{}(s.x);
  mix(h, std::hash<std::uint64_t>{}(s.z));
  return h;
}

}  // namespace

ArgLexMin arg_lex_min(const std::vector<PhasedPauli>& G0, const std::vector<PhasedPauli>& G1,
                      const PauliString& P) {
  std::vector<u128> vecs;
  for (const auto& g : G0) vecs.push_back(lex_encode(g.s));
  for (const auto& g : G1) vecs.push_back(lex_encode(g.s));
  const auto basis = echelon(vecs, nullptr);
  u128 cur = lex_encode(P), combo = 0;
  for (const auto& [lead, row] : basis) {
    if ((cur >> lead) & 1) {
      cur ^= row.vec;
      combo ^= row.combo;
    }
  }
  return {product_of(G0, combo, 0), product_of(G1, combo, static_cast<int>(G0.size()))};
}

F2Intersection f2_intersection(const std::vector<PauliString>& A, const std::vector<PauliString>& B) {
  std::vector<u128> vecs;
  for (const auto& s : A) vecs.push_back(lex_encode(s));
  for (const auto& s : B) vecs.push_back(lex_encode(s));
  std::vector<u128> nulls;
  echelon(vecs, &nulls);
  F2Intersection out;
  for (u128 c : nulls) {
    std::vector<int> ia, ib;
    for (std::size_t i = 0; i < A.size(); ++i)
      if ((c >> i) & 1) ia.push_back(static_cast<int>(i));
    for (std::size_t j = 0; j < B.size(); ++j)
      if ((c >> (A.size() + j)) & 1) ib.push_back(static_cast<int>(j));
    out.combos.emplace_back(std::move(ia), std::move(ib));
  }
  return out;
}

template <class F>
std::size_t Store<F>::NodeKeyHash::operator()(const NodeKey& k) const {
  std::size_t h = std::hash<int>{}(k.level);
  mix(h, f->hash(k.low_factor));
  mix(h, k.low);
  mix(h, f->hash(k.high.factor));
  mix(h, string_hash(k.high.str));
  mix(h, k.high_target);
  return h;
}

template <class F>
bool Store<F>::NodeKeyEq::operator()(const NodeKey& x, const NodeKey& y) const {
  return x.level == y.level && x.low == y.low && x.high_target == y.high_target &&
         x.high.str == y.high.str && f->equal(x.low_factor, y.low_factor) &&
         f->equal(x.high.factor, y.high.factor);
}

template <class F>
std::size_t Store<F>::AddKeyHash::operator()(const AddKey& k) const {
  std::size_t h = std::hash<NodeRef>{}(k.v);
  mix(h, k.w);
  mix(h, f->hash(k.C.factor));
  mix(h, string_hash(k.C.str));
  return h;
}

template <class F>
bool Store<F>::AddKeyEq::operator()(const AddKey& x, const AddKey& y) const {
  return x.v == y.v && x.w == y.w && x.C.str == y.C.str && f->equal(x.C.factor, y.C.factor);
}

template <class F>
std::size_t Store<F>::OpKeyHash::operator()(const OpKey& k) const {
  std::size_t h = std::hash<int>{}(k.op);
  mix(h, k.v);
  mix(h, static_cast<std::size_t>(k.a));
  mix(h, static_cast<std::size_t>(k.b));
  return h;
}

template <class F>
Store<F>::Store(Mode mode, F field, NormRule norm)
    : mode_(mode),
      field_(field),
      norm_(norm),
      unique_(64, NodeKeyHash{&field_}, NodeKeyEq{&field_}),
      add_cache_(64, AddKeyHash{&field_}, AddKeyEq{&field_}) {
  if (norm == NormRule::L2 && (!F::kIsFloat || mode == Mode::LIMDD))
    throw std::invalid_argument("L2 normalization needs the float backend and EVDD mode");
  Node t;
  t.level = 0;
  t.low_factor = field_.zero();
  t.high = {field_.zero(), {}};
  nodes_.push_back(t);
  alive_.push_back(1);
}

template <class F>
typename Store<F>::Edge Store<F>::terminal_edge(const Scalar& s) const {
  if (field_.is_zero(s)) return zero_edge();
  return {{s, {}}, kTerminal};
}

template <class F>
typename Store<F>::Edge Store<F>::scale(const Scalar& s, const Edge& e) const {
  if (is_zero(e)) return e;
  Edge r{{field_.mul(s, e.label.factor), e.label.str}, e.target};
  if (is_zero(r)) return zero_edge();
  return r;
}

template <class F>
typename Store<F>::Edge Store<F>::apply_lim(const Lim& A, const Edge& e) const {
  if (is_zero(e)) return e;
  Edge r{lim_mul(A, e.label), e.target};
  if (is_zero(r)) return zero_edge();
  return r;
}

template <class F>
typename Store<F>::Edge Store<F>::low_edge(NodeRef v) const {
  const Node& n = nodes_[v];
  if (field_.is_zero(n.low_factor)) return zero_edge();
  return {{n.low_factor, {}}, n.low};
}

template <class F>
typename Store<F>::Edge Store<F>::high_edge(NodeRef v) const {
  const Node& n = nodes_[v];
  if (field_.is_zero(n.high.factor)) return zero_edge();
  return {n.high, n.high_target};
}

template <class F>
NodeRef Store<F>::intern(int level, const Scalar& low_factor, NodeRef low, const Lim& high,
                         NodeRef high_target) {
  NodeKey key{level, low_factor, low, high, high_target};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  NodeRef id;
  Node n{level, low_factor, low, high, high_target};
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    nodes_[id] = n;
    alive_[id] = 1;
  } else {
    id = static_cast<NodeRef>(nodes_.size());
    nodes_.push_back(n);
    alive_.push_back(1);
  }
  unique_.emplace(std::move(key), id);
  return id;
}

template <class F>
typename Store<F>::Edge Store<F>::make_edge_evdd(const Edge& e0, const Edge& e1, int k) {
  const bool z0 = is_zero(e0), z1 = is_zero(e1);
  const Lim zero{field_.zero(), {}};
  if (norm_ == NormRule::L2) {
    if constexpr (F::kIsFloat) {
      const Scalar a = z0 ? field_.zero() : e0.label.factor;
      const Scalar b = z1 ? field_.zero() : e1.label.factor;
      const double nrm = std::sqrt(std::norm(a) + std::norm(b));
      const Scalar phase = z0 ? b / std::abs(b) : a / std::abs(a);
      const Scalar r = nrm * phase;
      const NodeRef v0 = z0 ? e1.target : e0.target;
      const NodeRef v1 = z1 ? e0.target : e1.target;
      const Scalar lo = z0 ? field_.zero() : Scalar(std::abs(a) / nrm, 0.0);
      const Scalar hi = z1 ? field_.zero() : field_.div(b, r);
      return {{r, {}}, intern(k + 1, lo, v0, {hi, {}}, v1)};
    }
  }
  if (z0) return {e1.label, intern(k + 1, field_.zero(), e1.target, identity(), e1.target)};
  if (z1) return {e0.label, intern(k + 1, field_.one(), e0.target, zero, e0.target)};
  const Scalar q = field_.div(e1.label.factor, e0.label.factor);
  return {e0.label, intern(k + 1, field_.one(), e0.target, {q, {}}, e1.target)};
}

template <class F>
typename Store<F>::Edge Store<F>::make_edge(const Edge& e0, const Edge& e1) {
  const bool z0 = is_zero(e0), z1 = is_zero(e1);
  if (z0 && z1) throw BothZero();
  const int k = level(z0 ? e1.target : e0.target);
  if (mode_ == Mode::EVDD) return make_edge_evdd(e0, e1, k);
  if (z0 || (!z1 && e0.target > e1.target)) {
    Edge r = make_edge(e1, e0);
    r.label = lim_mul({field_.one(), PauliString::single(k + 1, PauliOp::X)}, r.label);
    return r;
  }
  if (z1) {
    const NodeRef v = intern(k + 1, field_.one(), e0.target, {field_.zero(), {}}, e0.target);
    return {e0.label, v};
  }
  const Lim Ahat = lim_mul(lim_inverse(e0.label), e1.label);
  auto [high, root] = get_labels(Ahat, e0.target, e1.target);
  const NodeRef v = intern(k + 1, field_.one(), e0.target, high, e1.target);
  return {lim_mul(e0.label, root), v};
}

template <class F>
std::pair<typename Store<F>::Lim, typename Store<F>::Lim> Store<F>::get_labels(const Lim& A, NodeRef v0,
                                                                              NodeRef v1) {
  if (field_.is_zero(A.factor)) throw std::domain_error("get_labels on the zero LIM");
  const int k = level(v0);
  const auto& G0 = stabilizer_gens(v0);
  const auto& G1 = stabilizer_gens(v1);
  const ArgLexMin m = arg_lex_min(G0, G1, A.str);
  const PhasedPauli M = m.g0 * PhasedPauli{A.str, 0} * m.g1;
  const Scalar ph = field_.i_power(M.phase);
  const Scalar lam[2] = {A.factor, field_.div(field_.one(), A.factor)};
  int best_x = 0, best_s = 0;
  Scalar best = field_.mul(lam[0], ph);
  for (int x = 0; x < (v0 == v1 ? 2 : 1); ++x) {
    for (int s = 0; s < 2; ++s) {
      Scalar c = field_.mul(lam[x], ph);
      if (s) c = field_.neg(c);
      if (field_.compare(c, best) < 0) {
        best = c;
        best_x = x;
        best_s = s;
      }
    }
  }
  PhasedPauli r1 = m.g0;
  if (best_s) r1.s.set(k + 1, PauliOp::Z);
  Lim root = lim_from(field_, r1);
  if (best_x) {
    Lim xl{A.factor, A.str};
    xl.str.set(k + 1, PauliOp::X);
    root = lim_mul(xl, root);
  }
  return {{best, M.s}, root};
}

template <class F>
typename Store<F>::Edge Store<F>::follow(const Edge& e, int bit) const {
  if (is_zero(e)) return e;
  const NodeRef v = e.target;
  const int k = level(v);
  int y = bit, phase = 0;
  switch (e.label.str.op(k)) {
    case PauliOp::I: break;
    case PauliOp::X: y = 1 - bit; break;
    case PauliOp::Y:
      y = 1 - bit;
      phase = bit ? 1 : 3;
      break;
    case PauliOp::Z: phase = bit ? 2 : 0; break;
  }
  const Edge child = y ? high_edge(v) : low_edge(v);
  if (is_zero(child)) return child;
  const Lim rest{field_.mul(e.label.factor, field_.i_power(phase)), e.label.str.truncated(k - 1)};
  return apply_lim(rest, child);
}

template <class F>
typename Store<F>::Lim Store<F>::root_label(const Lim& A, NodeRef w) {
  if (mode_ == Mode::EVDD) return A;
  const auto& G = stabilizer_gens(w);
  if (G.empty()) return A;
  const ArgLexMin m = arg_lex_min({}, G, A.str);
  return lim_mul(A, lim_from(field_, m.g1));
}

template <class F>
typename Store<F>::Edge Store<F>::add(const Edge& e_in, const Edge& f_in) {
  if (is_zero(e_in)) return f_in;
  if (is_zero(f_in)) return e_in;
  if (e_in.target == kTerminal) return terminal_edge(field_.add(e_in.label.factor, f_in.label.factor));
  const bool swap = e_in.target > f_in.target;
  const Edge& e = swap ? f_in : e_in;
  const Edge& f = swap ? e_in : f_in;
  const NodeRef v = e.target, w = f.target;
  const Lim C = root_label(lim_mul(lim_inverse(e.label), f.label), w);
  AddKey key{v, C, w};
  Edge r;
  auto it = add_cache_.find(key);
  if (it != add_cache_.end()) {
    r = it->second;
  } else {
    const Edge ev{identity(), v}, fw{C, w};
    const Edge a0 = add(follow(ev, 0), follow(fw, 0));
    const Edge a1 = add(follow(ev, 1), follow(fw, 1));
    r = (is_zero(a0) && is_zero(a1)) ? zero_edge() : make_edge(a0, a1);
    add_cache_.emplace(std::move(key), r);
  }
  return apply_lim(e.label, r);
}

template <class F>
const std::vector<PhasedPauli>& Store<F>::stabilizer_gens(NodeRef v) {
  static const std::vector<PhasedPauli> kEmpty;
  if (mode_ == Mode::EVDD || v == kTerminal) return kEmpty;
  auto it = stab_cache_.find(v);
  if (it != stab_cache_.end()) return it->second;
  auto gens = compute_stabilizer_gens(v);
  return stab_cache_.emplace(v, std::move(gens)).first->second;
}

template <class F>
std::vector<PhasedPauli> Store<F>::compute_stabilizer_gens(NodeRef v) {
  const Node n = nodes_[v];
  const int k = n.level;
  std::vector<PhasedPauli> out;
  if (field_.is_zero(n.high.factor)) {
    out.push_back({PauliString::single(k, PauliOp::Z), 0});
    for (const auto& g : stabilizer_gens(n.low)) out.push_back(g);
    return out;
  }
  if (field_.is_zero(n.low_factor)) throw std::logic_error("zero low edge in a LIMDD node");
  const PauliString S = n.high.str;
  if (n.low == n.high_target) {
    for (PhasedPauli g : stabilizer_gens(n.low)) {
      if (!commutes(g.s, S)) g.s.set(k, PauliOp::Z);
      out.push_back(g);
    }
    const int e = field_.unit_phase(n.high.factor);
    if (e >= 0) {
      PhasedPauli g{S, 0};
      if (e % 2 == 0) {
        g.phase = e;
        g.s.set(k, PauliOp::X);
      } else {
        g.phase = (5 - e) % 4;
        g.s.set(k, PauliOp::Y);
      }
      out.push_back(g);
    }
    return out;
  }
  const auto& Ga = stabilizer_gens(n.low);
  std::vector<PhasedPauli> Gb;
  for (const auto& h : stabilizer_gens(n.high_target)) Gb.push_back(PhasedPauli{S, 0} * h * PhasedPauli{S, 0});
  std::vector<PauliString> sa, sb;
  for (const auto& g : Ga) sa.push_back(g.s);
  for (const auto& g : Gb) sb.push_back(g.s);
  for (const auto& [ia, ib] : f2_intersection(sa, sb).combos) {
    PhasedPauli ra{{}, 0}, rb{{}, 0};
    for (int i : ia) ra = ra * Ga[i];
    for (int j : ib) rb = rb * Gb[j];
    if (ra.phase != rb.phase) ra.s.set(k, PauliOp::Z);
    out.push_back(ra);
  }
  return out;
}

template <class F>
typename Store<F>::Scalar Store<F>::eval_amplitude(const Edge& root, std::uint64_t bits) const {
  Edge e = root;
  while (!is_zero(e) && e.target != kTerminal) {
    const int k = level(e.target);
    e = follow(e, (bits >> (k - 1)) & 1);
  }
  return is_zero(e) ? field_.zero() : e.label.factor;
}

template <class F>
typename Store<F>::Scalar Store<F>::node_norm(NodeRef v) {
  if (v == kTerminal) return field_.one();
  auto it = norm_cache_.find(v);
  if (it != norm_cache_.end()) return it->second;
  const Node n = nodes_[v];
  Scalar s = field_.zero();
  if (!field_.is_zero(n.low_factor)) s = field_.mul(field_.abs2(n.low_factor), node_norm(n.low));
  if (!field_.is_zero(n.high.factor))
    s = field_.add(s, field_.mul(field_.abs2(n.high.factor), node_norm(n.high_target)));
  norm_cache_.emplace(v, s);
  return s;
}

template <class F>
typename Store<F>::Scalar Store<F>::squared_norm(const Edge& e) {
  if (is_zero(e)) return field_.zero();
  return field_.mul(field_.abs2(e.label.factor), node_norm(e.target));
}

template <class F>
typename Store<F>::Edge Store<F>::basis_state(int n, std::uint64_t bits) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  Edge e = terminal_edge(field_.one());
  for (int k = 1; k <= n; ++k) e = ((bits >> (k - 1)) & 1) ? make_edge(zero_edge(), e) : make_edge(e, zero_edge());
  return e;
}

template <class F>
DiagramStats Store<F>::stats(const Edge& root) const {
  DiagramStats st;
  if (is_zero(root) || root.target == kTerminal) return st;
  const int top = level(root.target);
  st.width_per_level.assign(top, 0);
  std::vector<NodeRef> stack{root.target};
  std::unordered_map<NodeRef, char> seen{{root.target, 1}};
  while (!stack.empty()) {
    const NodeRef v = stack.back();
    stack.pop_back();
    const Node& n = nodes_[v];
    ++st.width_per_level[n.level - 1];
    ++st.node_count;
    if constexpr (!F::kIsFloat) {
      st.max_coeff_bits = std::max({st.max_coeff_bits, bit_size(n.low_factor), bit_size(n.high.factor)});
    }
    for (NodeRef c : {n.low, n.high_target}) {
      if (c != kTerminal && seen.emplace(c, 1).second) stack.push_back(c);
    }
  }
  for (std::size_t w : st.width_per_level) st.width = std::max(st.width, w);
  return st;
}

template <class F>
std::vector<typename Store<F>::Scalar> Store<F>::bulk_labels(const Edge& root) const {
  std::vector<Scalar> out;
  if (is_zero(root) || root.target == kTerminal) return out;
  std::vector<NodeRef> stack{root.target};
  std::unordered_map<NodeRef, char> seen{{root.target, 1}};
  while (!stack.empty()) {
    const NodeRef v = stack.back();
    stack.pop_back();
    const Node& n = nodes_[v];
    out.push_back(n.low_factor);
    out.push_back(n.high.factor);
    for (NodeRef c : {n.low, n.high_target}) {
      if (c != kTerminal && seen.emplace(c, 1).second) stack.push_back(c);
    }
  }
  return out;
}

template <class F>
std::string Store<F>::dot(const Edge& root) const {
  std::ostringstream os;
  auto label = [&](const Lim& l, int m) {
    std::string s = scalar_text(l.factor);
    if (m > 0 && !l.str.is_identity()) s = "(" + s + ")*" + render_string(l.str, m);
    return s;
  };
  os << "digraph dd {\n";
  os << "  root [shape=point];\n";
  os << "  t [shape=box, label=\"1\"];\n";
  auto name = [](NodeRef v) { return v == kTerminal ? std::string("t") : "n" + std::to_string(v); };
  const int top = root.target == kTerminal ? 0 : level(root.target);
  os << "  root -> " << name(root.target) << " [label=\"" << label(root.label, top) << "\"];\n";
  if (!is_zero(root) && root.target != kTerminal) {
    std::vector<NodeRef> order{root.target};
    std::unordered_map<NodeRef, char> seen{{root.target, 1}};
    for (std::size_t i = 0; i < order.size(); ++i) {
      const Node& n = nodes_[order[i]];
      for (NodeRef c : {n.low, n.high_target})
        if (c != kTerminal && seen.emplace(c, 1).second) order.push_back(c);
    }
    for (NodeRef v : order) {
      const Node& n = nodes_[v];
      os << "  " << name(v) << " [label=\"q" << n.level << "\"];\n";
      os << "  " << name(v) << " -> " << name(n.low) << " [style=dotted, label=\"" << scalar_text(n.low_factor)
         << "\"];\n";
      os << "  " << name(v) << " -> " << name(n.high_target) << " [label=\"" << label(n.high, n.level - 1)
         << "\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

template <class F>
void Store<F>::check_low_rule() const {
  for (NodeRef v = 1; v < nodes_.size(); ++v) {
    if (!alive_[v]) continue;
    const Node& n = nodes_[v];
    const bool lz = field_.is_zero(n.low_factor), hz = field_.is_zero(n.high.factor);
    if (lz && hz) throw std::logic_error("node with two zero edges");
    if (level(n.low) != n.level - 1 || level(n.high_target) != n.level - 1)
      throw std::logic_error("children on the wrong level");
    if (norm_ == NormRule::L2) continue;
    if (!lz && !field_.equal(n.low_factor, field_.one())) throw std::logic_error("low label is not 1");
    if (lz && !lim_equal(n.high, identity())) throw std::logic_error("zero low edge without unit high label");
    if (lz && n.low != n.high_target) throw std::logic_error("zero edge not pointing at its sibling");
    if (hz && n.low != n.high_target) throw std::logic_error("zero edge not pointing at its sibling");
  }
}

template <class F>
std::optional<typename Store<F>::Edge> Store<F>::op_find(int op, NodeRef v, int a, int b) const {
  auto it = op_cache_.find(OpKey{op, v, a, b});
  if (it == op_cache_.end()) return std::nullopt;
  return it->second;
}

template <class F>
void Store<F>::op_put(int op, NodeRef v, int a, int b, const Edge& e) {
  op_cache_.emplace(OpKey{op, v, a, b}, e);
}

template <class F>
void Store<F>::clear_caches() {
  add_cache_.clear();
  op_cache_.clear();
  stab_cache_.clear();
  norm_cache_.clear();
}

template <class F>
void Store<F>::gc(const std::vector<Edge>& roots) {
  std::vector<char> mark(nodes_.size(), 0);
  mark[kTerminal] = 1;
  std::vector<NodeRef> stack;
  for (const Edge& r : roots) {
    if (!mark[r.target]) {
      mark[r.target] = 1;
      stack.push_back(r.target);
    }
  }
  while (!stack.empty()) {
    const NodeRef v = stack.back();
    stack.pop_back();
    for (NodeRef c : {nodes_[v].low, nodes_[v].high_target}) {
      if (!mark[c]) {
        mark[c] = 1;
        stack.push_back(c);
      }
    }
  }
  for (auto it = unique_.begin(); it != unique_.end();) {
    if (!mark[it->second]) {
      alive_[it->second] = 0;
      free_.push_back(it->second);
      it = unique_.erase(it);
    } else {
      ++it;
    }
  }
  clear_caches();
}

template <class F>
bool Store<F>::maybe_gc(const std::vector<Edge>& roots) {
  if (static_cast<double>(unique_.size()) <= gc_threshold_ * static_cast<double>(capacity_)) return false;
  gc(roots);
  while (static_cast<double>(unique_.size()) > gc_threshold_ * static_cast<double>(capacity_)) capacity_ *= 2;
  return true;
}

template class Store<ExactField>;
template class Store<FloatField>;

}  // namespace exdd
