#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "exdd/coeff.hpp"
#include "exdd/pauli.hpp"

namespace exdd {

using NodeRef = std::uint32_t;
constexpr NodeRef kTerminal = 0;

enum class Mode { EVDD, LIMDD };
enum class NormRule { Low, L2 };

const char* mode_name(Mode m);

struct BothZero : std::logic_error {
  BothZero() : std::logic_error("make_edge called with two zero edges") {}
};

struct DiagramStats {
  std::size_t node_count = 0;                // terminal excluded
  std::vector<std::size_t> width_per_level;  // [k-1] = nodes at level k
  std::size_t width = 0;
  std::size_t peak_nodes = 0;
  unsigned max_coeff_bits = 0;  // bulk labels, exact mode only
};

// Minimizes g0 * P * g1 over the groups generated by G0 and G1 (strings only).
struct ArgLexMin {
  PhasedPauli g0, g1;
};
ArgLexMin arg_lex_min(const std::vector<PhasedPauli>& G0, const std::vector<PhasedPauli>& G1,
                      const PauliString& P);

// basis of span(A) ∩ span(B), as index sets into A and B
struct F2Intersection {
  std::vector<std::pair<std::vector<int>, std::vector<int>>> combos;
};
F2Intersection f2_intersection(const std::vector<PauliString>& A, const std::vector<PauliString>& B);

template <class Field>
class Store {
 public:
  using Scalar = typename Field::Scalar;
  using Lim = BasicLim<Scalar>;

  struct Edge {
    Lim label;
    NodeRef target = kTerminal;
  };

  struct Node {
    int level = 0;
    Scalar low_factor;
    NodeRef low = kTerminal;
    Lim high;
    NodeRef high_target = kTerminal;
  };

  explicit Store(Mode mode, Field field = {}, NormRule norm = NormRule::Low);
  Store(const Store&) = delete;
  Store& operator=(const Store&) = delete;

  Mode mode() const { return mode_; }
  const Field& field() const { return field_; }
  NormRule norm() const { return norm_; }

  Lim identity() const { return {field_.one(), {}}; }
  Edge zero_edge() const { return {{field_.zero(), {}}, kTerminal}; }
  Edge terminal_edge(const Scalar& s) const;
  bool is_zero(const Edge& e) const { return field_.is_zero(e.label.factor); }
  Edge scale(const Scalar& s, const Edge& e) const;
  Edge apply_lim(const Lim& A, const Edge& e) const;
  Edge low_edge(NodeRef v) const;
  Edge high_edge(NodeRef v) const;
  int level(NodeRef v) const { return nodes_[v].level; }
  const Node& node(NodeRef v) const { return nodes_[v]; }

  Lim lim_mul(const Lim& A, const Lim& B) const { return exdd::lim_mul(field_, A, B); }
  Lim lim_inverse(const Lim& A) const { return exdd::lim_inverse(field_, A); }
  bool lim_equal(const Lim& A, const Lim& B) const {
    return A.str == B.str && field_.equal(A.factor, B.factor);
  }

  Edge make_edge(const Edge& e0, const Edge& e1);
  std::pair<Lim, Lim> get_labels(const Lim& A, NodeRef v0, NodeRef v1);
  Edge follow(const Edge& e, int bit) const;
  Edge add(const Edge& e, const Edge& f);
  const std::vector<PhasedPauli>& stabilizer_gens(NodeRef v);
  Lim root_label(const Lim& A, NodeRef w);

  Scalar eval_amplitude(const Edge& root, std::uint64_t bits) const;
  Scalar squared_norm(const Edge& e);
  Edge basis_state(int n, std::uint64_t bits = 0);

  DiagramStats stats(const Edge& root) const;
  std::vector<Scalar> bulk_labels(const Edge& root) const;
  std::string dot(const Edge& root) const;
  void check_low_rule() const;

  std::optional<Edge> op_find(int op, NodeRef v, int a, int b = 0) const;
  void op_put(int op, NodeRef v, int a, int b, const Edge& e);
  void clear_op_cache() { op_cache_.clear(); }
  void clear_caches();

  std::size_t table_size() const { return unique_.size(); }
  std::size_t add_cache_size() const { return add_cache_.size(); }
  std::size_t capacity() const { return capacity_; }
  void set_gc_threshold(double r) { gc_threshold_ = r; }
  double gc_threshold() const { return gc_threshold_; }
  void gc(const std::vector<Edge>& roots);
  bool maybe_gc(const std::vector<Edge>& roots);

 private:
  struct NodeKey {
    int level;
    Scalar low_factor;
    NodeRef low;
    Lim high;
    NodeRef high_target;
  };
  struct NodeKeyHash {
    const Field* f;
    std::size_t operator()(const NodeKey& k) const;
  };
  struct NodeKeyEq {
    const Field* f;
    bool operator()(const NodeKey& x, const NodeKey& y) const;
  };
  struct AddKey {
    NodeRef v;
    Lim C;
    NodeRef w;
  };
  struct AddKeyHash {
    const Field* f;
    std::size_t operator()(const AddKey& k) const;
  };
  struct AddKeyEq {
    const Field* f;
    bool operator()(const AddKey& x, const AddKey& y) const;
  };
  struct OpKey {
    int op;
    NodeRef v;
    int a, b;
    bool operator==(const OpKey&) const = default;
  };
  struct OpKeyHash {
    std::size_t operator()(const OpKey& k) const;
  };

  NodeRef intern(int level, const Scalar& low_factor, NodeRef low, const Lim& high, NodeRef high_target);
  Edge make_edge_evdd(const Edge& e0, const Edge& e1, int k);
  std::vector<PhasedPauli> compute_stabilizer_gens(NodeRef v);
  Scalar node_norm(NodeRef v);

  Mode mode_;
  Field field_;
  NormRule norm_;
  std::vector<Node> nodes_;
  std::vector<char> alive_;
  std::vector<NodeRef> free_;
  std::unordered_map<NodeKey, NodeRef, NodeKeyHash, NodeKeyEq> unique_;
  std::unordered_map<AddKey, Edge, AddKeyHash, AddKeyEq> add_cache_;
  std::unordered_map<OpKey, Edge, OpKeyHash> op_cache_;
  std::unordered_map<NodeRef, std::vector<PhasedPauli>> stab_cache_;
  std::unordered_map<NodeRef, Scalar> norm_cache_;
  std::size_t capacity_ = 1 << 16;
  double gc_threshold_ = 0.75;
};

extern template class Store<ExactField>;
extern template class Store<FloatField>;

using ExactStore = Store<ExactField>;
using FloatStore = Store<FloatField>;

}  // namespace exdd
