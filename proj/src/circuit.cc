#include "exdd/circuit.hpp"

#include <cctype>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "exdd/gates.hpp"

namespace exdd {

void Circuit::validate() const {
  if (n_qubits < 1 || n_qubits > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  for (const auto& g : gates) {
    for (int i = 0; i < g.arity(); ++i) {
      if (g.q[i] < 1 || g.q[i] > n_qubits) throw std::invalid_argument("qubit index out of range");
      for (int j = 0; j < i; ++j)
        if (g.q[i] == g.q[j]) throw std::invalid_argument("repeated qubit operand");
    }
  }
}

namespace {

struct Statement {
  std::string text;
  std::vector<std::pair<int, int>> pos;  // line/column per character
};

struct Cursor {
  const Statement& st;
  std::size_t i = 0;

  void skip_ws() {
    while (i < st.text.size() && std::isspace(static_cast<unsigned char>(st.text[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= st.text.size();
  }
  std::pair<int, int> where() const {
    if (st.pos.empty()) return {0, 0};
    return st.pos[std::min(i, st.pos.size() - 1)];
  }
  [[noreturn]] void fail(const std::string& why) const {
    const auto [l, c] = where();
    throw ParseError(l, c, why);
  }
  std::string ident() {
    skip_ws();
    const std::size_t s = i;
    while (i < st.text.size() &&
           (std::isalnum(static_cast<unsigned char>(st.text[i])) || st.text[i] == '_' || st.text[i] == '.'))
      ++i;
    if (s == i) fail("expected identifier");
    return st.text.substr(s, i - s);
  }
  void expect(char ch) {
    skip_ws();
    if (i >= st.text.size() || st.text[i] != ch) fail(std::string("expected '") + ch + "'");
    ++i;
  }
  bool accept(char ch) {
    skip_ws();
    if (i < st.text.size() && st.text[i] == ch) {
      ++i;
      return true;
    }
    return false;
  }
  long number() {
    skip_ws();
    const std::size_t s = i;
    while (i < st.text.size() && std::isdigit(static_cast<unsigned char>(st.text[i]))) ++i;
    if (s == i) fail("expected integer");
    if (i - s > 9) fail("integer too large");
    return std::stol(st.text.substr(s, i - s));
  }
};

std::vector<Statement> split_statements(const std::string& text, Statement* tail) {
  std::vector<Statement> out;
  Statement cur;
  int line = 1, col = 1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '/' && i + 1 < text.size() && text[i + 1] == '/') {
      while (i < text.size() && text[i] != '\n') ++i;
      if (i >= text.size()) break;
      cur.text += '\n';
      cur.pos.emplace_back(line, col);
      ++line;
      col = 1;
      continue;
    }
    if (ch == ';') {
      out.push_back(std::move(cur));
      cur = Statement{};
    } else {
      cur.text += ch;
      cur.pos.emplace_back(line, col);
    }
    if (ch == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  *tail = std::move(cur);
  return out;
}

bool gate_from_name(const std::string& s, GateKind* g) {
  static const std::pair<const char*, GateKind> table[] = {
      {"x", GateKind::X},     {"y", GateKind::Y},   {"z", GateKind::Z},     {"h", GateKind::H},
      {"s", GateKind::S},     {"sdg", GateKind::Sdg}, {"t", GateKind::T},   {"tdg", GateKind::Tdg},
      {"cz", GateKind::CZ},   {"cx", GateKind::CX}, {"swap", GateKind::SWAP}, {"ccx", GateKind::CCX}};
  for (const auto& [name, kind] : table) {
    if (s == name) {
      *g = kind;
      return true;
    }
  }
  return false;
}

}  // namespace

Circuit parse_qasm(const std::string& text) {
  Statement tail;
  const auto stmts = split_statements(text, &tail);
  {
    Cursor c{tail};
    if (!c.done()) c.fail("missing ';'");
  }
  Circuit circ;
  std::string qreg;
  bool first = true;
  for (const Statement& st : stmts) {
    Cursor c{st};
    if (c.done()) continue;
    const std::string head = c.ident();
    if (head == "OPENQASM") {
      if (!first) c.fail("OPENQASM header must come first");
      c.skip_ws();
      const std::size_t s = c.i;
      while (c.i < st.text.size() && !std::isspace(static_cast<unsigned char>(st.text[c.i]))) ++c.i;
      if (st.text.substr(s, c.i - s) != "2.0") c.fail("unsupported OPENQASM version");
      if (!c.done()) c.fail("malformed statement");
      first = false;
      continue;
    }
    first = false;
    if (head == "include") {
      c.skip_ws();
      if (!c.accept('"')) c.fail("expected quoted file name");
      while (c.i < st.text.size() && st.text[c.i] != '"') ++c.i;
      if (!c.accept('"') || !c.done()) c.fail("malformed statement");
      continue;
    }
    if (head == "qreg" || head == "creg") {
      const std::string id = c.ident();
      c.expect('[');
      const long size = c.number();
      c.expect(']');
      if (!c.done()) c.fail("malformed statement");
      if (head == "creg") continue;
      if (!qreg.empty()) c.fail("only one qreg is supported");
      if (size < 1 || size > kMaxQubits) c.fail("qreg size out of range");
      qreg = id;
      circ.n_qubits = static_cast<int>(size);
      continue;
    }
    auto operand = [&]() {
      const std::string id = c.ident();
      if (qreg.empty()) c.fail("missing qreg");
      if (id != qreg) c.fail("unknown register '" + id + "'");
      c.expect('[');
      const long idx = c.number();
      c.expect(']');
      if (idx < 0 || idx >= circ.n_qubits) c.fail("index out of range");
      return circ.n_qubits - static_cast<int>(idx);
    };
    if (head == "measure") {
      if (qreg.empty()) c.fail("missing qreg");
      const int q = operand();
      c.expect('-');
      c.expect('>');
      c.ident();
      if (c.accept('[')) {
        c.number();
        c.expect(']');
      }
      if (!c.done()) c.fail("malformed statement");
      circ.measured.push_back(q);
      continue;
    }
    GateKind kind;
    if (!gate_from_name(head, &kind)) c.fail("unknown gate '" + head + "'");
    if (qreg.empty()) c.fail("missing qreg");
    if (!circ.measured.empty()) c.fail("gate after measurement");
    GateInstance g{kind};
    for (int i = 0; i < g.arity(); ++i) {
      if (i > 0) c.expect(',');
      g.q[i] = operand();
      for (int j = 0; j < i; ++j)
        if (g.q[j] == g.q[i]) c.fail("repeated qubit operand");
    }
    if (!c.done()) c.fail("malformed statement");
    circ.gates.push_back(g);
  }
  if (qreg.empty()) throw ParseError(1, 1, "missing qreg");
  return circ;
}

std::string gate_text(const GateInstance& g, int n) {
  std::string s = gate_name(g.kind);
  for (int i = 0; i < g.arity(); ++i) {
    s += i == 0 ? " " : ",";
    s += "q[" + std::to_string(n - g.q[i]) + "]";
  }
  return s;
}

std::string emit_qasm(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n";
  os << "qreg q[" << c.n_qubits << "];\n";
  if (!c.measured.empty()) os << "creg c[" << c.n_qubits << "];\n";
  for (const auto& g : c.gates) os << gate_text(g, c.n_qubits) << ";\n";
  for (int q : c.measured) {
    const int idx = c.n_qubits - q;
    os << "measure q[" << idx << "] -> c[" << idx << "];\n";
  }
  return os.str();
}

namespace {

struct Builder {
  Circuit c;
  // QASM-style 0-based index, 0 = top
  int at(int idx) const { return c.n_qubits - idx; }
  void g1(GateKind k, int a) { c.gates.push_back({k, {at(a), 0, 0}}); }
  void g2(GateKind k, int a, int b) { c.gates.push_back({k, {at(a), at(b), 0}}); }
  void g3(GateKind k, int a, int b, int t) { c.gates.push_back({k, {at(a), at(b), at(t)}}); }

  void mcx(const std::vector<int>& ctl, int target, const std::vector<int>& work) {
    const std::size_t m = ctl.size();
    if (m == 0) {
      g1(GateKind::X, target);
    } else if (m == 1) {
      g2(GateKind::CX, ctl[0], target);
    } else if (m == 2) {
      g3(GateKind::CCX, ctl[0], ctl[1], target);
    } else {
      std::vector<GateInstance> up;
      const std::size_t start = c.gates.size();
      g3(GateKind::CCX, ctl[0], ctl[1], work[0]);
      for (std::size_t i = 2; i + 1 < m; ++i) g3(GateKind::CCX, work[i - 2], ctl[i], work[i - 1]);
      up.assign(c.gates.begin() + static_cast<long>(start), c.gates.end());
      g3(GateKind::CCX, work[m - 3], ctl[m - 1], target);
      for (auto it = up.rbegin(); it != up.rend(); ++it) c.gates.push_back(*it);
    }
  }
};

}  // namespace

Circuit gen_grover(int n_search, const std::string& marked, std::optional<int> iterations) {
  if (n_search < 1) throw std::invalid_argument("n_search must be at least 1");
  if (static_cast<int>(marked.size()) != n_search) throw std::invalid_argument("invalid marked length");
  for (char ch : marked)
    if (ch != '0' && ch != '1') throw std::invalid_argument("marked must be a bitstring");
  const int phase = n_search;
  const int n_work = std::max(0, n_search - 2);
  Builder b;
  b.c.n_qubits = n_search + 1 + n_work;
  if (b.c.n_qubits > kMaxQubits) throw std::invalid_argument("too many qubits");
  b.c.name = "grover_" + std::to_string(n_search);
  std::vector<int> search, work;
  for (int i = 0; i < n_search; ++i) search.push_back(i);
  for (int i = 0; i < n_work; ++i) work.push_back(n_search + 1 + i);
  int iters = iterations.value_or(
      static_cast<int>(std::floor(M_PI / 4 * std::sqrt(std::ldexp(1.0, n_search)))));
  if (!iterations) iters = std::max(iters, 1);

  b.g1(GateKind::X, phase);
  b.g1(GateKind::H, phase);
  for (int q : search) b.g1(GateKind::H, q);
  for (int it = 0; it < iters; ++it) {
    for (int i = 0; i < n_search; ++i)
      if (marked[i] == '0') b.g1(GateKind::X, i);
    b.mcx(search, phase, work);
    for (int i = 0; i < n_search; ++i)
      if (marked[i] == '0') b.g1(GateKind::X, i);
    for (int q : search) b.g1(GateKind::H, q);
    for (int q : search) b.g1(GateKind::X, q);
    if (n_search == 1) {
      b.g1(GateKind::Z, search[0]);
    } else {
      const int last = search.back();
      b.g1(GateKind::H, last);
      b.mcx(std::vector<int>(search.begin(), search.end() - 1), last, work);
      b.g1(GateKind::H, last);
    }
    for (int q : search) b.g1(GateKind::X, q);
    for (int q : search) b.g1(GateKind::H, q);
  }
  b.g1(GateKind::H, phase);
  b.g1(GateKind::X, phase);
  return b.c;
}

Circuit gen_wstate(int n) {
  if (n < 1 || (n & (n - 1)) != 0) throw std::invalid_argument("W-state size must be a power of two");
  if (n > kMaxQubits) throw std::invalid_argument("too many qubits");
  Builder b;
  b.c.n_qubits = n;
  b.c.name = "wstate_" + std::to_string(n);
  b.g1(GateKind::X, 0);
  for (int m = 1; m < n; m *= 2) {
    for (int i = 0; i < m; ++i) {
      const int a = i, t = i + m;
      // controlled-H(a -> t), then CX(t -> a)
      b.g1(GateKind::Sdg, t);
      b.g1(GateKind::H, t);
      b.g1(GateKind::Tdg, t);
      b.g2(GateKind::CX, a, t);
      b.g1(GateKind::T, t);
      b.g1(GateKind::H, t);
      b.g1(GateKind::S, t);
      b.g2(GateKind::CX, t, a);
    }
  }
  return b.c;
}

Circuit gen_random(int n, int depth, std::uint64_t seed, const RandomOptions& opt) {
  if (n < 1 || n > kMaxQubits) throw std::invalid_argument("qubit count out of range");
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  std::mt19937_64 rng(seed);
  std::vector<GateKind> pool{GateKind::X, GateKind::Y, GateKind::Z,   GateKind::H,
                             GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg};
  if (n >= 2) {
    pool.push_back(GateKind::CZ);
    pool.push_back(GateKind::CX);
    pool.push_back(GateKind::SWAP);
  }
  const int max_t = opt.clifford_only ? 0 : opt.max_t;
  int t_used = 0, h_used = 0;
  Circuit c;
  c.n_qubits = n;
  c.seed = seed;
  c.name = "random_" + std::to_string(n) + "_" + std::to_string(depth) + "_" + std::to_string(seed);
  for (int step = 0; step < depth; ++step) {
    GateKind k;
    for (;;) {
      k = pool[rng() % pool.size()];
      const bool is_t = k == GateKind::T || k == GateKind::Tdg;
      const int h_cost = k == GateKind::H ? 1 : (k == GateKind::CX ? 2 : 0);
      if (is_t && max_t >= 0 && t_used >= max_t) continue;
      if (h_cost > 0 && opt.max_h >= 0 && h_used + h_cost > opt.max_h) continue;
      t_used += is_t;
      h_used += h_cost;
      break;
    }
    GateInstance g{k};
    g.q[0] = 1 + static_cast<int>(rng() % n);
    if (g.arity() == 2) {
      int q = 1 + static_cast<int>(rng() % (n - 1));
      if (q >= g.q[0]) ++q;
      g.q[1] = q;
    }
    c.gates.push_back(g);
  }
  return c;
}

Circuit compiled(const Circuit& c) {
  Circuit out = c;
  out.gates.clear();
  for (const auto& g : c.gates)
    for (const auto& p : compile(g)) out.gates.push_back(p);
  return out;
}

GateCounts counts(const Circuit& c) {
  GateCounts k;
  for (const auto& g : c.gates) {
    if (g.kind == GateKind::CCX) ++k.toffoli;
    for (const auto& p : compile(g)) {
      switch (p.kind) {
        case GateKind::H: ++k.h; break;
        case GateKind::T:
        case GateKind::Tdg: ++k.t; break;
        case GateKind::CZ: ++k.cz; break;
        default: ++k.clifford_other;
      }
    }
  }
  return k;
}

void dense_apply(std::vector<RingValue>& psi, int n, const GateInstance& g) {
  const std::size_t dim = std::size_t{1} << n;
  auto bit = [](int q) { return std::size_t{1} << (q - 1); };
  const std::size_t m0 = bit(g.q[0]);
  switch (g.kind) {
    case GateKind::X:
    case GateKind::Y:
    case GateKind::H: {
      const RingValue I = RingValue::i_power(1), mI = RingValue::i_power(3), r = RingValue::inv_sqrt2();
      for (std::size_t i = 0; i < dim; ++i) {
        if (i & m0) continue;
        RingValue& a0 = psi[i];
        RingValue& a1 = psi[i | m0];
        if (g.kind == GateKind::X) {
          std::swap(a0, a1);
        } else if (g.kind == GateKind::Y) {
          RingValue n0 = mI * a1, n1 = I * a0;
          a0 = std::move(n0);
          a1 = std::move(n1);
        } else {
          RingValue n0 = (a0 + a1) * r, n1 = (a0 - a1) * r;
          a0 = std::move(n0);
          a1 = std::move(n1);
        }
      }
      break;
    }
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg: {
      const RingValue d = omega_power(diagonal_omega_power(g.kind));
      for (std::size_t i = 0; i < dim; ++i)
        if (i & m0) psi[i] = psi[i] * d;
      break;
    }
    case GateKind::CZ: {
      const std::size_t m1 = bit(g.q[1]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & m0) && (i & m1)) psi[i] = -psi[i];
      break;
    }
    case GateKind::CX: {
      const std::size_t m1 = bit(g.q[1]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & m0) && !(i & m1)) std::swap(psi[i], psi[i | m1]);
      break;
    }
    case GateKind::SWAP: {
      const std::size_t m1 = bit(g.q[1]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & m0) && !(i & m1)) std::swap(psi[i], psi[(i ^ m0) | m1]);
      break;
    }
    case GateKind::CCX: {
      const std::size_t m1 = bit(g.q[1]), m2 = bit(g.q[2]);
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & m0) && (i & m1) && !(i & m2)) std::swap(psi[i], psi[i | m2]);
      break;
    }
  }
}

std::vector<RingValue> dense_simulate(const Circuit& c, int cap) {
  if (c.n_qubits > cap) throw TooLarge("dense oracle limited to " + std::to_string(cap) + " qubits");
  std::vector<RingValue> psi(std::size_t{1} << c.n_qubits);
  psi[0] = 1;
  for (const auto& g : c.gates) dense_apply(psi, c.n_qubits, g);
  return psi;
}

}  // namespace exdd
