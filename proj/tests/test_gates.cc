#include <doctest.h>

#include "corpus.hpp"
#include "exdd/stabtrack.hpp"

using namespace exdd;
using testutil::frac;

namespace {

GateInstance g1(GateKind k, int q) { return {k, {q, 0, 0}}; }
GateInstance g2(GateKind k, int a, int b) { return {k, {a, b, 0}}; }

}  // namespace

TEST_SUITE("gates") {

TEST_CASE("single-qubit examples") {
  for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
    ExactStore st(m);
    auto s = initial_state(st, 1);
    apply_pauli(st, s, GateKind::X, 1);
    CHECK(st.eval_amplitude(s.root, 0).is_zero());
    CHECK(st.eval_amplitude(s.root, 1) == RingValue(1));

    s = initial_state(st, 1);
    apply_hadamard(st, s, 1);
    CHECK(st.eval_amplitude(s.root, 0) == RingValue::inv_sqrt2());
    CHECK(st.eval_amplitude(s.root, 1) == RingValue::inv_sqrt2());
    apply_gate(st, s, g1(GateKind::Z, 1));
    CHECK(st.eval_amplitude(s.root, 1) == -RingValue::inv_sqrt2());

    s = initial_state(st, 1);
    const auto zero = s.root;
    apply_diagonal(st, s, GateKind::T, 1);
    CHECK(s.root.target == zero.target);
    CHECK(st.lim_equal(s.root.label, zero.label));
  }
  ExactStore ev(Mode::EVDD);
  auto p = initial_state(ev, 1);
  apply_hadamard(ev, p, 1);
  apply_diagonal(ev, p, GateKind::T, 1);
  CHECK(ev.node(p.root.target).high.factor == omega_power(1));
}

TEST_CASE("CZ examples") {
  for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
    ExactStore st(m);
    State<ExactField> s{st.basis_state(2, 0b11), 2};
    apply_cz(st, s, 1, 2);
    CHECK(st.eval_amplitude(s.root, 0b11) == RingValue(-1));
    State<ExactField> z{st.basis_state(2, 0), 2};
    const auto before = z.root;
    apply_cz(st, z, 2, 1);
    CHECK(z.root.target == before.target);
    CHECK_THROWS_AS(apply_cz(st, z, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(apply_cz(st, z, 1, 3), IndexOutOfRange);
  }
}

TEST_CASE("self-inverse round trips keep the node") {
  for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
    ExactStore st(m);
    std::mt19937_64 rng(m == Mode::EVDD ? 1 : 2);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const int n = 2 + seed % 4;
      auto s = testutil::run(st, gen_random(n, 12, seed));
      const int a = 1 + static_cast<int>(rng() % n);
      const int b = a % n + 1;
      const std::vector<std::vector<GateInstance>> seqs = {
          {g1(GateKind::X, a), g1(GateKind::X, a)},       {g1(GateKind::Y, a), g1(GateKind::Y, a)},
          {g1(GateKind::Z, a), g1(GateKind::Z, a)},       {g1(GateKind::H, a), g1(GateKind::H, a)},
          {g2(GateKind::CZ, a, b), g2(GateKind::CZ, a, b)}, {g2(GateKind::SWAP, a, b), g2(GateKind::SWAP, a, b)},
          {g1(GateKind::T, a), g1(GateKind::Tdg, a)},     {g1(GateKind::S, a), g1(GateKind::Sdg, a)},
      };
      for (const auto& seq : seqs) {
        const auto before = s.root;
        for (const auto& g : seq) apply_gate(st, s, g);
        REQUIRE(s.root.target == before.target);
        if (m == Mode::EVDD) REQUIRE(st.lim_equal(s.root.label, before.label));
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
          REQUIRE(st.eval_amplitude(s.root, x) == st.eval_amplitude(before, x));
      }
    }
  }
}

TEST_CASE("compile") {
  const auto cx = compile(g2(GateKind::CX, 2, 1));
  REQUIRE(cx.size() == 3);
  CHECK(cx[0] == g1(GateKind::H, 1));
  CHECK(cx[1] == g2(GateKind::CZ, 2, 1));
  CHECK(cx[2] == g1(GateKind::H, 1));
  CHECK(compile(g1(GateKind::T, 1)) == std::vector<GateInstance>{g1(GateKind::T, 1)});
  CHECK(compile(g2(GateKind::SWAP, 1, 2)).size() == 1);

  const GateInstance ccx{GateKind::CCX, {3, 1, 2}};
  const auto net = compile(ccx);
  int t = 0;
  for (const auto& g : net) {
    CHECK(g.kind != GateKind::CX);
    if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++t;
  }
  CHECK(t == 7);
  for (std::size_t basis = 0; basis < 8; ++basis) {
    std::vector<RingValue> a(8), b(8);
    a[basis] = b[basis] = 1;
    dense_apply(a, 3, ccx);
    for (const auto& g : net) dense_apply(b, 3, g);
    REQUIRE(a == b);
  }
}

TEST_CASE("simulate examples") {
  for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
    ExactStore st(m);
    Circuit empty;
    empty.n_qubits = 3;
    const auto s = testutil::run(st, empty);
    CHECK(st.stats(s.root).node_count == 3);
    CHECK(st.eval_amplitude(s.root, 0) == RingValue(1));
  }
  ExactStore ev(Mode::EVDD);
  const auto lead = testutil::run(ev, parse_qasm(testutil::kLeading));
  CHECK(abs2(lead.root.label.factor) == RingValue(Fraction(1, 4), Fraction(1, 8), 0, 0));

  const auto mot = testutil::run(ev, parse_qasm(testutil::kMotivating));
  CHECK(ev.stats(mot.root).node_count + 1 == 3);

  Circuit prefix = parse_qasm(testutil::kMotivating);
  prefix.gates.pop_back();
  const auto pre = testutil::run(ev, prefix);
  const auto& top = ev.node(pre.root.target);
  CHECK(top.level == 2);
  CHECK(top.high.factor.is_zero());
}

TEST_CASE("float tolerance zero keeps the rounding residue") {
  FloatStore f0(Mode::EVDD, {0.0});
  const auto s0 = testutil::run(f0, parse_qasm(testutil::kMotivating));
  CHECK(f0.stats(s0.root).node_count + 1 == 4);
  FloatStore f1(Mode::EVDD, {1e-14});
  const auto s1 = testutil::run(f1, parse_qasm(testutil::kMotivating));
  CHECK(f1.stats(s1.root).node_count + 1 == 3);
}

TEST_CASE("oracle equivalence on the corpus") {
  for (const auto& c : testutil::corpus()) {
    const auto psi = dense_simulate(c);
    for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
      ExactStore st(m);
      const auto s = testutil::run(st, c);
      REQUIRE_MESSAGE(testutil::matches_dense(st, s, psi), c.name);
      FloatStore fs(m);
      const auto f = testutil::run(fs, c);
      REQUIRE_MESSAGE(testutil::matches_dense(fs, f, psi, 1e-9), c.name);
    }
  }
}

TEST_CASE("per-gate assertions hold on random circuits") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomOptions ro;
    ro.max_t = static_cast<int>(seed % 5);
    ro.max_h = seed % 2 ? 5 : -1;
    const Circuit c = gen_random(2 + seed % 6, 40, seed, ro);
    for (Mode m : {Mode::EVDD, Mode::LIMDD}) {
      ExactStore st(m);
      SimOptions opt;
      opt.check_bounds = true;
      opt.check_coeffs = true;
      State<ExactField> s;
      const RunStats r = simulate(st, c, &s, opt);
      REQUIRE_MESSAGE(r.violations.empty(), r.violations.front());
    }
  }
}

TEST_CASE("Clifford circuits give LIMDD towers") {
  RandomOptions ro;
  ro.clifford_only = true;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    ExactStore st(Mode::LIMDD);
    const int n = 1 + seed % 10;
    const auto s = testutil::run(st, gen_random(n, 60, seed, ro));
    const auto stats = st.stats(s.root);
    REQUIRE(stats.width == 1);
    REQUIRE(stats.node_count == static_cast<std::size_t>(n));
  }
}

TEST_CASE("run statistics") {
  ExactStore st(Mode::EVDD);
  State<ExactField> s;
  const RunStats r = simulate(st, parse_qasm(testutil::kLeading), &s);
  CHECK(r.counts.h == 3);
  CHECK(r.counts.t == 2);
  CHECK(r.counts.cz == 1);
  CHECK(r.trace.size() == 6);
  CHECK(r.peak_nodes >= st.stats(s.root).node_count);
}

}
