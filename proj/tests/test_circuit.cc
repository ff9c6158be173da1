#include <doctest.h>

#include "corpus.hpp"
#include "exdd/gates.hpp"

using namespace exdd;

TEST_SUITE("circuit") {

TEST_CASE("parse maps q[0] to the top qubit") {
  const Circuit c = parse_qasm("OPENQASM 2.0; qreg q[2]; h q[0]; cz q[0],q[1];");
  CHECK(c.n_qubits == 2);
  REQUIRE(c.gates.size() == 2);
  CHECK(c.gates[0] == GateInstance{GateKind::H, {2, 0, 0}});
  CHECK(c.gates[1] == GateInstance{GateKind::CZ, {2, 1, 0}});
}

TEST_CASE("parse accepts the full subset") {
  const Circuit c = parse_qasm(
      "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n// comment\nqreg r[3];\ncreg c[3];\n"
      "x r[0]; y r[1]; z r[2]; h r[0]; s r[1]; sdg r[2]; t r[0]; tdg r[1];\n"
      "cz r[0], r[1]; cx r[1],r[2]; swap r[0],r[2]; ccx r[0],r[1],r[2];\n"
      "measure r[0] -> c[0];\n");
  CHECK(c.n_qubits == 3);
  CHECK(c.gates.size() == 12);
  CHECK(c.measured == std::vector<int>{3});
  CHECK(parse_qasm("qreg q[1];h   q[0]  ;").gates.size() == 1);
}

TEST_CASE("parse errors") {
  auto err = [](const std::string& text) -> std::string {
    try {
      parse_qasm(text);
    } catch (const ParseError& e) {
      return e.what();
    }
    return "";
  };
  CHECK(err("qreg q[2]; t q[5];").find("index out of range") != std::string::npos);
  CHECK(err("qreg q[2]; rx q[0];").find("unknown gate") != std::string::npos);
  CHECK(err("h q[0];").find("missing qreg") != std::string::npos);
  CHECK(err("qreg q[2]; cz q[0] q[1];").find("expected ','") != std::string::npos);
  CHECK(err("qreg q[2]; h q[0]").find("missing ';'") != std::string::npos);
  CHECK(err("qreg q[2]; cz q[0],q[0];").find("repeated") != std::string::npos);
  CHECK(err("qreg q[2]; measure q[0] -> c[0]; h q[1];").find("after measurement") != std::string::npos);
  CHECK(err("").find("missing qreg") != std::string::npos);
  try {
    parse_qasm("qreg q[2];\n\n  h q[7];");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("emit and round trip") {
  Circuit empty;
  empty.n_qubits = 3;
  CHECK(emit_qasm(empty) == "OPENQASM 2.0;\nqreg q[3];\n");
  for (const auto& c : testutil::corpus()) {
    const Circuit back = parse_qasm(emit_qasm(c));
    REQUIRE(back == c);
    REQUIRE(emit_qasm(back) == emit_qasm(c));
  }
  const Circuit m = parse_qasm("qreg q[2]; h q[1]; measure q[1] -> c[1];");
  CHECK(parse_qasm(emit_qasm(m)) == m);
}

TEST_CASE("malformed input never escapes as anything but ParseError") {
  std::mt19937_64 rng(17);
  const std::string alphabet = "qreg[]0123456789;,-> hxtczsdgOPENQASM2.0\n/\"";
  const std::string seed = emit_qasm(gen_random(3, 20, 3));
  for (int it = 0; it < 3000; ++it) {
    std::string s = seed;
    const int edits = 1 + static_cast<int>(rng() % 6);
    for (int e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t p = rng() % s.size();
      switch (rng() % 3) {
        case 0: s.erase(p, 1 + rng() % 4); break;
        case 1: s.insert(p, 1, alphabet[rng() % alphabet.size()]); break;
        default: s[p] = alphabet[rng() % alphabet.size()]; break;
      }
    }
    try {
      const Circuit c = parse_qasm(s);
      c.validate();
    } catch (const ParseError&) {
    }
  }
}

TEST_CASE("grover") {
  const Circuit g = gen_grover(2, "11", 1);
  bool has_ccx = false;
  for (const auto& x : g.gates) has_ccx = has_ccx || x.kind == GateKind::CCX;
  CHECK(has_ccx);
  CHECK(parse_qasm(emit_qasm(g)) == g);
  const auto psi = dense_simulate(g);
  // search register q[0], q[1] are the top two qubits
  for (int k : {g.n_qubits, g.n_qubits - 1}) {
    RingValue p1;
    for (std::size_t x = 0; x < psi.size(); ++x)
      if ((x >> (k - 1)) & 1) p1 = p1 + abs2(psi[x]);
    CHECK(p1 == RingValue(1));
  }
  CHECK_THROWS_AS(gen_grover(3, "11"), std::invalid_argument);
  // default iteration count for 3 search qubits is 2
  const Circuit g3 = gen_grover(3, "101");
  const auto psi3 = dense_simulate(g3);
  RingValue hit;
  for (std::size_t x = 0; x < psi3.size(); ++x) {
    const int n = g3.n_qubits;
    const bool b0 = (x >> (n - 1)) & 1, b1 = (x >> (n - 2)) & 1, b2 = (x >> (n - 3)) & 1;
    if (b0 && !b1 && b2) hit = hit + abs2(psi3[x]);
  }
  CHECK(hit.to_complex().real() > 0.9);
}

TEST_CASE("wstate") {
  const auto w2 = dense_simulate(gen_wstate(2));
  const RingValue r = RingValue::inv_sqrt2();
  CHECK(w2 == std::vector<RingValue>{0, r, r, 0});
  for (int n : {4, 8}) {
    const auto psi = dense_simulate(gen_wstate(n));
    const RingValue amp = n == 4 ? testutil::frac(1, 2) : RingValue(0, Fraction(1, 4), 0, 0);
    for (std::size_t x = 0; x < psi.size(); ++x) REQUIRE(psi[x] == (std::popcount(x) == 1 ? amp : RingValue()));
  }
  CHECK_THROWS_AS(gen_wstate(6), std::invalid_argument);
}

TEST_CASE("random generator") {
  CHECK(gen_random(5, 40, 9) == gen_random(5, 40, 9));
  CHECK(!(gen_random(5, 40, 9) == gen_random(5, 40, 10)));
  RandomOptions ro;
  ro.max_t = 0;
  for (std::uint64_t s = 0; s < 10; ++s) CHECK(counts(gen_random(4, 60, s, ro)).t == 0);
  ro.max_t = 3;
  ro.max_h = 4;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto k = counts(gen_random(4, 60, s, ro));
    CHECK(k.t <= 3);
    CHECK(k.h <= 4);
  }
  for (const auto& g : gen_random(6, 200, 1).gates)
    for (int i = 1; i < g.arity(); ++i) REQUIRE(g.q[i] != g.q[0]);
  const Circuit c = gen_random(6, 50, 4);
  ExactStore st(Mode::EVDD);
  CHECK(testutil::matches_dense(st, testutil::run(st, c), dense_simulate(c)));
}

TEST_CASE("counts") {
  const GateCounts k = counts(parse_qasm(testutil::kLeading));
  CHECK(k.h == 3);
  CHECK(k.t == 2);
  CHECK(k.cz == 1);
  Circuit e;
  const GateCounts z = counts(e);
  CHECK(z.h + z.t + z.cz + z.toffoli + z.clifford_other == 0);
  const GateCounts cx = counts(parse_qasm("qreg q[2]; cx q[0],q[1];"));
  CHECK(cx.h == 2);
  CHECK(cx.cz == 1);
  CHECK(counts(parse_qasm("qreg q[3]; ccx q[0],q[1],q[2];")).toffoli == 1);
}

TEST_CASE("dense_simulate") {
  Circuit e;
  e.n_qubits = 3;
  const auto v = dense_simulate(e);
  CHECK(v[0] == RingValue(1));
  for (std::size_t i = 1; i < v.size(); ++i) CHECK(v[i].is_zero());
  const auto h = dense_simulate(parse_qasm("qreg q[1]; h q[0];"));
  CHECK(h == std::vector<RingValue>{RingValue::inv_sqrt2(), RingValue::inv_sqrt2()});
  Circuit big;
  big.n_qubits = 13;
  CHECK_THROWS_AS(dense_simulate(big), TooLarge);
}

TEST_CASE("leading example quotients") {
  const auto psi = dense_simulate(parse_qasm(testutil::kLeading));
  ExactStore st(Mode::EVDD);
  const auto s = testutil::run(st, parse_qasm(testutil::kLeading));
  const auto& top = st.node(s.root.target);
  // top high label is the ratio of the first nonzero amplitudes of the two halves
  CHECK(top.high.factor == psi[2] / psi[0]);
  CHECK(st.node(top.low).high.factor == psi[1] / psi[0]);
  CHECK(st.node(top.high_target).high.factor == psi[3] / psi[2]);
}

TEST_CASE("scaled density entries lie in Q_{n,t}") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    RandomOptions ro;
    ro.max_t = static_cast<int>(seed % 5);
    const Circuit c = gen_random(1 + seed % 5, 30, seed, ro);
    const long t = counts(c).t;
    const auto psi = dense_simulate(c);
    const RingValue scale(static_cast<long>(psi.size()));
    for (std::size_t y = 0; y < psi.size(); ++y)
      for (std::size_t x = 0; x < psi.size(); ++x) REQUIRE(in_Qnt(scale * psi[y] * conj(psi[x]), c.n_qubits, t));
  }
}

}
