#include <doctest.h>

#include "corpus.hpp"
#include "exdd/stabtrack.hpp"

using namespace exdd;

namespace {

GateInstance g1(GateKind k, int q) { return {k, {q, 0, 0}}; }

bool stabilizes(const SignedPauli& g, const std::vector<RingValue>& psi) {
  return testutil::apply_dense({g.negative ? RingValue(-1) : RingValue(1), g.s}, psi) == psi;
}

}  // namespace

TEST_SUITE("stabtrack") {

TEST_CASE("init") {
  const auto t1 = StabilizerTableau::init(1);
  REQUIRE(t1.generators().size() == 1);
  CHECK(t1.generators()[0] == SignedPauli{false, PauliString::single(1, PauliOp::Z)});
  CHECK(StabilizerTableau::init(3).generators().size() == 3);
  CHECK(StabilizerTableau::init(5).nullity() == 0);
  CHECK(StabilizerTableau::init(5).local_nullity() == 0);
  CHECK_THROWS(StabilizerTableau::init(0));
}

TEST_CASE("clifford updates") {
  auto t = StabilizerTableau::init(1);
  t.apply_clifford(GateKind::H, 1);
  CHECK(t.generators()[0] == SignedPauli{false, PauliString::single(1, PauliOp::X)});
  t.apply_clifford(GateKind::S, 1);
  CHECK(t.generators()[0] == SignedPauli{false, PauliString::single(1, PauliOp::Y)});
  auto u = StabilizerTableau::init(3);
  u.apply_clifford(GateKind::H, 2);
  u.apply_clifford(GateKind::CZ, 2, 1);
  CHECK(u.generators().size() == 3);
}

TEST_CASE("T rule") {
  auto t = StabilizerTableau::init(4);
  CHECK(t.apply_t(2) == 0);
  CHECK(t.nullity() == 0);
  t.apply_clifford(GateKind::H, 1);
  CHECK(t.apply_t(1) == 1);
  CHECK(t.generators().size() == 3);
  CHECK(t.nullity() == 1);
}

TEST_CASE("Toffoli rule") {
  auto t = StabilizerTableau::init(3);
  const int d = t.apply_toffoli(3, 2, 1);
  CHECK(d <= 3);
  // the Z row on the target anticommutes with the X component the Toffoli can introduce
  CHECK(d == 1);
  auto u = StabilizerTableau::init(3);
  for (int k = 1; k <= 3; ++k) u.apply_clifford(GateKind::H, k);
  CHECK(u.apply_toffoli(3, 2, 1) <= 3);
}

TEST_CASE("nullity examples") {
  const int n = 5;
  Circuit th;
  th.n_qubits = n;
  for (int k = 1; k <= n; ++k) {
    th.gates.push_back(g1(GateKind::H, k));
    th.gates.push_back(g1(GateKind::T, k));
  }
  const BoundReport r = track(th);
  CHECK(r.nullity == n);
  CHECK(r.limdd_width_bound == 32);

  CHECK(track(testutil::ghz(6)).local_nullity == 6);
  CHECK(track(testutil::ghz(6)).nullity == 0);

  const BoundReport lead = track(parse_qasm(testutil::kLeading));
  CHECK(lead.limdd_width_bound <= 4);
  CHECK(lead.evdd_width_bound <= 8);
  CHECK(lead.closed_form == 3);
  CHECK(lead.h == 3);
  CHECK(lead.t == 2);
  CHECK(lead.cz == 1);

  RandomOptions ro;
  ro.clifford_only = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) CHECK(track(gen_random(6, 40, seed, ro)).limdd_width_bound == 1);
}

TEST_CASE("local nullity after H gates") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    RandomOptions ro;
    ro.max_h = static_cast<int>(seed % 5);
    const BoundReport r = track(gen_random(6, 30, seed, ro));
    CHECK(r.local_nullity <= r.h);
  }
}

TEST_CASE("soundness against the dense oracle") {
  int prefixes = 0;
  for (const auto& c : testutil::corpus(60)) {
    for (bool native : {false, true}) {
      auto tab = StabilizerTableau::init(c.n_qubits);
      std::vector<RingValue> psi(std::size_t{1} << c.n_qubits);
      psi[0] = 1;
      long t = 0, ccx = 0;
      int prev = 0;
      for (const auto& g : tracking_stream(c, native)) {
        tab.apply(g);
        dense_apply(psi, c.n_qubits, g);
        if (g.kind == GateKind::T || g.kind == GateKind::Tdg) ++t;
        if (g.kind == GateKind::CCX) {
          ++ccx;
          REQUIRE(tab.nullity() - prev <= 3);
        }
        prev = tab.nullity();
        REQUIRE(tab.nullity() <= t + 3 * ccx);
        REQUIRE(tab.nullity() >= 0);
        for (const auto& gen : tab.generators()) REQUIRE_MESSAGE(stabilizes(gen, psi), c.name);
        int local = 0;
        for (int k = 1; k <= c.n_qubits; ++k)
          for (PauliOp p : {PauliOp::X, PauliOp::Y, PauliOp::Z})
            if (tab.in_group(PauliString::single(k, p))) ++local;
        REQUIRE(local <= static_cast<int>(tab.generators().size()));
        ++prefixes;
      }
    }
  }
  CHECK(prefixes > 1000);
}

TEST_CASE("trace") {
  const BoundReport r = track(parse_qasm(testutil::kLeading));
  REQUIRE(r.trace.size() == 6);
  CHECK(r.trace.back().limdd_bound == r.limdd_width_bound);
  CHECK(track(parse_qasm(testutil::kLeading), false, false).trace.empty());
}

}
