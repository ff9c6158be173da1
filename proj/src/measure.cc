#include "exdd/measure.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace exdd {

constexpr int kSampleDigits = 30;

template <class F>
MeasurementResult<typename F::Scalar> measurement_probability(Store<F>& store, const State<F>& s) {
  if (s.n < 1) throw std::invalid_argument("measurement needs at least one qubit");
  const auto& f = store.field();
  const auto s0 = store.squared_norm(store.follow(s.root, 0));
  const auto s1 = store.squared_norm(store.follow(s.root, 1));
  const auto total = f.add(s0, s1);
  if (f.is_zero(total)) throw ZeroState();
  const auto p0 = f.div(s0, total);
  return {p0, f.sub(f.one(), p0), std::nullopt};
}

template <class F>
MeasurementResult<typename F::Scalar> measure_qubit(Store<F>& store, State<F>& s, int k) {
  if (k < 1 || k > s.n) throw IndexOutOfRange("qubit index out of range");
  if (k == s.n) return measurement_probability(store, s);
  apply_swap(store, s, k, s.n);
  auto r = measurement_probability(store, s);
  apply_swap(store, s, k, s.n);
  return r;
}

int sample_bit(const mpz_class& p0_scaled, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  mpz_class u = 0;
  // three draws of 10 decimal digits each
  for (int i = 0; i < 3; ++i) {
    u *= mpz_class("10000000000");
    std::uniform_int_distribution<std::uint64_t> d(0, 9999999999ULL);
    u += mpz_class(std::to_string(d(rng)));
  }
  return u < p0_scaled ? 0 : 1;
}

namespace {

mpz_class scaled(const RingValue& p) { return scaled_round_real(p, kSampleDigits); }

mpz_class scaled(const FloatValue& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.0f", std::nearbyint(std::clamp(p.real(), 0.0, 1.0) * 1e15));
  return mpz_class(buf) * mpz_class("1000000000000000");
}

}  // namespace

template <class F>
int sample(Store<F>& store, const State<F>& s, std::uint64_t seed) {
  return sample_bit(scaled(measurement_probability(store, s).p0), seed);
}

void collapse_top(FloatStore& store, State<FloatField>& s, int outcome) {
  auto half = store.follow(s.root, outcome);
  const double norm = std::sqrt(store.squared_norm(half).real());
  if (norm <= store.field().tol) throw ZeroState();
  half = store.scale({1.0 / norm, 0.0}, half);
  const auto z = store.zero_edge();
  s.root = outcome == 0 ? store.make_edge(half, z) : store.make_edge(z, half);
}

template MeasurementResult<RingValue> measurement_probability(ExactStore&, const State<ExactField>&);
template MeasurementResult<FloatValue> measurement_probability(FloatStore&, const State<FloatField>&);
template MeasurementResult<RingValue> measure_qubit(ExactStore&, State<ExactField>&, int);
template MeasurementResult<FloatValue> measure_qubit(FloatStore&, State<FloatField>&, int);
template int sample(ExactStore&, const State<ExactField>&, std::uint64_t);
template int sample(FloatStore&, const State<FloatField>&, std::uint64_t);

}  // namespace exdd
