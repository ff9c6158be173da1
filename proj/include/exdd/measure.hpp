#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "exdd/gates.hpp"

namespace exdd {

struct ZeroState : std::domain_error {
  ZeroState() : std::domain_error("state has zero norm") {}
};

template <class Scalar>
struct MeasurementResult {
  Scalar p0;
  Scalar p1;
  std::optional<int> sampled_outcome;
};

// Probability of reading 0 on the top qubit.
template <class F>
MeasurementResult<typename F::Scalar> measurement_probability(Store<F>& store, const State<F>& s);

// Same for qubit k, via SWAP to the top and back.
template <class F>
MeasurementResult<typename F::Scalar> measure_qubit(Store<F>& store, State<F>& s, int k);

// 0 iff a seeded 30-digit uniform U satisfies U < round(p0 * 10^30)
int sample_bit(const mpz_class& p0_scaled, std::uint64_t seed);

template <class F>
int sample(Store<F>& store, const State<F>& s, std::uint64_t seed);

// float backend only: project the top qubit onto `outcome` and renormalize
void collapse_top(FloatStore& store, State<FloatField>& s, int outcome);

}  // namespace exdd
