#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace exdd {

using Fraction = mpq_class;

struct DivisionByZero : std::domain_error {
  DivisionByZero() : std::domain_error("division by zero") {}
};

// a + b*sqrt2 + c*i + d*i*sqrt2, all four fractions reduced.
class RingValue {
 public:
  Fraction a, b, c, d;

  RingValue() : a(0), b(0), c(0), d(0) {}
  RingValue(long v) : a(v), b(0), c(0), d(0) {}  // NOLINT
  RingValue(Fraction a_, Fraction b_, Fraction c_, Fraction d_)
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
    a.canonicalize(); b.canonicalize(); c.canonicalize(); d.canonicalize();
  }

  static RingValue sqrt2() { return {0, 1, 0, 0}; }
  static RingValue inv_sqrt2() { return {0, Fraction(1, 2), 0, 0}; }
  static RingValue imag_unit() { return {0, 0, 1, 0}; }
  static RingValue i_power(int e);
  static RingValue omega_power(int k);

  bool is_zero() const { return sgn(a) == 0 && sgn(b) == 0 && sgn(c) == 0 && sgn(d) == 0; }
  bool is_real() const { return sgn(c) == 0 && sgn(d) == 0; }

  friend bool operator==(const RingValue& x, const RingValue& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
  friend RingValue operator+(const RingValue& x, const RingValue& y);
  friend RingValue operator-(const RingValue& x, const RingValue& y);
  friend RingValue operator*(const RingValue& x, const RingValue& y);
  friend RingValue operator/(const RingValue& x, const RingValue& y);
  RingValue operator-() const { return {-a, -b, -c, -d}; }

  std::complex<double> to_complex() const;
};

RingValue add(const RingValue& x, const RingValue& y);
RingValue sub(const RingValue& x, const RingValue& y);
RingValue mul(const RingValue& x, const RingValue& y);
RingValue div(const RingValue& x, const RingValue& y);
RingValue conj(const RingValue& x);
RingValue abs2(const RingValue& x);
RingValue omega_power(int k);

// lexicographic on (a, b, c, d)
int compare(const RingValue& x, const RingValue& y);
std::size_t hash_value(const RingValue& x);
std::size_t hash_value(const mpz_class& z);

bool in_Rk(const RingValue& x, unsigned k);
bool in_Qnt(const RingValue& x, long n, long t);
unsigned bit_size(const RingValue& x);

std::string render(const RingValue& x);
// round-half-even, exact
std::string render_decimal(const RingValue& x, int digits);
std::string decimal_real(const Fraction& a, const Fraction& b, int digits);
// round(x * 10^digits) for the real part, exact
mpz_class scaled_round_real(const RingValue& x, int digits);

using FloatValue = std::complex<double>;

enum class Backend { Exact, Float };

struct CoeffPolicy {
  Backend backend = Backend::Exact;
  double tolerance = 0.0;

  static CoeffPolicy exact() { return {}; }
  static CoeffPolicy floating(double tol = 1e-14) { return {Backend::Float, tol}; }
};

bool float_equal(const FloatValue& x, const FloatValue& y, const CoeffPolicy& policy);
std::size_t float_hash(const FloatValue& x, double tolerance);

// Coefficient fields used by the diagram store.
struct ExactField {
  using Scalar = RingValue;
  static constexpr bool kIsFloat = false;

  Scalar zero() const { return {}; }
  Scalar one() const { return 1; }
  bool is_zero(const Scalar& x) const { return x.is_zero(); }
  bool equal(const Scalar& x, const Scalar& y) const { return x == y; }
  int compare(const Scalar& x, const Scalar& y) const { return exdd::compare(x, y); }
  std::size_t hash(const Scalar& x) const { return hash_value(x); }
  Scalar add(const Scalar& x, const Scalar& y) const { return x + y; }
  Scalar sub(const Scalar& x, const Scalar& y) const { return x - y; }
  Scalar mul(const Scalar& x, const Scalar& y) const { return x * y; }
  Scalar div(const Scalar& x, const Scalar& y) const { return x / y; }
  Scalar neg(const Scalar& x) const { return -x; }
  Scalar abs2(const Scalar& x) const { return exdd::abs2(x); }
  Scalar i_power(int e) const { return RingValue::i_power(e); }
  Scalar omega_power(int k) const { return exdd::omega_power(k); }
  Scalar inv_sqrt2() const { return RingValue::inv_sqrt2(); }
  Scalar half() const { return {Fraction(1, 2), 0, 0, 0}; }
  std::complex<double> to_complex(const Scalar& x) const { return x.to_complex(); }
  // x == i^e for some e; returns e or -1
  int unit_phase(const Scalar& x) const;
};

struct FloatField {
  using Scalar = FloatValue;
  static constexpr bool kIsFloat = true;
  double tol = 1e-14;

  Scalar zero() const { return {0.0, 0.0}; }
  Scalar one() const { return {1.0, 0.0}; }
  bool is_zero(const Scalar& x) const { return std::abs(x) <= tol; }
  bool equal(const Scalar& x, const Scalar& y) const { return std::abs(x - y) <= tol; }
  int compare(const Scalar& x, const Scalar& y) const;
  std::size_t hash(const Scalar& x) const { return float_hash(x, tol); }
  Scalar add(const Scalar& x, const Scalar& y) const { return x + y; }
  Scalar sub(const Scalar& x, const Scalar& y) const { return x - y; }
  Scalar mul(const Scalar& x, const Scalar& y) const { return x * y; }
  Scalar div(const Scalar& x, const Scalar& y) const;
  Scalar neg(const Scalar& x) const { return -x; }
  Scalar abs2(const Scalar& x) const { return {std::norm(x), 0.0}; }
  Scalar i_power(int e) const;
  Scalar omega_power(int k) const;
  Scalar inv_sqrt2() const { return {0.70710678118654752440, 0.0}; }
  Scalar half() const { return {0.5, 0.0}; }
  std::complex<double> to_complex(const Scalar& x) const { return x; }
  int unit_phase(const Scalar& x) const;
};

}  // namespace exdd
