#include "exdd/coeff.hpp"

#include <cmath>
#include <cstring>
#include <functional>

namespace exdd {

namespace {

inline void mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

mpz_class pow2(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, k);
  return r;
}

mpz_class pow10(unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
  return r;
}

void append_term(std::string& out, const Fraction& f, const char* suffix) {
  if (sgn(f) == 0) return;
  Fraction mag = abs(f);
  std::string body = mag.get_str();
  if (suffix[0] != '\0') body += suffix;
  if (out.empty()) {
    out = (sgn(f) < 0 ? "-" : "") + body;
  } else {
    out += sgn(f) < 0 ? " - " : " + ";
    out += body;
  }
}

// floor(B * sqrt(2) * mult) for integer B, mult in {1, 2}
mpz_class floor_sqrt2_times(const mpz_class& B, int mult) {
  if (sgn(B) == 0) return 0;
  mpz_class sq = B * B * 2 * mult * mult;
  mpz_class s = sqrt(sq);  // floor; never exact since sqrt2 is irrational
  if (sgn(B) > 0) return s;
  return -s - 1;
}

std::string format_scaled(const mpz_class& N, int digits) {
  std::string s = mpz_class(abs(N)).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sgn(N) < 0) s.insert(0, "-");
  return s;
}

}  // namespace

RingValue RingValue::i_power(int e) {
  switch (((e % 4) + 4) % 4) {
    case 0: return 1;
    case 1: return {0, 0, 1, 0};
    case 2: return -1;
    default: return {0, 0, -1, 0};
  }
}

RingValue RingValue::omega_power(int k) {
  const Fraction h(1, 2);
  switch (((k % 8) + 8) % 8) {
    case 0: return 1;
    case 1: return {0, h, 0, h};
    case 2: return {0, 0, 1, 0};
    case 3: return {0, -h, 0, h};
    case 4: return -1;
    case 5: return {0, -h, 0, -h};
    case 6: return {0, 0, -1, 0};
    default: return {0, h, 0, -h};
  }
}

RingValue operator+(const RingValue& x, const RingValue& y) {
  RingValue r;
  r.a = x.a + y.a;
  r.b = x.b + y.b;
  r.c = x.c + y.c;
  r.d = x.d + y.d;
  return r;
}

RingValue operator-(const RingValue& x, const RingValue& y) {
  RingValue r;
  r.a = x.a - y.a;
  r.b = x.b - y.b;
  r.c = x.c - y.c;
  r.d = x.d - y.d;
  return r;
}

RingValue operator*(const RingValue& x, const RingValue& y) {
  RingValue r;
  r.a = x.a * y.a + 2 * x.b * y.b - x.c * y.c - 2 * x.d * y.d;
  r.b = x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c;
  r.c = x.a * y.c + x.c * y.a + 2 * x.b * y.d + 2 * x.d * y.b;
  r.d = x.a * y.d + x.d * y.a + x.b * y.c + x.c * y.b;
  return r;
}

RingValue operator/(const RingValue& x, const RingValue& y) {
  if (y.is_zero()) throw DivisionByZero();
  RingValue yc = conj(y);
  RingValue num = x * yc;
  RingValue den = y * yc;  // p + q*sqrt2
  RingValue sc{den.a, -den.b, 0, 0};
  num = num * sc;
  Fraction q = den.a * den.a - 2 * den.b * den.b;
  num.a /= q;
  num.b /= q;
  num.c /= q;
  num.d /= q;
  return num;
}

std::complex<double> RingValue::to_complex() const {
  return {a.get_d() + b.get_d() * M_SQRT2, c.get_d() + d.get_d() * M_SQRT2};
}

RingValue add(const RingValue& x, const RingValue& y) { return x + y; }
RingValue sub(const RingValue& x, const RingValue& y) { return x - y; }
RingValue mul(const RingValue& x, const RingValue& y) { return x * y; }
RingValue div(const RingValue& x, const RingValue& y) { return x / y; }
RingValue conj(const RingValue& x) { return {x.a, x.b, -x.c, -x.d}; }
RingValue abs2(const RingValue& x) { return x * conj(x); }
RingValue omega_power(int k) { return RingValue::omega_power(k); }

int compare(const RingValue& x, const RingValue& y) {
  if (int r = cmp(x.a, y.a)) return r < 0 ? -1 : 1;
  if (int r = cmp(x.b, y.b)) return r < 0 ? -1 : 1;
  if (int r = cmp(x.c, y.c)) return r < 0 ? -1 : 1;
  if (int r = cmp(x.d, y.d)) return r < 0 ? -1 : 1;
  return 0;
}

std::size_t hash_value(const mpz_class& z) {
  std::size_t h = static_cast<std::size_t>(sgn(z) + 1);
  const std::size_t n = mpz_size(z.get_mpz_t());
  for (std::size_t i = 0; i < n; ++i) mix(h, static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)));
  return h;
}

std::size_t hash_value(const RingValue& x) {
  std::size_t h = 0;
  for (const Fraction* f : {&x.a, &x.b, &x.c, &x.d}) {
    mix(h, hash_value(f->get_num()));
    mix(h, hash_value(f->get_den()));
  }
  return h;
}

bool in_Rk(const RingValue& x, unsigned k) {
  const mpz_class bound = pow2(k);
  for (const Fraction* f : {&x.a, &x.b, &x.c, &x.d}) {
    if (abs(f->get_num()) > bound || f->get_den() > bound) return false;
  }
  return true;
}

bool in_Qnt(const RingValue& x, long n, long t) {
  if (t < 0 || n < 0) return false;
  Fraction l, m, l2, m2;
  if (t % 2 == 0) {
    const mpz_class s = pow2(t / 2);
    l = x.a * s;
    m = x.b * s;
    l2 = x.c * s;
    m2 = x.d * s;
  } else {
    const mpz_class s = pow2((t - 1) / 2);
    l = x.b * s * 2;
    m = x.a * s;
    l2 = x.d * s * 2;
    m2 = x.c * s;
  }
  for (const Fraction* f : {&l, &m, &l2, &m2}) {
    if (f->get_den() != 1) return false;
  }
  if (t == 0) {
    if (sgn(m) != 0 || sgn(m2) != 0) return false;
  } else {
    const mpz_class mb = pow2(n + t - 1);
    if (abs(m.get_num()) > mb || abs(m2.get_num()) > mb) return false;
  }
  const mpz_class lb = pow2(n + t);
  return abs(l.get_num()) <= lb && abs(l2.get_num()) <= lb;
}

unsigned bit_size(const RingValue& x) {
  std::size_t best = 1;
  for (const Fraction* f : {&x.a, &x.b, &x.c, &x.d}) {
    best = std::max(best, mpz_sizeinbase(f->get_num_mpz_t(), 2));
    best = std::max(best, mpz_sizeinbase(f->get_den_mpz_t(), 2));
  }
  return static_cast<unsigned>(best);
}

std::string render(const RingValue& x) {
  std::string out;
  append_term(out, x.a, "");
  append_term(out, x.b, "*sqrt2");
  append_term(out, x.c, "*i");
  append_term(out, x.d, "*i*sqrt2");
  return out.empty() ? "0" : out;
}

namespace {

mpz_class round_half_even(const Fraction& a, const Fraction& b, int digits) {
  const mpz_class scale = pow10(digits);
  const mpz_class A = a.get_num() * b.get_den() * scale;
  const mpz_class B = b.get_num() * a.get_den() * scale;
  const mpz_class Q = a.get_den() * b.get_den();
  mpz_class F;
  if (sgn(B) == 0) {
    mpz_fdiv_q(F.get_mpz_t(), A.get_mpz_t(), Q.get_mpz_t());
    const mpz_class twice_rem = 2 * (A - F * Q);
    const int c = cmp(twice_rem, Q);
    if (c > 0 || (c == 0 && mpz_odd_p(F.get_mpz_t()))) F += 1;
    return F;
  }
  const mpz_class W = A + floor_sqrt2_times(B, 1);
  mpz_fdiv_q(F.get_mpz_t(), W.get_mpz_t(), Q.get_mpz_t());
  const mpz_class W2 = 2 * A + floor_sqrt2_times(B, 2);
  if (W2 >= (2 * F + 1) * Q) F += 1;
  return F;
}

}  // namespace

mpz_class scaled_round_real(const RingValue& x, int digits) {
  return round_half_even(x.a, x.b, digits);
}

std::string decimal_real(const Fraction& a, const Fraction& b, int digits) {
  return format_scaled(round_half_even(a, b, digits), digits);
}

std::string render_decimal(const RingValue& x, int digits) {
  std::string re = decimal_real(x.a, x.b, digits);
  if (x.is_real()) return re;
  const mpz_class im = round_half_even(x.c, x.d, digits);
  return re + (sgn(im) < 0 ? " - " : " + ") + format_scaled(abs(im), digits) + "i";
}

bool float_equal(const FloatValue& x, const FloatValue& y, const CoeffPolicy& policy) {
  return std::abs(x - y) <= policy.tolerance;
}

std::size_t float_hash(const FloatValue& x, double tolerance) {
  std::size_t h = 0;
  for (double v : {x.real(), x.imag()}) {
    if (tolerance > 0) {
      mix(h, std::hash<long long>{}(static_cast<long long>(std::floor(v / tolerance))));
    } else {
      if (v == 0.0) v = 0.0;  // fold -0.0
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      mix(h, std::hash<std::uint64_t>{}(bits));
    }
  }
  return h;
}

int ExactField::unit_phase(const Scalar& x) const {
  if (!x.is_zero() && sgn(x.b) == 0 && sgn(x.d) == 0) {
    if (x == RingValue(1)) return 0;
    if (x == RingValue::i_power(1)) return 1;
    if (x == RingValue(-1)) return 2;
    if (x == RingValue::i_power(3)) return 3;
  }
  return -1;
}

int FloatField::compare(const Scalar& x, const Scalar& y) const {
  if (std::abs(x.real() - y.real()) > tol) return x.real() < y.real() ? -1 : 1;
  if (std::abs(x.imag() - y.imag()) > tol) return x.imag() < y.imag() ? -1 : 1;
  return 0;
}

FloatField::Scalar FloatField::div(const Scalar& x, const Scalar& y) const {
  if (y == Scalar(0.0, 0.0)) throw DivisionByZero();
  return x / y;
}

FloatField::Scalar FloatField::i_power(int e) const {
  switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

FloatField::Scalar FloatField::omega_power(int k) const {
  const double h = M_SQRT1_2;
  switch (((k % 8) + 8) % 8) {
    case 0: return {1.0, 0.0};
    case 1: return {h, h};
    case 2: return {0.0, 1.0};
    case 3: return {-h, h};
    case 4: return {-1.0, 0.0};
    case 5: return {-h, -h};
    case 6: return {0.0, -1.0};
    default: return {h, -h};
  }
}

int FloatField::unit_phase(const Scalar& x) const {
  for (int e = 0; e < 4; ++e) {
    if (equal(x, i_power(e))) return e;
  }
  return -1;
}

}  // namespace exdd
