#ifndef VDWFLUCT_RATFUN_HPP
#define VDWFLUCT_RATFUN_HPP

// Exact univariate rational-function calculus over arbitrary-precision
// rationals (GMP mpq_class). Serves as the reference path for every
// derivative computed with jets and for the closed-form kernels.

#include <gmpxx.h>

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vdwfluct/errors.hpp"
#include "vdwfluct/scalar.hpp"

namespace vdw {

using Rational = mpq_class;

template <>
struct ScalarTraits<mpq_class> {
  static bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
  static double to_double(const mpq_class& q) { return q.get_d(); }
};

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Dense polynomial, coefficients in ascending degree. The zero polynomial
/// has an empty coefficient vector.
template <typename Q = Rational>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Q& constant) : c_{constant} { normalize(); }  // NOLINT(google-explicit-constructor)
  Polynomial(int constant) : Polynomial(Q(constant)) {}          // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Q> coeffs) : c_(std::move(coeffs)) { normalize(); }

  static Polynomial monomial(int degree, const Q& coeff = Q(1)) {
    std::vector<Q> c(static_cast<std::size_t>(degree) + 1, Q(0));
    c.back() = coeff;
    return Polynomial(std::move(c));
  }
  static Polynomial x() { return monomial(1); }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Q>& coefficients() const { return c_; }
  Q coefficient(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(i)] : Q(0);
  }
  Q leading() const { return c_.empty() ? Q(0) : c_.back(); }

  Q operator()(const Q& x) const {
    Q acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Q> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = Q(static_cast<long>(i)) * c_[i];
    return Polynomial(std::move(d));
  }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& q : r.c_) q = -q;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<Q> r(std::max(a.c_.size(), b.c_.size()), Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
    return Polynomial(std::move(r));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Q> r(a.c_.size() + b.c_.size() - 1, Q(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(r));
  }

  Polynomial scaled(const Q& s) const {
    std::vector<Q> r = c_;
    for (auto& q : r) q *= s;
    return Polynomial(std::move(r));
  }

  /// Euclidean division: *this = quotient * divisor + remainder.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw ValidationError("polynomial division by zero");
    std::vector<Q> rem = c_;
    const int dd = divisor.degree();
    const int nd = degree();
    if (nd < dd) return {Polynomial{}, *this};
    std::vector<Q> quo(static_cast<std::size_t>(nd - dd + 1), Q(0));
    const Q lead = divisor.leading();
    for (int k = nd - dd; k >= 0; --k) {
      Q f = rem[static_cast<std::size_t>(k + dd)] / lead;
      quo[static_cast<std::size_t>(k)] = f;
      if (sgn(f) == 0) continue;
      for (int j = 0; j <= dd; ++j) rem[static_cast<std::size_t>(k + j)] -= f * divisor.c_[static_cast<std::size_t>(j)];
    }
    rem.resize(static_cast<std::size_t>(dd));
    return {Polynomial(std::move(quo)), Polynomial(std::move(rem))};
  }

  Polynomial monic() const { return is_zero() ? *this : scaled(Q(1) / leading()); }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      Polynomial r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
    if (p.is_zero()) return os << "0";
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
      const Q& q = p.c_[static_cast<std::size_t>(i)];
      if (sgn(q) == 0) continue;
      if (!first) os << (sgn(q) > 0 ? " + " : " - ");
      else if (sgn(q) < 0) os << "-";
      first = false;
      const bool unit = abs(q) == 1 && i >= 1;
      if (!unit) os << abs(q);
      if (i >= 1) os << (unit ? "x" : "*x");
      if (i >= 2) os << "^" << i;
    }
    return os;
  }

 private:
  void normalize() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
  }

  std::vector<Q> c_;
};

/// Ratio of polynomials kept in canonical form: coprime, monic denominator.
template <typename Q = Rational>
class RationalFunction {
 public:
  using Poly = Polynomial<Q>;

  RationalFunction() : num_(), den_(Q(1)) {}
  RationalFunction(const Q& c) : num_(c), den_(Q(1)) {}     // NOLINT(google-explicit-constructor)
  RationalFunction(int c) : RationalFunction(Q(c)) {}       // NOLINT(google-explicit-constructor)
  RationalFunction(Poly p) : num_(std::move(p)), den_(Q(1)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ValidationError("rational function with zero denominator");
    canonicalize();
  }

  static RationalFunction x() { return RationalFunction(Poly::x()); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Q evaluate(const Q& x) const {
    Q d = den_(x);
    if (sgn(d) == 0) throw SingularityError("rational function evaluated at a pole", x.get_d());
    return num_(x) / d;
  }
  Q operator()(const Q& x) const { return evaluate(x); }

  /// Quotient rule, re-canonicalized.
  RationalFunction differentiate() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RationalFunction differentiate(int times) const {
    RationalFunction r = *this;
    for (int i = 0; i < times; ++i) r = r.differentiate();
    return r;
  }

  RationalFunction operator-() const { return RationalFunction(-num_, den_, canonical_tag{}); }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) throw SingularityError("division by the zero rational function", 0.0);
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
  RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
  RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  friend std::ostream& operator<<(std::ostream& os, const RationalFunction& r) {
    return os << "(" << r.num_ << ") / (" << r.den_ << ")";
  }

 private:
  struct canonical_tag {};
  RationalFunction(Poly num, Poly den, canonical_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void canonicalize() {
    if (num_.is_zero()) {
      den_ = Poly(Q(1));
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    const Q lead = den_.leading();
    if (lead != Q(1)) {
      num_ = num_.scaled(Q(1) / lead);
      den_ = den_.scaled(Q(1) / lead);
    }
  }

  Poly num_;
  Poly den_;
};

template <typename Q>
struct ScalarTraits<RationalFunction<Q>> {
  static bool is_zero(const RationalFunction<Q>& r) { return r.is_zero(); }
  // Only meaningful for constants; used for diagnostics.
  static double to_double(const RationalFunction<Q>& r) {
    return scalar_to_double(r.numerator().coefficient(0)) / scalar_to_double(r.denominator().coefficient(0));
  }
};

/// Exact value of the form coefficient * pi^pi_power.
template <typename Q = Rational>
struct PiScaled {
  Q coefficient;
  int pi_power = 0;

  double to_double() const { return scalar_to_double(coefficient) * std::pow(std::numbers::pi, pi_power); }

  friend bool operator==(const PiScaled& a, const PiScaled& b) {
    return a.coefficient == b.coefficient && (a.pi_power == b.pi_power || sgn(a.coefficient) == 0);
  }
  friend PiScaled operator+(const PiScaled& a, const PiScaled& b) {
    if (a.pi_power != b.pi_power) throw ValidationError("adding values with different powers of pi");
    return {a.coefficient + b.coefficient, a.pi_power};
  }
  friend PiScaled operator-(const PiScaled& a, const PiScaled& b) {
    return a + PiScaled{-b.coefficient, b.pi_power};
  }
  friend PiScaled operator*(const PiScaled& a, const PiScaled& b) {
    return {a.coefficient * b.coefficient, a.pi_power + b.pi_power};
  }
  friend PiScaled operator/(const PiScaled& a, const PiScaled& b) {
    return {a.coefficient / b.coefficient, a.pi_power - b.pi_power};
  }
  friend std::ostream& operator<<(std::ostream& os, const PiScaled& p) {
    os << p.coefficient;
    if (p.pi_power != 0) os << "*pi^" << p.pi_power;
    return os;
  }
};

}  // namespace vdw

#endif  // VDWFLUCT_RATFUN_HPP
