#ifndef VDWFLUCT_JET_HPP
#define VDWFLUCT_JET_HPP

// Truncated Taylor arithmetic.
//
// A Jet<S, K> carries the first K+1 normalized Taylor coefficients
// c[i] = f^(i)(x0) / i! of a scalar function at a fixed expansion point.
// Arithmetic on jets propagates those coefficients exactly (up to the
// rounding of S), so evaluating any +,-,*,/ expression on a seeded
// variable yields all derivatives through order K at once. S may itself be
// a Jet, which gives mixed partials for functions of two variables.

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <type_traits>
#include <utility>

#include "vdwfluct/errors.hpp"
#include "vdwfluct/scalar.hpp"

namespace vdw {

inline constexpr int kDefaultJetOrder = 10;

template <typename S, int K = kDefaultJetOrder>
class Jet {
  static_assert(K >= 0, "jet order must be non-negative");

 public:
  using scalar_type = S;
  static constexpr int order = K;

  Jet() : c_{} { c_.fill(S(0)); }

  // Lifts a constant; all higher coefficients are zero.
  Jet(const S& value) : Jet() { c_[0] = value; }  // NOLINT(google-explicit-constructor)

  template <typename A>
    requires(std::is_arithmetic_v<A> && !std::is_same_v<A, S>)
  Jet(A value) : Jet(S(value)) {}  // NOLINT(google-explicit-constructor)

  static Jet constant(const S& value) { return Jet(value); }

  /// Seed for the independent variable: value x0, unit first derivative.
  static Jet variable(const S& x0) {
    Jet j(x0);
    if constexpr (K >= 1) j.c_[1] = S(1);
    return j;
  }

  const S& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  S& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

  const S& value() const { return c_[0]; }

  /// k-th derivative at the expansion point, k! * c[k].
  S derivative(int k) const {
    if (k < 0 || k > K) throw ConfigurationError("jet order too small for requested derivative");
    S fact(1);
    for (int i = 2; i <= k; ++i) fact *= S(i);
    return fact * c_[static_cast<std::size_t>(k)];
  }

  const std::array<S, K + 1>& coefficients() const { return c_; }

  Jet operator-() const {
    Jet r;
    for (int i = 0; i <= K; ++i) r[i] = -c_[i];
    return r;
  }
  Jet operator+() const { return *this; }

  Jet& operator+=(const Jet& o) {
    for (int i = 0; i <= K; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i <= K; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    for (int k = 0; k <= K; ++k) {
      S acc(0);
      for (int i = 0; i <= k; ++i) acc += a.c_[i] * b.c_[k - i];
      r.c_[k] = acc;
    }
    return r;
  }

  // q = a / b  <=>  q_k = (a_k - sum_{i<k} q_i b_{k-i}) / b_0
  friend Jet operator/(const Jet& a, const Jet& b) {
    if (scalar_is_zero(b.c_[0])) {
      throw SingularityError("jet division by a vanishing constant term", scalar_to_double(b.c_[0]));
    }
    Jet q;
    for (int k = 0; k <= K; ++k) {
      S acc = a.c_[k];
      for (int i = 0; i < k; ++i) acc -= q.c_[i] * b.c_[k - i];
      q.c_[k] = acc / b.c_[0];
    }
    return q;
  }

  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

 private:
  std::array<S, K + 1> c_;
};

template <typename T>
struct is_jet : std::false_type {};
template <typename S, int K>
struct is_jet<Jet<S, K>> : std::true_type {};
template <typename T>
inline constexpr bool is_jet_v = is_jet<T>::value;

template <typename S, int K>
struct ScalarTraits<Jet<S, K>> {
  static bool is_zero(const Jet<S, K>& j) { return scalar_is_zero(j.value()); }
  static double to_double(const Jet<S, K>& j) { return scalar_to_double(j.value()); }
};

/// Natural logarithm of a jet; defined for floating (or nested floating) S.
template <typename S, int K>
Jet<S, K> log(const Jet<S, K>& a) {
  using std::log;
  Jet<S, K> r;
  r[0] = log(a[0]);
  // b' = a'/a  =>  k b_k a_0 = k a_k - sum_{j=1}^{k-1} j b_j a_{k-j}
  for (int k = 1; k <= K; ++k) {
    S acc = S(k) * a[k];
    for (int j = 1; j < k; ++j) acc -= S(j) * r[j] * a[k - j];
    r[k] = acc / (S(k) * a[0]);
  }
  return r;
}

/// Integer power by repeated squaring; negative exponents go through division.
template <typename T>
T ipow(const T& base, int n) {
  if (n < 0) return T(1) / ipow(base, -n);
  T result(1);
  T b = base;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n > 0) b = b * b;
  }
  return result;
}

/// Full jet of f at x0.
template <int K = kDefaultJetOrder, typename F, typename S>
Jet<S, K> taylor(F&& f, const S& x0) {
  try {
    return Jet<S, K>(std::forward<F>(f)(Jet<S, K>::variable(x0)));
  } catch (const SingularityError&) {
    throw SingularityError("function is singular at the expansion point", scalar_to_double(x0));
  }
}

/// k-th derivative of f at x0 via forward-mode Taylor arithmetic.
template <int K = kDefaultJetOrder, typename F, typename S>
S derivative_of(F&& f, const S& x0, int k) {
  if (k < 0 || k > K) throw ConfigurationError("requested derivative order exceeds jet order");
  return taylor<K>(std::forward<F>(f), x0).derivative(k);
}

}  // namespace vdw

#endif  // VDWFLUCT_JET_HPP
