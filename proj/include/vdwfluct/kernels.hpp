#ifndef VDWFLUCT_KERNELS_HPP
#define VDWFLUCT_KERNELS_HPP

// Closed-form kernels for a polarizable particle at height z above a
// perfectly conducting plate: electric-field two-point functions, the mean
// force, normal-ordered force-force correlations and the cross-term
// building blocks f4, f6 and g.
//
// Every kernel is a template over the scalar type so that one definition
// serves double, Jet<...> (derivatives), mpq_class (exact values) and
// RationalFunction<...> (exact symbolic forms). Functions in namespace
// `scaled` return the kernel multiplied by a fixed power of pi, which keeps
// the exact instantiations purely rational; the wrappers below divide the
// power back out for floating callers.

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "vdwfluct/errors.hpp"
#include "vdwfluct/jet.hpp"
#include "vdwfluct/ratfun.hpp"
#include "vdwfluct/scalar.hpp"
#include "vdwfluct/units.hpp"

namespace vdw {

enum class Component { x, y, z };

inline constexpr std::array<Component, 3> kAllComponents{Component::x, Component::y, Component::z};

inline const char* to_string(Component c) {
  switch (c) {
    case Component::x: return "x";
    case Component::y: return "y";
    case Component::z: return "z";
  }
  return "?";
}

inline Component parse_component(std::string_view s) {
  if (s == "x") return Component::x;
  if (s == "y") return Component::y;
  if (s == "z") return Component::z;
  throw UsageError("unknown component '" + std::string(s) + "'");
}

template <typename S>
struct CrossF {
  S f4;
  S f6;
};

namespace scaled {

/// pi^2 * <:E_k E_k':> for the image (plate) part; D~ uses z + z'.
template <typename S>
S e2pt_image(Component pair, const S& dt, const S& dx, const S& dy, const S& z, const S& zp) {
  const S zz = z + zp;
  const S d = dx * dx + dy * dy + zz * zz - dt * dt;
  if (scalar_is_zero(d)) throw SingularityError("two-point function on the image light cone", scalar_to_double(dt));
  const S d2 = d * d;
  const S d3 = d2 * d;
  const S time_part = S(4) * dt * dt / d3;
  switch (pair) {
    case Component::x: return (S(2) / d2 - S(4) * dx * dx / d3 + time_part) / S(2);
    case Component::y: return (S(2) / d2 - S(4) * dy * dy / d3 + time_part) / S(2);
    case Component::z: return -(S(2) / d2 - S(4) * zz * zz / d3 + time_part) / S(2);
  }
  throw UsageError("unknown component");
}

/// pi^2 * <E_k E_k'>_0 for empty space.
template <typename S>
S e2pt_vacuum(Component pair, const S& dt, const S& dx, const S& dy, const S& dz) {
  const S d = dx * dx + dy * dy + dz * dz - dt * dt;
  if (scalar_is_zero(d)) throw SingularityError("two-point function on the light cone", scalar_to_double(dt));
  const S d2 = d * d;
  const S d3 = d2 * d;
  const S& along = pair == Component::x ? dx : (pair == Component::y ? dy : dz);
  return -(S(2) / d2 - S(4) * along * along / d3 + S(4) * dt * dt / d3) / S(2);
}

/// pi^2 * <E^2> (renormalized) at height z.
template <typename S>
S field_squared(const S& z) {
  const S z2 = z * z;
  return S(3) / (S(16) * z2 * z2);
}

/// pi^2 * <F_z> = -3 alpha / (8 z^5).
template <typename S>
S mean_force_z(const S& alpha, const S& z) {
  const S z2 = z * z;
  return -S(3) * alpha / (S(8) * z2 * z2 * z);
}

inline int force_corr_pole_order(Component c) { return c == Component::z ? 8 : 7; }

/// pi^4 * (T - 2z)^n * C_k(T): the part of the normal-ordered (connected)
/// correlation that is regular at the image-cone pole T = 2z.
template <typename S>
S force_corr_regular(Component c, const S& t, const S& alpha, const S& z) {
  const S t2 = t * t;
  const S z2 = z * z;
  const S a2 = alpha * alpha;
  const S plus = t + S(2) * z;
  if (c == Component::z) {
    const S num = S(5) * t2 * t2 * t2 + S(308) * t2 * t2 * z2 + S(944) * t2 * z2 * z2 + S(1728) * z2 * z2 * z2;
    return S(4) * a2 * num / ipow(plus, 8);
  }
  const S num = S(5) * t2 * t2 + S(16) * t2 * z2 + S(48) * z2 * z2;
  return -S(4) * a2 * num / ipow(plus, 7);
}

/// pi^4 * normal-ordered force correlation at time separation T; the z
/// component is connected (mean-force product subtracted).
template <typename S>
S force_corr(Component c, const S& t, const S& alpha, const S& z) {
  const S minus = t - S(2) * z;
  if (scalar_is_zero(minus) || scalar_is_zero(S(t + S(2) * z)))
    throw SingularityError("force correlation on the image cone |T| = 2z", scalar_to_double(t));
  return force_corr_regular(c, t, alpha, z) / ipow(minus, force_corr_pole_order(c));
}

/// pi^4 * coincidence variances 3 a^2/(256 z^10) and 27 a^2/(256 z^10).
template <typename S>
S coincident_variance(Component c, const S& alpha, const S& z) {
  const S z2 = z * z;
  const S z10 = ipow(z2, 5);
  const S k = c == Component::z ? S(27) : S(3);
  return k * alpha * alpha / (S(256) * z10);
}

/// pi^2 * (f4, f6) at scaled separation u = T / 2z, with the spatial
/// derivatives taken by seeding second-order jets in the separation.
template <typename S>
CrossF<S> cross_f(Component k, const S& u, const S& z) {
  using J = Jet<S, 2>;
  const S t = S(2) * z * u;
  const J jt(t), jz(z), zero(S(0));
  S f4(0);
  S f6(0);
  constexpr std::array<std::array<int, 3>, 3> weights{{{1, 2, 2}, {2, 1, 2}, {2, 2, 1}}};
  const auto& w = weights[static_cast<std::size_t>(k)];
  for (Component i : kAllComponents) {
    J a;
    switch (k) {
      case Component::x: a = -e2pt_image<J>(i, jt, J::variable(S(0)), zero, jz, jz); break;
      case Component::y: a = -e2pt_image<J>(i, jt, zero, J::variable(S(0)), jz, jz); break;
      case Component::z: a = e2pt_image<J>(i, jt, zero, zero, jz, J::variable(z)); break;
    }
    // d^2/ds^2 = 2 * c2; sign of the mixed derivative already applied.
    f4 = f4 + S(2) * a[2];
    f6 = f6 + S(w[static_cast<std::size_t>(i)]) * e2pt_image<S>(i, t, S(0), S(0), z, z);
  }
  return {f4, f6};
}

/// Numerator of g_k over (u+1)^9 z^8, i.e. pi^2 * (u-1)^9 * g_k(u).
template <typename S>
S cross_g_regular(Component k, const S& u, const S& z) {
  const S u2 = u * u;
  const S z2 = z * z;
  const S z8 = z2 * z2 * z2 * z2;
  const S denom = ipow(S(u + S(1)), 9) * z8;
  if (k == Component::z) {
    const S num = S(23) + S(663) * u2 + S(1573) * u2 * u2 + S(429) * u2 * u2 * u2;
    return S(3) * num / (S(8) * denom);
  }
  const S u4 = u2 * u2;
  const S num = S(5) + S(275) * u2 + S(1325) * u4 + S(1041) * u4 * u2 + S(42) * u4 * u4;
  return -S(3) * num / (S(16) * denom);
}

inline constexpr int kCrossPoleOrder = 9;

/// pi^2 * g_k(u) from the closed-form rational expression.
template <typename S>
S cross_g_direct(Component k, const S& u, const S& z) {
  const S minus = u - S(1);
  if (scalar_is_zero(minus) || scalar_is_zero(S(u + S(1))))
    throw SingularityError("cross kernel on the image cone |u| = 1", scalar_to_double(u));
  return cross_g_regular(k, u, z) / ipow(minus, kCrossPoleOrder);
}

/// pi^2 * g_k(u) rebuilt from f4, f6:
///   g = -(1/12) d^4/du^4 [f4 / (2z)^2] + (1/60) d^6/du^6 [f6 / (2z)^4].
template <typename S, int K = kDefaultJetOrder>
S cross_g_derived(Component k, const S& u, const S& z) {
  if constexpr (K < 6) {
    throw ConfigurationError("derived cross kernel needs a jet order of at least 6");
  } else {
    using J = Jet<S, K>;
    if (scalar_is_zero(S(u - S(1))) || scalar_is_zero(S(u + S(1))))
      throw SingularityError("cross kernel on the image cone |u| = 1", scalar_to_double(u));
    const CrossF<J> f = cross_f<J>(k, J::variable(u), J(z));
    const S two_z = S(2) * z;
    const S two_z2 = two_z * two_z;
    return -f.f4.derivative(4) / (S(12) * two_z2) + f.f6.derivative(6) / (S(60) * two_z2 * two_z2);
  }
}

}  // namespace scaled

// ---------------------------------------------------------------------------
// Floating-point interface.

inline constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
inline constexpr double kPi4 = kPi2 * kPi2;

inline double e2pt_image(Component pair, double dt, double dx, double dy, double z, double zp) {
  return scaled::e2pt_image<double>(pair, dt, dx, dy, z, zp) / kPi2;
}

inline double e2pt_vacuum(Component pair, double dt, double dx, double dy, double dz) {
  return scaled::e2pt_vacuum<double>(pair, dt, dx, dy, dz) / kPi2;
}

struct ForceVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct MeanForce {
  ForceVector force;
  double field_squared;  // renormalized <E^2>
};

inline MeanForce mean_force(const PhysicalSetup& s) {
  return {{0.0, 0.0, scaled::mean_force_z(s.alpha, s.z) / kPi2}, scaled::field_squared(s.z) / kPi2};
}

struct CorrelationSample {
  Component component;
  double separation;  // T = t - t'
  double value;
  bool connected;
};

inline CorrelationSample force_corr_no(Component c, double t, const PhysicalSetup& s) {
  return {c, t, scaled::force_corr(c, t, s.alpha, s.z) / kPi4, c == Component::z};
}

struct CoincidentStats {
  double var_x;
  double var_y;
  double var_z;
  double delta;  // var_z / <F_z>^2
};

inline CoincidentStats coincident_force_stats(const PhysicalSetup& s) {
  const double vx = scaled::coincident_variance(Component::x, s.alpha, s.z) / kPi4;
  const double vz = scaled::coincident_variance(Component::z, s.alpha, s.z) / kPi4;
  const double f = mean_force(s).force.z;
  return {vx, vx, vz, vz / (f * f)};
}

inline CrossF<double> cross_f(Component k, double u, const PhysicalSetup& s) {
  if (std::abs(u) == 1.0) throw SingularityError("cross kernel on the image cone |u| = 1", u);
  const auto f = scaled::cross_f<double>(k, u, s.z);
  return {f.f4 / kPi2, f.f6 / kPi2};
}

enum class CrossGMode { direct, derived };

inline double cross_g(Component k, double u, const PhysicalSetup& s, CrossGMode mode = CrossGMode::direct) {
  const double v = mode == CrossGMode::direct ? scaled::cross_g_direct<double>(k, u, s.z)
                                              : scaled::cross_g_derived<double>(k, u, s.z);
  return v / kPi2;
}

// ---------------------------------------------------------------------------
// Exact interface: rational inputs, results tagged with their power of pi.

namespace exact {

inline PiScaled<> mean_force_z(const Rational& alpha, const Rational& z) {
  return {scaled::mean_force_z<Rational>(alpha, z), -2};
}

inline PiScaled<> force_corr(Component c, const Rational& t, const Rational& alpha, const Rational& z) {
  return {scaled::force_corr<Rational>(c, t, alpha, z), -4};
}

inline PiScaled<> coincident_variance(Component c, const Rational& alpha, const Rational& z) {
  return {scaled::coincident_variance<Rational>(c, alpha, z), -4};
}

/// var_z / <F_z>^2, the relative size of the coincidence fluctuations.
inline PiScaled<> coincident_delta(const Rational& alpha, const Rational& z) {
  const PiScaled<> f = mean_force_z(alpha, z);
  return coincident_variance(Component::z, alpha, z) / (f * f);
}

inline PiScaled<> cross_g(Component k, const Rational& u, const Rational& z, CrossGMode mode = CrossGMode::direct) {
  return {mode == CrossGMode::direct ? scaled::cross_g_direct<Rational>(k, u, z)
                                     : scaled::cross_g_derived<Rational>(k, u, z),
          -2};
}

/// pi^4 * C_k(T) as an exact rational function of T.
inline RationalFunction<> force_corr_function(Component c, const Rational& alpha, const Rational& z) {
  using RF = RationalFunction<>;
  return scaled::force_corr<RF>(c, RF::x(), RF(alpha), RF(z));
}

/// pi^2 * g_k(u) as an exact rational function of u.
inline RationalFunction<> cross_g_function(Component k, const Rational& z) {
  using RF = RationalFunction<>;
  return scaled::cross_g_direct<RF>(k, RF::x(), RF(z));
}

}  // namespace exact

}  // namespace vdw

#endif  // VDWFLUCT_KERNELS_HPP
