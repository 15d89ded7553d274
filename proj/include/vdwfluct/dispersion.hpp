#ifndef VDWFLUCT_DISPERSION_HPP
#define VDWFLUCT_DISPERSION_HPP

// Velocity statistics of a polarizable particle released near a perfectly
// conducting plate.
//
// normal term: <:dv_k^2:>(t) = (2/m^2) FP int_0^t (t-T) C_k(T) dT, with the
//   image-cone pole of C_k at T = 2z;
// cross term:  <dv_k^2>_cross(t) = a^2/(pi^2 m^2) [ (t/z) I0(U) - 2 I1(U) ],
//   U = t/2z, I_p(U) = FP int_0^U u^p g_k(u) ln u^2 du, pole of order 9 at u = 1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vdwfluct/errors.hpp"
#include "vdwfluct/kernels.hpp"
#include "vdwfluct/pvquad.hpp"
#include "vdwfluct/ratfun.hpp"
#include "vdwfluct/units.hpp"

namespace vdw {

enum class Term { normal, cross, total };

inline constexpr std::array<Term, 3> kAllTerms{Term::normal, Term::cross, Term::total};

inline const char* to_string(Term t) {
  switch (t) {
    case Term::normal: return "normal";
    case Term::cross: return "cross";
    case Term::total: return "total";
  }
  return "?";
}

inline Term parse_term(std::string_view s) {
  if (s == "normal") return Term::normal;
  if (s == "cross") return Term::cross;
  if (s == "total") return Term::total;
  throw UsageError("unknown term '" + std::string(s) + "'");
}

struct DispersionResult {
  Component component = Component::x;
  Term term = Term::total;
  double time = 0.0;        // meaningless when asymptotic
  bool asymptotic = false;
  double value = 0.0;       // velocity^2 in units of c^2
  double error_estimate = 0.0;
};

struct DispersionOptions {
  double rel_tol = 1e-10;
  int max_panels = 10000;
};

struct VelocityVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Mean velocity after time t under the constant mean force (valid while the
/// displacement stays small compared with z).
inline VelocityVector mean_velocity(double t, const PhysicalSetup& s) {
  if (!std::isfinite(t) || t < 0.0) throw ValidationError("time must be finite and non-negative");
  return {0.0, 0.0, mean_force(s).force.z * t / s.mass};
}

namespace detail {

/// Natural size of every dispersion: alpha^2 / (m^2 z^8).
inline double dispersion_scale(const PhysicalSetup& s) {
  const double z4 = s.z * s.z * s.z * s.z;
  return (s.alpha / s.mass) * (s.alpha / s.mass) / (z4 * z4);
}

inline QuadratureOptions quadrature_options(const DispersionOptions& o, double abs_scale) {
  return {1e-16 * abs_scale, o.rel_tol, o.max_panels};
}

inline void check_time(double t, const PhysicalSetup& s) {
  if (!std::isfinite(t) || !(t > 0.0)) throw ValidationError("time must be finite and positive");
  if (t == 2.0 * s.z) throw ValidationError("t = 2z puts the image-cone pole on the integration endpoint");
}

inline QuadratureResult normal_integral(Component k, double t, const PhysicalSetup& s, const DispersionOptions& o) {
  const double alpha = s.alpha;
  const double z = s.z;
  auto f = [k, t, alpha, z](const auto& tau) {
    using T = std::decay_t<decltype(tau)>;
    return T(2) * (T(t) - tau) * scaled::force_corr_regular<T>(k, tau, T(alpha), T(z)) / T(kPi4);
  };
  const double scale = alpha * alpha / std::pow(z, 9);  // size of (t-T) C near the pole
  return finite_part(make_problem(f, 0.0, t, 2.0 * z, scaled::force_corr_pole_order(k), false,
                                  quadrature_options(o, scale)));
}

}  // namespace detail

struct CrossIntegrals {
  QuadratureResult i0;  // FP int_0^U g_k ln u^2 du
  QuadratureResult i1;  // FP int_0^U u g_k ln u^2 du
};

/// The two log-weighted cross-kernel integrals up to U (U may be +inf).
inline CrossIntegrals cross_integrals(Component k, double upper, const PhysicalSetup& s,
                                      const DispersionOptions& o = {}) {
  if (!(upper > 0.0)) throw ValidationError("cross integral upper limit must be positive");
  if (upper == 1.0) throw ValidationError("cross integral upper limit on the image cone u = 1");
  const double z = s.z;
  auto g0 = [k, z](const auto& u) {
    using T = std::decay_t<decltype(u)>;
    return scaled::cross_g_regular<T>(k, u, T(z)) / T(kPi2);
  };
  auto g1 = [k, z](const auto& u) {
    using T = std::decay_t<decltype(u)>;
    return u * scaled::cross_g_regular<T>(k, u, T(z)) / T(kPi2);
  };
  const double z8 = std::pow(z, 8);
  const QuadratureOptions q = detail::quadrature_options(o, 1.0 / z8);
  return {log_weight_integral(g0, {1.0, scaled::kCrossPoleOrder}, 0.0, upper, q, 10.0),
          log_weight_integral(g1, {1.0, scaled::kCrossPoleOrder}, 0.0, upper, q, 9.0)};
}

/// Finite-time dispersion of one velocity component.
inline DispersionResult dispersion(Component k, Term term, double t, const PhysicalSetup& s,
                                   const DispersionOptions& o = {}) {
  detail::check_time(t, s);
  DispersionResult r{k, term, t, false, 0.0, 0.0};
  const double m2 = s.mass * s.mass;
  if (term == Term::normal || term == Term::total) {
    const QuadratureResult n = detail::normal_integral(k, t, s, o);
    r.value += n.value / m2;
    r.error_estimate += n.error_estimate / m2;
  }
  if (term == Term::cross || term == Term::total) {
    const CrossIntegrals ci = cross_integrals(k, t / (2.0 * s.z), s, o);
    const double pre = s.alpha * s.alpha / (kPi2 * m2);
    const double lead = t / s.z;
    r.value += pre * (lead * ci.i0.value - 2.0 * ci.i1.value);
    r.error_estimate += pre * (lead * ci.i0.error_estimate + 2.0 * ci.i1.error_estimate);
  }
  return r;
}

namespace exact {

/// Rational part of the t -> infinity dispersion in units of
/// alpha^2 / (pi^4 m^2 z^8).
inline Rational asymptote_coefficient(Component k, Term term) {
  const bool z = k == Component::z;
  switch (term) {
    case Term::normal: return z ? make_rational(63, 1280) : make_rational(9, 1280);
    case Term::cross: return z ? make_rational(-497, 480) : make_rational(13, 240);
    case Term::total: return asymptote_coefficient(k, Term::normal) + asymptote_coefficient(k, Term::cross);
  }
  throw UsageError("unknown term");
}

inline PiScaled<> asymptote(Component k, Term term, const Rational& alpha, const Rational& mass, const Rational& z) {
  Rational z8 = z * z;
  z8 *= z8;
  z8 *= z8;
  const Rational factor = alpha * alpha / (mass * mass * z8);
  return {asymptote_coefficient(k, term) * factor, -4};
}

/// <dv_x^2> / |<dv_z^2>| for t -> infinity; setup independent.
inline Rational anisotropy_ratio() {
  return asymptote_coefficient(Component::x, Term::total) / abs(asymptote_coefficient(Component::z, Term::total));
}

}  // namespace exact

/// Closed-form t -> infinity dispersion.
inline DispersionResult asymptote(Component k, Term term, const PhysicalSetup& s) {
  const double v = exact::asymptote_coefficient(k, term).get_d() / kPi4 * detail::dispersion_scale(s);
  return {k, term, std::numeric_limits<double>::infinity(), true, v, 0.0};
}

/// t -> infinity cross term computed by quadrature: -2 a^2/(pi^2 m^2) I1(inf).
/// (The t I0 piece vanishes because I0(inf) = 0.)
inline DispersionResult cross_asymptote_numeric(Component k, const PhysicalSetup& s, const DispersionOptions& o = {}) {
  const auto ci = cross_integrals(k, std::numeric_limits<double>::infinity(), s, o);
  const double pre = s.alpha * s.alpha / (kPi2 * s.mass * s.mass);
  return {k, Term::cross, std::numeric_limits<double>::infinity(), true, -2.0 * pre * ci.i1.value,
          2.0 * pre * ci.i1.error_estimate};
}

/// Extrapolates v(t), v(ratio t) to t -> infinity assuming v(t) = v_inf + O(t^-order).
inline double richardson(double v_t, double v_rt, double ratio = 2.0, double order = 1.0) {
  const double w = std::pow(ratio, order);
  return (w * v_rt - v_t) / (w - 1.0);
}

inline double anisotropy_ratio(const PhysicalSetup& s) {
  return asymptote(Component::x, Term::total, s).value / std::abs(asymptote(Component::z, Term::total, s).value);
}

struct EffectiveTemperature {
  double natural = 0.0;  // k_B T in 1/A
  double kelvin = 0.0;
  std::string convention;
  // T = hydrogen_reference_kelvin * (m_H/m) (1 A/z)^8 (alpha/alpha_H)^2
  double hydrogen_reference_kelvin = 0.0;
  double mass_ratio = 0.0;
  double distance_factor = 0.0;
  double alpha_ratio_squared = 0.0;
};

namespace detail {
inline double temperature_natural(const PhysicalSetup& s) {
  return exact::asymptote_coefficient(Component::x, Term::total).get_d() / kPi4 * s.alpha * s.alpha /
         (s.mass * std::pow(s.z, 8));
}
}  // namespace detail

/// Temperature whose thermal dispersion k_B T / m equals the t -> infinity
/// x dispersion. `conv` fixes k_B, hbar c and the polarizability convention
/// used for the hydrogen reference.
inline EffectiveTemperature effective_temperature(const PhysicalSetup& s,
                                                  const UnitConvention& conv = UnitConvention::si()) {
  EffectiveTemperature r;
  r.natural = detail::temperature_natural(s);
  UnitConvention to_kelvin = conv;
  to_kelvin.system = UnitSystem::si;
  r.kelvin = from_natural(r.natural, UnitKind::temperature, to_kelvin);
  r.convention = std::string("alpha_LH = ") + std::to_string(conv.alpha_factor) + " * alpha_gaussian";
  const double alpha_h = conv.alpha_factor * hydrogen_polarizability_gaussian();
  const PhysicalSetup h =
      PhysicalSetup::make(alpha_h, constants::hydrogen_mass_ev / conv.hbar_c, 1.0);
  r.hydrogen_reference_kelvin = from_natural(detail::temperature_natural(h), UnitKind::temperature, to_kelvin);
  r.mass_ratio = h.mass / s.mass;
  r.distance_factor = std::pow(1.0 / s.z, 8);
  r.alpha_ratio_squared = (s.alpha / alpha_h) * (s.alpha / alpha_h);
  return r;
}

/// Hydrogen at z (A) under a given polarizability factor alpha_LH / alpha_G.
inline double hydrogen_effective_temperature_kelvin(double z_angstrom, double alpha_factor) {
  UnitConvention conv = UnitConvention::si();
  conv.alpha_factor = alpha_factor;
  const PhysicalSetup h = PhysicalSetup::make(alpha_factor * hydrogen_polarizability_gaussian(),
                                              constants::hydrogen_mass_ev / conv.hbar_c, z_angstrom);
  return effective_temperature(h, conv).kelvin;
}

struct QuantumBound {
  double delta_v_f = 0.0;    // largest sqrt|<dv_k^2>| for t -> infinity
  double estimate = 0.0;     // alpha / (pi^2 m z^4)
  double bound_ratio = 0.0;  // (delta_z / z) (alpha / (pi^2 z^3))
  bool small = false;        // bound_ratio < 0.1
  std::string warning;       // set when alpha >= z^3
};

inline QuantumBound quantum_bound(const PhysicalSetup& s, double delta_z) {
  if (!std::isfinite(delta_z) || !(delta_z > 0.0)) throw ValidationError("position uncertainty must be positive");
  if (!(delta_z < s.z)) throw ValidationError("position uncertainty must be smaller than z");
  QuantumBound b;
  for (Component k : kAllComponents)
    b.delta_v_f = std::max(b.delta_v_f, std::sqrt(std::abs(asymptote(k, Term::total, s).value)));
  b.estimate = s.alpha / (kPi2 * s.mass * std::pow(s.z, 4));
  b.bound_ratio = (delta_z / s.z) * (s.alpha / (kPi2 * s.z * s.z * s.z));
  b.small = b.bound_ratio < 0.1;
  if (s.alpha >= s.z * s.z * s.z) b.warning = "alpha >= z^3: the small-polarizability assumption does not hold";
  return b;
}

}  // namespace vdw

#endif  // VDWFLUCT_DISPERSION_HPP
