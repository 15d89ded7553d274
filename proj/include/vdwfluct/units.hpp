#ifndef VDWFLUCT_UNITS_HPP
#define VDWFLUCT_UNITS_HPP

// Boundary conversions between laboratory units and the internal system.
//
// Internally everything is expressed in Lorentz-Heaviside natural units
// (hbar = c = k_B = 1) with the angstrom as the unit of length: lengths in
// A, masses and temperatures in 1/A, velocities in units of c, forces in
// 1/A^2, polarizabilities as Lorentz-Heaviside volumes in A^3.

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "vdwfluct/errors.hpp"

namespace vdw {

namespace constants {
inline constexpr double hbar_c_ev_angstrom = 1973.269804;
inline constexpr double boltzmann_ev_per_kelvin = 8.617333e-5;
inline constexpr double hydrogen_mass_ev = 938.783e6;
inline constexpr double bohr_radius_angstrom = 0.529177;
inline constexpr double speed_of_light_m_per_s = 299792458.0;
inline constexpr double joule_per_ev = 1.602176634e-19;
/// Lorentz-Heaviside polarizability per Gaussian polarizability volume.
inline constexpr double lh_per_gaussian_polarizability = 4.0 * std::numbers::pi;
}  // namespace constants

enum class UnitKind { length, mass, polarizability, temperature, velocity, force };
enum class UnitSystem { natural, si, gaussian };

inline UnitKind parse_unit_kind(std::string_view s) {
  if (s == "length") return UnitKind::length;
  if (s == "mass") return UnitKind::mass;
  if (s == "polarizability") return UnitKind::polarizability;
  if (s == "temperature") return UnitKind::temperature;
  if (s == "velocity") return UnitKind::velocity;
  if (s == "force") return UnitKind::force;
  throw UsageError("unknown unit kind '" + std::string(s) + "'");
}

inline UnitSystem parse_unit_system(std::string_view s) {
  if (s == "natural") return UnitSystem::natural;
  if (s == "si") return UnitSystem::si;
  if (s == "gaussian") return UnitSystem::gaussian;
  throw UsageError("unknown unit system '" + std::string(s) + "'");
}

inline const char* to_string(UnitSystem s) {
  switch (s) {
    case UnitSystem::natural: return "natural";
    case UnitSystem::si: return "si";
    case UnitSystem::gaussian: return "gaussian";
  }
  return "?";
}

struct UnitConvention {
  UnitSystem system = UnitSystem::natural;
  double hbar_c = constants::hbar_c_ev_angstrom;       // eV A
  double k_boltzmann = constants::boltzmann_ev_per_kelvin;  // eV / K
  double alpha_factor = constants::lh_per_gaussian_polarizability;

  static UnitConvention natural() { return {}; }
  static UnitConvention si() { return {UnitSystem::si}; }
  static UnitConvention gaussian() { return {UnitSystem::gaussian}; }

  /// Human-readable statement of the polarizability convention.
  static constexpr const char* alpha_convention = "lorentz-heaviside (alpha_LH = 4*pi*alpha_gaussian)";
};

/// Natural-unit amount carried by one unit of `kind` in `conv.system`.
inline double unit_scale(UnitKind kind, const UnitConvention& conv) {
  using namespace constants;
  if (conv.system == UnitSystem::natural) return 1.0;
  const bool si = conv.system == UnitSystem::si;
  const double metre = 1e10;                     // A
  const double length_unit = si ? metre : 1e-2 * metre;
  const double kg_ev = speed_of_light_m_per_s * speed_of_light_m_per_s / joule_per_ev;
  const double mass_unit_ev = si ? kg_ev : 1e-3 * kg_ev;
  switch (kind) {
    case UnitKind::length:
      return length_unit;
    case UnitKind::mass:
      return mass_unit_ev / conv.hbar_c;
    case UnitKind::polarizability:
      return conv.alpha_factor * length_unit * length_unit * length_unit;
    case UnitKind::temperature:
      return conv.k_boltzmann / conv.hbar_c;
    case UnitKind::velocity:
      return si ? 1.0 / speed_of_light_m_per_s : 1e-2 / speed_of_light_m_per_s;
    case UnitKind::force: {
      // N = J/m, dyn = 1e-5 N; expressed as eV/A then divided by hbar c.
      const double newton_ev_per_a = 1e-10 / joule_per_ev;
      return (si ? newton_ev_per_a : 1e-5 * newton_ev_per_a) / conv.hbar_c;
    }
  }
  throw UsageError("unknown unit kind");
}

namespace detail {
inline void check_quantity(double value, UnitKind kind) {
  if (!std::isfinite(value)) throw ValidationError("quantity is not finite");
  const bool must_be_positive = kind == UnitKind::length || kind == UnitKind::mass ||
                                kind == UnitKind::polarizability || kind == UnitKind::temperature;
  if (must_be_positive && !(value > 0.0)) throw ValidationError("physical quantity must be positive");
}
}  // namespace detail

inline double to_natural(double value, UnitKind kind, const UnitConvention& conv) {
  detail::check_quantity(value, kind);
  return value * unit_scale(kind, conv);
}

inline double from_natural(double value, UnitKind kind, const UnitConvention& conv) {
  detail::check_quantity(value, kind);
  return value / unit_scale(kind, conv);
}

inline double to_natural(double value, std::string_view kind, const UnitConvention& conv) {
  return to_natural(value, parse_unit_kind(kind), conv);
}

/// Lorentz-Heaviside polarizability from a Gaussian polarizability volume
/// given in the same length unit.
inline double polarizability_lh_from_gaussian(double alpha_gaussian) {
  detail::check_quantity(alpha_gaussian, UnitKind::polarizability);
  return constants::lh_per_gaussian_polarizability * alpha_gaussian;
}

/// Static polarizability of atomic hydrogen, 4.5 a0^3, as a Gaussian volume in A^3.
inline double hydrogen_polarizability_gaussian() {
  const double a0 = constants::bohr_radius_angstrom;
  return 4.5 * a0 * a0 * a0;
}

/// alpha, m, z of a polarizable particle above a perfectly conducting plate,
/// in internal natural units.
struct PhysicalSetup {
  double alpha = 1.0;
  double mass = 1.0;
  double z = 1.0;

  static PhysicalSetup make(double alpha, double mass, double z) {
    if (!std::isfinite(alpha) || !std::isfinite(mass) || !std::isfinite(z))
      throw ValidationError("setup parameters must be finite");
    if (!(alpha > 0.0)) throw ValidationError("polarizability must be positive");
    if (!(mass > 0.0)) throw ValidationError("mass must be positive");
    if (!(z > 0.0)) throw ValidationError("plate distance must be positive");
    return {alpha, mass, z};
  }

  static PhysicalSetup from_units(double alpha, double mass, double z, const UnitConvention& conv) {
    return make(to_natural(alpha, UnitKind::polarizability, conv), to_natural(mass, UnitKind::mass, conv),
                to_natural(z, UnitKind::length, conv));
  }

  /// Atomic hydrogen at distance z (A), Lorentz-Heaviside polarizability.
  static PhysicalSetup hydrogen(double z_angstrom) {
    return make(polarizability_lh_from_gaussian(hydrogen_polarizability_gaussian()),
                constants::hydrogen_mass_ev / constants::hbar_c_ev_angstrom, z_angstrom);
  }
};

}  // namespace vdw

#endif  // VDWFLUCT_UNITS_HPP
