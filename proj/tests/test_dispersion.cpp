#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "vdwfluct/dispersion.hpp"

namespace {

using vdw::Component;
using vdw::Rational;
using vdw::Term;
using vdw::kPi2;
using vdw::kPi4;

Rational q(long n, long d = 1) { return vdw::make_rational(n, d); }
const vdw::PhysicalSetup kUnit = vdw::PhysicalSetup::make(1.0, 1.0, 1.0);

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

TEST(MeanVelocity, ConstantForceIntegral) {
  const auto v0 = vdw::mean_velocity(0.0, kUnit);
  EXPECT_EQ(v0.z, 0.0);
  const auto v1 = vdw::mean_velocity(1.0, kUnit);
  EXPECT_NEAR(v1.z, -3.0 / (8 * kPi2), 1e-15);
  EXPECT_EQ(v1.x, 0.0);
  EXPECT_EQ(vdw::mean_velocity(2.0, kUnit).z, 2.0 * v1.z);
  EXPECT_THROW(vdw::mean_velocity(-1.0, kUnit), vdw::ValidationError);
}

// Exact symbolic evaluation of (2/m^2) FP int_0^t (t-T) C_k(T) dT at
// alpha = m = z = 1 (tests/oracle/gen_reference.py).
struct NormalFrozen {
  double t;
  double x;
  double z;
};
constexpr NormalFrozen kNormal[] = {
    {1, 1.96938000557751421684290280359e-4, 2.04689733186519607624527271510e-3},
    {3, 5.40664120125413769264899519373e-5, 6.73748514643085168267645275730e-4},
    {10, 7.21826174567219713708977866473e-5, 5.05278914355784444080452220824e-4},
    {20, 7.21826874937286329386395885486e-5, 5.05278814356472449750656541515e-4},
    {40, 7.21826877273677796696479553716e-5, 5.05278814098648636568310291660e-4},
};

TEST(Dispersion, NormalTermFrozenValues) {
  for (const auto& f : kNormal) {
    const auto x = vdw::dispersion(Component::x, Term::normal, f.t, kUnit);
    const auto z = vdw::dispersion(Component::z, Term::normal, f.t, kUnit);
    EXPECT_LT(rel(x.value, f.x), 1e-9) << "t=" << f.t;
    EXPECT_LT(rel(z.value, f.z), 1e-9) << "t=" << f.t;
    EXPECT_LE(std::abs(x.value - f.x), x.error_estimate);
    EXPECT_LE(std::abs(z.value - f.z), z.error_estimate);
  }
}

TEST(Dispersion, CrossTermFrozenValues) {
  // (I0, I1) at U = 5 and U = 1.25 for z = 1.
  struct Row {
    Component c;
    double u, i0, i1;
  };
  const Row rows[] = {
      {Component::x, 5.0, 3.882675855185058512888e-7, -2.74195289394900190244512085e-3},
      {Component::x, 1.25, 416.8982468737575379497632, 538.0955302796900372682440},
      {Component::z, 5.0, -1.582166505267144151661e-7, 0.05245395214932655458300258909832},
      {Component::z, 1.25, -672.6263319309757588087448, -867.1970551046747976070026},
  };
  for (const auto& r : rows) {
    const double t = 2.0 * r.u;
    const double expected = (t * r.i0 - 2.0 * r.i1) / kPi2;
    const double got = vdw::dispersion(r.c, Term::cross, t, kUnit).value;
    EXPECT_NEAR(got, expected, 1e-9 * std::max(std::abs(expected), t * std::abs(r.i0) / kPi2))
        << vdw::to_string(r.c) << " t=" << t;
  }
}

TEST(Dispersion, ShortTimesUsePlainQuadrature) {
  // t < 2z: the pole lies outside [0, t].
  const double t = 1.5;
  auto integrand = [&](double tau) { return 2.0 * (t - tau) * vdw::force_corr_no(Component::z, tau, kUnit).value; };
  const auto plain = vdw::integrate(integrand, 0.0, t, {0.0, 1e-14, 10000});
  EXPECT_LT(rel(vdw::dispersion(Component::z, Term::normal, t, kUnit).value, plain.value), 1e-12);
}

TEST(Dispersion, RejectsBadTimes) {
  EXPECT_THROW(vdw::dispersion(Component::x, Term::total, 0.0, kUnit), vdw::ValidationError);
  EXPECT_THROW(vdw::dispersion(Component::x, Term::total, -3.0, kUnit), vdw::ValidationError);
  EXPECT_THROW(vdw::dispersion(Component::x, Term::normal, 2.0, kUnit), vdw::ValidationError);
  EXPECT_THROW(vdw::dispersion(Component::z, Term::cross, 2.0, kUnit), vdw::ValidationError);
}

TEST(Dispersion, LongTimeMatchesClosedForms) {
  const double t = 1000.0;
  EXPECT_LT(rel(vdw::dispersion(Component::x, Term::normal, t, kUnit).value, 9.0 / (1280 * kPi4)), 0.01);
  EXPECT_LT(rel(vdw::dispersion(Component::z, Term::cross, t, kUnit).value, -497.0 / (480 * kPi4)), 0.01);
}

TEST(Dispersion, TotalIsNormalPlusCross) {
  for (double t : {1.0, 7.0, 300.0}) {
    for (Component c : vdw::kAllComponents) {
      const auto n = vdw::dispersion(c, Term::normal, t, kUnit);
      const auto x = vdw::dispersion(c, Term::cross, t, kUnit);
      const auto tot = vdw::dispersion(c, Term::total, t, kUnit);
      EXPECT_EQ(tot.value, n.value + x.value);
      EXPECT_NEAR(tot.error_estimate, n.error_estimate + x.error_estimate, 1e-15 * tot.error_estimate);
    }
  }
}

TEST(Dispersion, XYDegeneracy) {
  const auto s = vdw::PhysicalSetup::make(0.3, 2.0, 1.7);
  for (double t : {0.5, 9.0, 120.0})
    for (Term term : vdw::kAllTerms)
      EXPECT_EQ(vdw::dispersion(Component::x, term, t, s).value, vdw::dispersion(Component::y, term, t, s).value);
}

TEST(Dispersion, FiniteTimeCorrectionFallsFasterThanAnyLowPower) {
  // The remainder is int_t^inf (T-t) C(T) dT ~ t^-8; measured where it is
  // still above rounding.
  const double a = vdw::asymptote(Component::x, Term::normal, kUnit).value;
  const double e1 = std::abs(vdw::dispersion(Component::x, Term::normal, 8.0, kUnit).value - a);
  const double e2 = std::abs(vdw::dispersion(Component::x, Term::normal, 16.0, kUnit).value - a);
  const double slope = std::log(e2 / e1) / std::log(2.0);
  EXPECT_GT(slope, -9.0);
  EXPECT_LT(slope, -7.0);
}

TEST(Dispersion, RichardsonExtrapolation) {
  for (Component c : {Component::x, Component::z}) {
    for (Term term : {Term::normal, Term::cross}) {
      const double v1 = vdw::dispersion(c, term, 1000.0, kUnit).value;
      const double v2 = vdw::dispersion(c, term, 2000.0, kUnit).value;
      const double a = vdw::asymptote(c, term, kUnit).value;
      EXPECT_LT(rel(vdw::richardson(v1, v2), a), 1e-6);
    }
  }
  EXPECT_DOUBLE_EQ(vdw::richardson(3.0, 2.0), 1.0);
}

TEST(CrossIntegrals, TimeCoefficientVanishes) {
  double previous = std::numeric_limits<double>::infinity();
  for (double u : {2.0, 3.0, 5.0, 10.0}) {
    const double i0 = std::abs(vdw::cross_integrals(Component::x, u, kUnit).i0.value);
    EXPECT_LT(i0, previous) << "U=" << u;
    previous = i0;
  }
  const double inf = std::numeric_limits<double>::infinity();
  for (Component c : {Component::x, Component::z})
    EXPECT_NEAR(vdw::cross_integrals(c, inf, kUnit).i0.value, 0.0, 1e-9);
}

TEST(CrossIntegrals, NumericAsymptote) {
  for (Component c : vdw::kAllComponents) {
    const auto r = vdw::cross_asymptote_numeric(c, kUnit);
    EXPECT_LT(rel(r.value, vdw::asymptote(c, Term::cross, kUnit).value), 1e-8);
    EXPECT_TRUE(r.asymptotic);
  }
}

TEST(Asymptote, ClosedForms) {
  EXPECT_NEAR(vdw::asymptote(Component::x, Term::total, kUnit).value, 6.2826e-4, 1e-8);
  EXPECT_NEAR(vdw::asymptote(Component::z, Term::total, kUnit).value, -1.01243e-2, 1e-7);
  EXPECT_EQ(vdw::exact::asymptote_coefficient(Component::x, Term::total), q(47, 768));
  EXPECT_EQ(vdw::exact::asymptote_coefficient(Component::z, Term::total), q(-3787, 3840));
  EXPECT_EQ(vdw::exact::asymptote_coefficient(Component::y, Term::cross), q(13, 240));
}

TEST(Asymptote, RatiosAndSigns) {
  using vdw::exact::asymptote_coefficient;
  EXPECT_EQ(asymptote_coefficient(Component::x, Term::cross) / asymptote_coefficient(Component::x, Term::normal),
            q(16640, 2160));
  EXPECT_EQ(asymptote_coefficient(Component::z, Term::cross) / asymptote_coefficient(Component::z, Term::normal),
            q(-636160, 30240));
  for (Component c : vdw::kAllComponents) EXPECT_GT(sgn(asymptote_coefficient(c, Term::normal)), 0);
  EXPECT_LT(sgn(asymptote_coefficient(Component::z, Term::cross)), 0);
  EXPECT_LT(sgn(asymptote_coefficient(Component::z, Term::total)), 0);
}

TEST(Asymptote, Scaling) {
  const auto big = vdw::PhysicalSetup::make(2.0, 3.0, 2.0);
  for (Component c : vdw::kAllComponents)
    for (Term term : vdw::kAllTerms) {
      const double ratio = vdw::asymptote(c, term, big).value / vdw::asymptote(c, term, kUnit).value;
      EXPECT_NEAR(ratio, 4.0 / (9.0 * 256.0), 1e-15);
    }
  const auto e = vdw::exact::asymptote(Component::z, Term::total, q(2), q(3), q(2));
  EXPECT_EQ(e.coefficient, q(-3787, 3840) * q(4, 9 * 256));
  EXPECT_EQ(e.pi_power, -4);
}

TEST(Anisotropy, ExactAndSetupIndependent) {
  EXPECT_EQ(vdw::exact::anisotropy_ratio(), q(235, 3787));
  for (const auto& s : {kUnit, vdw::PhysicalSetup::make(0.1, 40.0, 3.0)})
    EXPECT_NEAR(vdw::anisotropy_ratio(s), 235.0 / 3787.0, 1e-15);
  EXPECT_LT(rel(vdw::anisotropy_ratio(kUnit), 0.06), 0.05);
}

TEST(EffectiveTemperature, NaturalUnitsAndScaling) {
  const auto t1 = vdw::effective_temperature(kUnit);
  EXPECT_NEAR(t1.natural, 47.0 / (768 * kPi4), 1e-18);
  const auto t2 = vdw::effective_temperature(vdw::PhysicalSetup::make(1.0, 1.0, 2.0));
  EXPECT_NEAR(t2.natural, t1.natural / 256.0, 1e-20);
  EXPECT_GT(t1.kelvin, 0.0);
}

TEST(EffectiveTemperature, HydrogenConventionBand) {
  const double lh = vdw::hydrogen_effective_temperature_kelvin(1.0, 4.0 * std::numbers::pi);
  const double gaussian = vdw::hydrogen_effective_temperature_kelvin(1.0, 1.0);
  EXPECT_NEAR(lh, 2.12, 0.01);
  EXPECT_NEAR(gaussian, 0.0134, 0.0001);
  EXPECT_GE(gaussian, 0.013);
  EXPECT_LE(lh, 2.2);
  const auto h = vdw::effective_temperature(vdw::PhysicalSetup::hydrogen(1.0));
  EXPECT_NEAR(h.kelvin, lh, 1e-12 * lh);
  EXPECT_NEAR(h.hydrogen_reference_kelvin, lh, 1e-12 * lh);
  EXPECT_NEAR(h.mass_ratio * h.distance_factor * h.alpha_ratio_squared, 1.0, 1e-14);
}

TEST(QuantumBound, Examples) {
  const auto b = vdw::quantum_bound(kUnit, 0.1);
  EXPECT_NEAR(b.delta_v_f, std::sqrt(3787.0 / 3840.0) / kPi2, 1e-15);
  EXPECT_NEAR(b.delta_v_f, 0.1006, 1e-4);
  EXPECT_NEAR(b.estimate, 1.0 / kPi2, 1e-15);
  EXPECT_NEAR(b.bound_ratio, 0.1 / kPi2, 1e-16);
  EXPECT_TRUE(b.small);
  EXPECT_FALSE(b.warning.empty());  // alpha = z^3
  EXPECT_TRUE(vdw::quantum_bound(vdw::PhysicalSetup::make(0.01, 1.0, 1.0), 0.5).warning.empty());
  EXPECT_LT(vdw::quantum_bound(kUnit, 1e-9).bound_ratio, 1e-9);
  EXPECT_THROW(vdw::quantum_bound(kUnit, 1.0), vdw::ValidationError);
  EXPECT_THROW(vdw::quantum_bound(kUnit, 0.0), vdw::ValidationError);
}

}  // namespace
