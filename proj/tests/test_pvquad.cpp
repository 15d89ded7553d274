#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "vdwfluct/kernels.hpp"
#include "vdwfluct/pvquad.hpp"

namespace {

using vdw::Component;

// (x^2 + 1) / (x + 3): smooth on [0, 3], nontrivial at every derivative order.
auto smooth = [](const auto& x) {
  using T = std::decay_t<decltype(x)>;
  return (x * x + T(1)) / (x + T(3));
};

// Reference values of FP int_0^3 smooth(x) / (x-1)^n dx from exact
// symbolic evaluation (tests/oracle/gen_reference.py).
struct Frozen {
  int n;
  double value;
};
constexpr Frozen kFrozen[] = {
    {1, 1.61370563888010938116553575708},     {2, -0.0568528194400546905827678785418},
    {4, -0.28125},                            {7, 0.06328125},
    {8, -0.0573381696428571428571428571429}, {9, 0.0456194196428571428571428571429},
};

std::vector<double> eps_ladder(double first, double ratio, int count) {
  std::vector<double> e;
  for (int i = 0; i < count; ++i) e.push_back(first * std::pow(ratio, i));
  return e;
}

TEST(FinitePart, TrivialSymmetricSimplePole) {
  auto one = [](const auto& x) { return std::decay_t<decltype(x)>(1); };
  EXPECT_NEAR(vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 1.0, 1)).value, 0.0, 1e-14);
}

TEST(FinitePart, DoublePoles) {
  auto one = [](const auto& x) { return std::decay_t<decltype(x)>(1); };
  auto id = [](const auto& x) { return x; };
  EXPECT_NEAR(vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 1.0, 2)).value, -2.0, 1e-13);
  EXPECT_NEAR(vdw::finite_part(vdw::make_problem(id, 0.0, 2.0, 1.0, 2)).value, -2.0, 1e-13);
}

TEST(FinitePart, FrozenReferenceSuite) {
  for (const auto& [n, value] : kFrozen) {
    const auto r = vdw::finite_part(vdw::make_problem(smooth, 0.0, 3.0, 1.0, n));
    EXPECT_NEAR(r.value, value, 1e-9 * std::max(1.0, std::abs(value))) << "n=" << n;
    EXPECT_GE(r.error_estimate, 0.0);
  }
}

TEST(FinitePart, AgreesWithExcisionOracle) {
  const auto eps = eps_ladder(0.9, 0.9, 16);
  for (const auto& [n, value] : kFrozen) {
    const auto p = vdw::make_problem(smooth, 0.0, 3.0, 1.0, n);
    const double fp = vdw::finite_part(p).value;
    const double oracle = vdw::eps_excision_oracle(p, eps);
    EXPECT_NEAR(oracle, fp, 1e-6 * std::abs(fp)) << "n=" << n;
    EXPECT_NEAR(oracle, value, 1e-6 * std::abs(value)) << "n=" << n;
  }
}

TEST(FinitePart, OracleSimpleExamples) {
  auto one = [](const auto& x) { return std::decay_t<decltype(x)>(1); };
  auto id = [](const auto& x) { return x; };
  const auto eps = eps_ladder(0.5, 0.7, 8);
  EXPECT_NEAR(vdw::eps_excision_oracle(vdw::make_problem(one, 0.0, 2.0, 1.0, 1), eps), 0.0, 1e-12);
  EXPECT_NEAR(vdw::eps_excision_oracle(vdw::make_problem(id, 0.0, 2.0, 1.0, 2), eps), -2.0, 1e-10);
}

TEST(FinitePart, OracleRejectsBadSequences) {
  const auto p = vdw::make_problem(smooth, 0.0, 3.0, 1.0, 2);
  const std::vector<double> short_seq{0.5, 0.4, 0.3};
  const std::vector<double> rising{0.1, 0.2, 0.3, 0.4};
  const std::vector<double> too_wide{1.5, 0.4, 0.3, 0.2};
  EXPECT_THROW(vdw::eps_excision_oracle(p, short_seq), vdw::ValidationError);
  EXPECT_THROW(vdw::eps_excision_oracle(p, rising), vdw::ValidationError);
  EXPECT_THROW(vdw::eps_excision_oracle(p, too_wide), vdw::ValidationError);
}

TEST(FinitePart, OracleFlagsIllConditionedFit) {
  // Nearly coincident eps values make the divergence basis degenerate.
  const std::vector<double> eps{0.5, 0.5 - 1e-13, 0.5 - 2e-13, 0.5 - 3e-13, 0.5 - 4e-13, 0.5 - 5e-13};
  EXPECT_THROW(vdw::eps_excision_oracle(vdw::make_problem(smooth, 0.0, 3.0, 1.0, 7), eps),
               vdw::OracleUnreliableError);
}

TEST(FinitePart, StepwiseMatchesOneShot) {
  for (int n = 1; n <= 10; ++n) {
    const auto p = vdw::make_problem(smooth, 0.0, 3.0, 1.0, n);
    const double one = vdw::finite_part(p).value;
    const double step = vdw::finite_part_stepwise(p).value;
    EXPECT_NEAR(step, one, 1e-10 * std::max(1.0, std::abs(one))) << "n=" << n;
  }
}

TEST(FinitePart, Linearity) {
  auto g = [](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    return T(1) / (x * x + T(2));
  };
  const double a = 2.5, b = -0.75;
  auto combo = [&](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    return T(a) * smooth(x) + T(b) * g(x);
  };
  for (int n : {1, 3, 6, 9}) {
    const double lhs = vdw::finite_part(vdw::make_problem(combo, 0.0, 3.0, 1.0, n)).value;
    const double rhs = a * vdw::finite_part(vdw::make_problem(smooth, 0.0, 3.0, 1.0, n)).value +
                       b * vdw::finite_part(vdw::make_problem(g, 0.0, 3.0, 1.0, n)).value;
    EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs))) << "n=" << n;
  }
}

TEST(FinitePart, PoleOutsideIsPlainQuadrature) {
  for (int n : {1, 4, 8}) {
    const double c = -0.5;
    const auto r = vdw::finite_part(vdw::make_problem(smooth, 0.0, 3.0, c, n));
    auto direct = [&](double x) { return smooth(x) / std::pow(x - c, n); };
    const auto plain = vdw::integrate(direct, 0.0, 3.0, {0.0, 1e-14, 10000});
    EXPECT_NEAR(r.value, plain.value, 1e-12 * std::max(1.0, std::abs(plain.value)));
    EXPECT_EQ(r.surface_terms, 0.0);
  }
}

TEST(FinitePart, SurfaceTermsReported) {
  auto one = [](const auto& x) { return std::decay_t<decltype(x)>(1); };
  const auto r = vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 1.0, 2));
  EXPECT_NEAR(r.surface_terms, -2.0, 1e-15);
}

TEST(FinitePart, Errors) {
  auto one = [](const auto& x) { return std::decay_t<decltype(x)>(1); };
  auto pole_at_one = [](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    return T(1) / (x - T(1));
  };
  EXPECT_THROW(vdw::finite_part(vdw::make_problem(one, 2.0, 0.0, 1.0, 1)), vdw::ValidationError);
  EXPECT_THROW(vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 1.0, 0)), vdw::ValidationError);
  EXPECT_THROW(vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 1.0, 11)), vdw::ConfigurationError);
  EXPECT_THROW(vdw::finite_part(vdw::make_problem(one, 0.0, 2.0, 2.0, 1)), vdw::ValidationError);
  EXPECT_THROW(vdw::finite_part(vdw::make_problem(pole_at_one, 0.0, 2.0, 1.0, 2)), vdw::SingularityError);
  auto spiky = [](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    return T(1) / (x * x + T(1e-14));
  };
  EXPECT_THROW(vdw::integrate(spiky, -1.0, 1.0, {0.0, 1e-15, 20}), vdw::ConvergenceError);
}

TEST(Quadrature, GaussKronrodOnSmoothIntegrals) {
  const auto r = vdw::integrate([](double x) { return std::exp(x); }, 0.0, 1.0);
  EXPECT_NEAR(r.value, std::exp(1.0) - 1.0, 1e-14);
  const auto rev = vdw::integrate([](double x) { return std::exp(x); }, 1.0, 0.0);
  EXPECT_EQ(rev.value, -r.value);
  const auto s = vdw::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-12, 1e-12, 10000});
  EXPECT_NEAR(s.value, 2.0, 1e-8);
  EXPECT_LE(std::abs(s.value - 2.0), s.error_estimate);
}

TEST(LogWeight, UnitInterval) {
  // pole order 1 at c = 5 outside the range: multiply back by (u - 5).
  auto shifted = [](const auto& u) {
    using T = std::decay_t<decltype(u)>;
    return u - T(5);
  };
  EXPECT_NEAR(vdw::log_weight_integral(shifted, {5.0, 1}, 0.0, 1.0).value, -2.0, 1e-11);
}

// g_k(u) u^p with the (u-1)^9 pole declared separately.
auto cross_regular(Component c, int power) {
  return [c, power](const auto& u) {
    using T = std::decay_t<decltype(u)>;
    return vdw::ipow(u, power) * vdw::scaled::cross_g_regular<T>(c, u, T(1)) / T(vdw::kPi2);
  };
}

struct LogFrozen {
  Component c;
  double upper;
  double i0;
  double i1;
};
const LogFrozen kLogFrozen[] = {
    {Component::x, 5.0, 3.882675855185058512888e-7, -2.74195289394900190244512085e-3},
    {Component::x, 1.25, 416.8982468737575379497632, 538.0955302796900372682440},
    {Component::z, 5.0, -1.582166505267144151661e-7, 0.05245395214932655458300258909832},
    {Component::z, 1.25, -672.6263319309757588087448, -867.1970551046747976070026},
};

TEST(LogWeight, FrozenFiniteRange) {
  for (const auto& f : kLogFrozen) {
    const double i0 = vdw::log_weight_integral(cross_regular(f.c, 0), {1.0, 9}, 0.0, f.upper).value;
    const double i1 = vdw::log_weight_integral(cross_regular(f.c, 1), {1.0, 9}, 0.0, f.upper).value;
    const double scale = std::abs(f.i1);
    EXPECT_NEAR(i0, f.i0, 1e-8 * scale) << vdw::to_string(f.c) << " U=" << f.upper;
    EXPECT_NEAR(i1, f.i1, 1e-8 * scale) << vdw::to_string(f.c) << " U=" << f.upper;
  }
}

TEST(LogWeight, SemiInfinite) {
  const double inf = std::numeric_limits<double>::infinity();
  const double pi2 = vdw::kPi2;
  const auto x1 = vdw::log_weight_integral(cross_regular(Component::x, 1), {1.0, 9}, 0.0, inf, {}, 9.0);
  EXPECT_NEAR(x1.value, -13.0 / (480.0 * pi2), 1e-8);
  const auto z1 = vdw::log_weight_integral(cross_regular(Component::z, 1), {1.0, 9}, 0.0, inf, {}, 9.0);
  EXPECT_NEAR(z1.value, 0.05245482111483528375792509709920, 1e-8);
  const auto x0 = vdw::log_weight_integral(cross_regular(Component::x, 0), {1.0, 9}, 0.0, inf);
  EXPECT_NEAR(x0.value, 0.0, 1e-9);
  EXPECT_GT(x1.error_estimate, 0.0);
}

TEST(LogWeight, AgreesWithExcisionOracle) {
  // Finite range so both routes see the same problem.
  const auto eps = eps_ladder(0.6, 0.9, 16);
  for (Component c : {Component::x, Component::z}) {
    const auto p = vdw::make_problem(cross_regular(c, 1), 0.0, 3.0, 1.0, 9, true);
    const double fp = vdw::finite_part(p).value;
    const double oracle = vdw::eps_excision_oracle(p, eps);
    EXPECT_NEAR(oracle, fp, 1e-6 * std::abs(fp)) << vdw::to_string(c);
  }
}

}  // namespace
