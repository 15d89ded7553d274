#ifndef VDWFLUCT_PVQUAD_HPP
#define VDWFLUCT_PVQUAD_HPP

// Principal-value and Hadamard finite-part quadrature.
//
// For a regular factor f and a pole of order n at c inside [a, b],
//
//   FP int_a^b f(x) / (x-c)^n dx
//     = -1/(n-1)! [ sum_{i=0}^{n-2} (n-2-i)! f^(i)(x) (x-c)^(-n+1+i) ]_a^b
//       + 1/(n-1)! PV int_a^b f^(n-1)(x) / (x-c) dx,
//
// obtained by repeated integration by parts. Derivatives of f come from
// Taylor jets, so f must be a generic callable accepting double and
// Jet<double, K>. The remaining simple-pole principal value is evaluated by
// symmetric pairing about c, which removes the cancellation near the pole.
//
// eps_excision_oracle() is an independent route to the same number: it
// integrates with a symmetric hole of half-width eps around c, fits the
// known divergent expansion in eps and returns its constant term.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <type_traits>
#include <utility>
#include <vector>

#include "vdwfluct/errors.hpp"
#include "vdwfluct/jet.hpp"
#include "vdwfluct/quadrature.hpp"

namespace vdw {

template <typename F>
struct FinitePartProblem {
  F f;                 // regular factor
  double a = 0.0;
  double b = 1.0;
  double c = 0.5;      // pole location
  int n = 1;           // pole order
  bool log_weight = false;  // multiply the integrand by ln x^2
  QuadratureOptions tolerance{};
};

template <typename F>
FinitePartProblem<F> make_problem(F f, double a, double b, double c, int n, bool log_weight = false,
                                  QuadratureOptions tolerance = {}) {
  return {std::move(f), a, b, c, n, log_weight, tolerance};
}

namespace detail {

inline double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// f(x), or f(x) ln x^2 when the log weight is requested.
template <typename F>
auto weighted_factor(const F& f, bool log_weight) {
  return [&f, log_weight](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    if (!log_weight) return T(f(x));
    using std::log;
    return T(f(x) * log(x * x));
  };
}

template <typename G>
void check_problem(const FinitePartProblem<G>& p) {
  if (!(p.a < p.b)) throw ValidationError("finite part: need a < b");
  if (p.n < 1) throw ValidationError("finite part: pole order must be >= 1");
  if (p.n > kDefaultJetOrder) throw ConfigurationError("finite part: pole order exceeds jet order");
  if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c))
    throw ValidationError("finite part: interval and pole must be finite");
  if (p.c == p.a || p.c == p.b) throw ValidationError("finite part: pole on an interval endpoint");
  if (p.log_weight && p.c == 0.0) throw ValidationError("finite part: pole coincides with the log singularity");
}

/// PV int_a^b phi(x)/(x-c) dx with c strictly inside (a, b).
template <typename Phi>
QuadratureResult simple_pole_pv(const Phi& phi, double a, double b, double c, const QuadratureOptions& opt,
                                bool log_split) {
  const double h = std::min(c - a, b - c);
  QuadratureResult r = integrate([&](double s) { return (phi(c + s) - phi(c - s)) / s; }, 0.0, h, opt);
  auto outer = [&](double x) { return phi(x) / (x - c); };
  if (b - c > h) {
    const double lo = c + h;
    std::vector<double> bp = geometric_breakpoints(lo, b);
    if (log_split && lo < 0.0 && b > 0.0) bp.insert(bp.begin(), 0.0);
    r += integrate(outer, lo, b, opt, bp);
  } else if (c - a > h) {
    std::vector<double> bp;
    if (log_split && a < 0.0 && c - h > 0.0) bp.push_back(0.0);
    r += integrate(outer, a, c - h, opt, bp);
  }
  return r;
}

/// Ordinary integral of reg(x)/(x-c)^n over an interval not containing c.
template <typename Reg>
QuadratureResult plain_pole_integral(const Reg& reg, double a, double b, double c, int n,
                                     const QuadratureOptions& opt, bool log_split) {
  if (!(a < b)) return {};
  std::vector<double> bp;
  if (log_split && a < 0.0 && b > 0.0) bp.push_back(0.0);
  if (a > c) {
    auto g = geometric_breakpoints(a - c, b - c);
    for (double x : g) bp.push_back(c + x);
  }
  std::sort(bp.begin(), bp.end());
  return integrate([&](double x) { return reg(x) / std::pow(x - c, n); }, a, b, opt, bp);
}

template <typename Reg>
Jet<double> checked_taylor(const Reg& reg, double x) {
  Jet<double> j = taylor<kDefaultJetOrder>(reg, x);
  for (const double v : j.coefficients())
    if (!std::isfinite(v)) throw SingularityError("regular factor is not smooth", x);
  return j;
}

enum class Assembly { one_shot, stepwise };

/// Finite part over [a, b] with c inside and reg smooth on all of [a, b].
template <typename Reg>
QuadratureResult finite_part_window(const Reg& reg, double a, double b, double c, int n,
                                    const QuadratureOptions& opt, Assembly how, bool log_split) {
  checked_taylor(reg, c);
  const Jet<double> ja = checked_taylor(reg, a);
  const Jet<double> jb = checked_taylor(reg, b);

  double surface = 0.0;
  double surface_abs = 0.0;
  if (how == Assembly::one_shot) {
    for (int i = 0; i <= n - 2; ++i) {
      const double w = factorial(n - 2 - i);
      const double tb = w * jb.derivative(i) * std::pow(b - c, -n + 1 + i);
      const double ta = w * ja.derivative(i) * std::pow(a - c, -n + 1 + i);
      surface -= tb - ta;
      surface_abs += std::abs(tb) + std::abs(ta);
    }
    surface /= factorial(n - 1);
    surface_abs /= factorial(n - 1);
  } else {
    // FP_m[g] = -[g (x-c)^(1-m)]_a^b / (m-1) + FP_{m-1}[g'] / (m-1), unrolled.
    double scale = 1.0;
    for (int m = n, i = 0; m >= 2; --m, ++i) {
      scale /= (m - 1);
      const double tb = jb.derivative(i) * std::pow(b - c, 1 - m);
      const double ta = ja.derivative(i) * std::pow(a - c, 1 - m);
      surface -= scale * (tb - ta);
      surface_abs += scale * (std::abs(tb) + std::abs(ta));
    }
  }

  const int k = n - 1;
  auto phi = [&](double x) { return taylor<kDefaultJetOrder>(reg, x).derivative(k); };
  QuadratureResult pv = simple_pole_pv(phi, a, b, c, opt, log_split);
  const double norm = factorial(n - 1);
  QuadratureResult r;
  r.value = surface + pv.value / norm;
  r.surface_terms = surface;
  r.error_estimate = pv.error_estimate / norm + 16.0 * std::numeric_limits<double>::epsilon() * surface_abs;
  r.subdivisions = pv.subdivisions;
  return r;
}

template <typename F>
QuadratureResult finite_part_impl(const FinitePartProblem<F>& p, Assembly how) {
  check_problem(p);
  const auto reg = weighted_factor(p.f, p.log_weight);
  if (p.c < p.a || p.c > p.b) return plain_pole_integral(reg, p.a, p.b, p.c, p.n, p.tolerance, p.log_weight);
  if (p.log_weight && p.a <= 0.0 && p.b >= 0.0) {
    // Keep the log singularity out of the integration-by-parts window.
    const double w = std::min({std::abs(p.c) / 2.0, p.c - p.a, p.b - p.c});
    QuadratureResult r = finite_part_window(reg, p.c - w, p.c + w, p.c, p.n, p.tolerance, how, false);
    r += plain_pole_integral(reg, p.a, p.c - w, p.c, p.n, p.tolerance, true);
    r += plain_pole_integral(reg, p.c + w, p.b, p.c, p.n, p.tolerance, true);
    return r;
  }
  return finite_part_window(reg, p.a, p.b, p.c, p.n, p.tolerance, how, p.log_weight);
}

}  // namespace detail

/// Finite-part (generalized principal value) integral of f(x)/(x-c)^n.
/// Ordinary adaptive quadrature when c lies outside [a, b].
template <typename F>
QuadratureResult finite_part(const FinitePartProblem<F>& p) {
  return detail::finite_part_impl(p, detail::Assembly::one_shot);
}

/// Same integral assembled by peeling one pole order at a time.
template <typename F>
QuadratureResult finite_part_stepwise(const FinitePartProblem<F>& p) {
  return detail::finite_part_impl(p, detail::Assembly::stepwise);
}

struct PoleSpec {
  double c = 1.0;
  int n = 1;
};

/// FP int_a^b g(u) ln u^2 / (u-c)^n du for a >= 0, with b possibly +inf.
/// For an infinite upper limit the integrand must satisfy
/// |integrand| <= C u^-decay_power ln u beyond the pole; the range is cut at
/// U where the corresponding tail bound drops below the tolerance, and the
/// bound is added to the error estimate.
template <typename G>
QuadratureResult log_weight_integral(const G& g, PoleSpec pole, double a, double b,
                                     const QuadratureOptions& opt = {}, double decay_power = 10.0) {
  if (a < 0.0) throw ValidationError("log-weight integral: lower limit must be >= 0");
  if (!(b > a)) throw ValidationError("log-weight integral: need b > a");
  if (std::isfinite(b)) return finite_part(make_problem(std::cref(g), a, b, pole.c, pole.n, true, opt));

  if (!(decay_power > 1.0)) throw ValidationError("log-weight integral: decay power must exceed 1");
  auto integrand = [&](double u) { return g(u) * std::log(u * u) / std::pow(u - pole.c, pole.n); };
  const double start = std::max({4.0 * std::abs(pole.c), 2.0 * a, 4.0});
  double amplitude = 0.0;
  for (double u = start; u <= 64.0 * start; u *= 2.0)
    amplitude = std::max(amplitude, std::abs(integrand(u)) * std::pow(u, decay_power) / std::log(u));
  amplitude *= 2.0;
  const double p1 = decay_power - 1.0;
  auto tail_bound = [&](double u) { return amplitude * std::pow(u, -p1) * (std::log(u) / p1 + 1.0 / (p1 * p1)); };

  QuadratureResult head = finite_part(make_problem(std::cref(g), a, start, pole.c, pole.n, true, opt));
  const double target = 0.1 * std::max(opt.abs_tol, opt.rel_tol * std::abs(head.value));
  double cut = start;
  while (tail_bound(cut) > target) {
    cut *= 2.0;
    if (cut > 1e12) throw ConvergenceError("log-weight integral: tail bound exceeds tolerance", head.value, tail_bound(cut));
  }
  QuadratureResult r = head;
  r += integrate(integrand, start, cut, opt, geometric_breakpoints(start, cut));
  r.error_estimate += tail_bound(cut);
  return r;
}

namespace detail {

/// Least squares min |A x - y| by Householder QR; returns x and the ratio of
/// extreme diagonal entries of R as a conditioning indicator.
inline std::pair<std::vector<long double>, long double> least_squares(std::vector<std::vector<long double>> a,
                                                                      std::vector<long double> y) {
  const std::size_t m = a.size();
  const std::size_t k = a.front().size();
  for (std::size_t col = 0; col < k; ++col) {
    long double norm = 0;
    for (std::size_t r = col; r < m; ++r) norm += a[r][col] * a[r][col];
    norm = std::sqrt(norm);
    if (norm == 0) continue;
    const long double alpha = a[col][col] > 0 ? -norm : norm;
    std::vector<long double> v(m, 0);
    for (std::size_t r = col; r < m; ++r) v[r] = a[r][col];
    v[col] -= alpha;
    long double vnorm2 = 0;
    for (std::size_t r = col; r < m; ++r) vnorm2 += v[r] * v[r];
    if (vnorm2 == 0) continue;
    for (std::size_t j = col; j < k; ++j) {
      long double dot = 0;
      for (std::size_t r = col; r < m; ++r) dot += v[r] * a[r][j];
      const long double f = 2 * dot / vnorm2;
      for (std::size_t r = col; r < m; ++r) a[r][j] -= f * v[r];
    }
    long double dot = 0;
    for (std::size_t r = col; r < m; ++r) dot += v[r] * y[r];
    const long double f = 2 * dot / vnorm2;
    for (std::size_t r = col; r < m; ++r) y[r] -= f * v[r];
  }
  long double dmax = 0, dmin = std::numeric_limits<long double>::max();
  for (std::size_t i = 0; i < k; ++i) {
    dmax = std::max(dmax, std::abs(a[i][i]));
    dmin = std::min(dmin, std::abs(a[i][i]));
  }
  std::vector<long double> x(k, 0);
  for (std::size_t i = k; i-- > 0;) {
    long double s = y[i];
    for (std::size_t j = i + 1; j < k; ++j) s -= a[i][j] * x[j];
    x[i] = a[i][i] != 0 ? s / a[i][i] : 0;
  }
  return {x, dmin > 0 ? dmax / dmin : std::numeric_limits<long double>::infinity()};
}

}  // namespace detail

/// Constant term of the symmetric-excision expansion
///   int_{|x-c|>eps} f(x)/(x-c)^n dx = sum_k d_k eps^-k + C + sum_j e_j eps^j.
/// With a symmetric hole only odd powers of eps survive and the ln(eps) term
/// cancels, so the fitted basis is the odd negative powers eps^-k with
/// k <= n-1, the constant, and up to ten positive odd powers. Runs in long double.
template <typename F>
double eps_excision_oracle(const FinitePartProblem<F>& p, std::span<const double> eps_sequence) {
  detail::check_problem(p);
  if (eps_sequence.size() < 4) throw ValidationError("excision oracle: need at least 4 eps values");
  for (std::size_t i = 0; i < eps_sequence.size(); ++i) {
    if (!(eps_sequence[i] > 0.0)) throw ValidationError("excision oracle: eps must be positive");
    if (i > 0 && !(eps_sequence[i] < eps_sequence[i - 1]))
      throw ValidationError("excision oracle: eps sequence must be strictly decreasing");
  }
  if (!(eps_sequence[0] < std::min(p.c - p.a, p.b - p.c)))
    throw ValidationError("excision oracle: largest eps must leave the pole inside the interval");
  if (p.log_weight && std::abs(p.c) <= eps_sequence[0])
    throw ValidationError("excision oracle: hole overlaps the log singularity");

  using LD = long double;
  const auto reg = detail::weighted_factor(p.f, p.log_weight);
  auto integrand = [&](LD x) { return reg(x) / std::pow(x - static_cast<LD>(p.c), p.n); };
  QuadratureOptions tight = p.tolerance;
  tight.abs_tol = 0.0;
  tight.rel_tol = 1e-17;
  tight.max_panels = std::max(tight.max_panels, 20000);

  // Exponents of the fit basis.
  std::vector<int> powers;
  for (int k = p.n - 1; k >= 1; --k)
    if (k % 2 == 1) powers.push_back(-k);
  powers.push_back(0);
  const std::size_t m = eps_sequence.size();
  const std::size_t free = m > powers.size() + 1 ? m - powers.size() - 1 : 0;
  const std::size_t positive = std::min<std::size_t>(free, 10);
  for (std::size_t j = 0; j < positive; ++j) powers.push_back(static_cast<int>(2 * j + 1));

  const double eps_scale = eps_sequence[0];
  std::vector<std::vector<LD>> design;
  std::vector<LD> rhs;
  for (const double eps : eps_sequence) {
    std::vector<double> bp_left, bp_right;
    if (p.log_weight && p.a < 0.0 && p.c - eps > 0.0) bp_left.push_back(0.0);
    if (p.log_weight && p.c + eps < 0.0 && p.b > 0.0) bp_right.push_back(0.0);
    const LD c = p.c;
    const auto left = detail::adaptive<LD>(integrand, LD(p.a), c - LD(eps), tight, bp_left);
    const auto right = detail::adaptive<LD>(integrand, c + LD(eps), LD(p.b), tight, bp_right);
    std::vector<LD> row;
    const LD e = static_cast<LD>(eps) / static_cast<LD>(eps_scale);
    for (int k : powers) row.push_back(std::pow(e, k));
    design.push_back(std::move(row));
    rhs.push_back(left.value + right.value);
  }
  if (design.size() < powers.size()) throw OracleUnreliableError("excision oracle: too few eps values for the basis");
  const auto [coef, cond] = detail::least_squares(design, rhs);
  if (!(cond < 1e15L)) throw OracleUnreliableError("excision oracle: fit is ill-conditioned");
  const auto it = std::find(powers.begin(), powers.end(), 0);
  return static_cast<double>(coef[static_cast<std::size_t>(it - powers.begin())]);
}

}  // namespace vdw

#endif  // VDWFLUCT_PVQUAD_HPP
