#ifndef VDWFLUCT_QUADRATURE_HPP
#define VDWFLUCT_QUADRATURE_HPP

// Globally adaptive Gauss-Kronrod (10/21 point) quadrature.
//
// The worst panel is bisected until the summed error estimate meets
// max(abs_tol, rel_tol * |value|) or the panel budget is spent. Panels whose
// error has reached the rounding floor are not split again. The final sum is
// taken over panels ordered by left endpoint, so results do not depend on
// heap ordering details.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <span>
#include <vector>

#include "vdwfluct/errors.hpp"

namespace vdw {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  int max_panels = 10000;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  double surface_terms = 0.0;  // boundary part of a finite-part integral

  QuadratureResult& operator+=(const QuadratureResult& o) {
    value += o.value;
    error_estimate += o.error_estimate;
    subdivisions += o.subdivisions;
    surface_terms += o.surface_terms;
    return *this;
  }
};

namespace detail {

// Kronrod abscissae (descending) and weights, Gauss weights for the odd
// Kronrod nodes; QUADPACK qk21 tables.
inline constexpr std::array<long double, 11> kXgk{
    0.995657163025808080735527280689003L, 0.973906528517171720077964012084452L,
    0.930157491355708226001207180059508L, 0.865063366688984510732096688423493L,
    0.780817726586416897063717578345042L, 0.679409568299024406234327365114874L,
    0.562757134668604683339000099272694L, 0.433395394129247190799265943165784L,
    0.294392862701460198131126603103866L, 0.148874338981631210884826001129720L,
    0.0L};
inline constexpr std::array<long double, 11> kWgk{
    0.011694638867371874278064396062192L, 0.032558162307964727478818972459390L,
    0.054755896574351996031381300244580L, 0.075039674810919952767043140916190L,
    0.093125454583697605535065465083366L, 0.109387158802297641899210590325805L,
    0.123491976262065851077958109831074L, 0.134709217311473325928054001771707L,
    0.142775938577060080797094273138717L, 0.147739104901338491374841515972068L,
    0.149445554002916905664936468389821L};
inline constexpr std::array<long double, 5> kWg{
    0.066671344308688137593568809893332L, 0.149451349150580593145776339657697L,
    0.219086362515982043995534934228163L, 0.269266719309996355091226921569469L,
    0.295524224714752870173892994651338L};

template <typename Real>
struct Panel {
  Real a;
  Real b;
  Real value;
  Real error;
  Real floor;  // rounding-level error below which splitting is pointless
};

template <typename Real, typename F>
Panel<Real> gauss_kronrod21(F& f, Real a, Real b) {
  using std::abs;
  const Real center = (a + b) / 2;
  const Real half = (b - a) / 2;
  const Real fc = f(center);
  Real kronrod = static_cast<Real>(kWgk[10]) * fc;
  Real gauss = 0;
  Real abs_sum = abs(kronrod);
  std::array<Real, 10> f1{}, f2{};
  for (std::size_t j = 0; j < 10; ++j) {
    const Real dx = half * static_cast<Real>(kXgk[j]);
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const Real wk = static_cast<Real>(kWgk[j]);
    kronrod += wk * (f1[j] + f2[j]);
    abs_sum += wk * (abs(f1[j]) + abs(f2[j]));
    if (j % 2 == 1) gauss += static_cast<Real>(kWg[j / 2]) * (f1[j] + f2[j]);
  }
  const Real mean = kronrod / 2;
  Real asc = static_cast<Real>(kWgk[10]) * abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) asc += static_cast<Real>(kWgk[j]) * (abs(f1[j] - mean) + abs(f2[j] - mean));
  const Real value = kronrod * half;
  const Real resabs = abs_sum * abs(half);
  const Real resasc = asc * abs(half);
  Real err = abs((kronrod - gauss) * half);
  if (resasc != 0 && err != 0) {
    using std::pow;
    err = resasc * std::min(Real(1), static_cast<Real>(pow(200 * err / resasc, Real(1.5))));
  }
  const Real floor = 50 * std::numeric_limits<Real>::epsilon() * resabs;
  err = std::max(err, floor);
  using std::isfinite;
  if (!isfinite(value) || !isfinite(err)) {
    throw ConvergenceError("non-finite integrand value inside quadrature panel", static_cast<double>(value),
                           static_cast<double>(err));
  }
  return {a, b, value, err, floor};
}

template <typename Real>
struct Estimate {
  Real value;
  Real error;
  int panels;
};

template <typename Real, typename F>
Estimate<Real> adaptive(F& f, Real a, Real b, const QuadratureOptions& opt, std::span<const double> breakpoints) {
  using std::abs;
  using P = Panel<Real>;
  auto cmp = [](const P& p, const P& q) { return p.error < q.error; };
  std::priority_queue<P, std::vector<P>, decltype(cmp)> heap(cmp);
  std::vector<P> settled;

  Real value = 0;
  Real error = 0;
  int panels = 0;
  auto push = [&](const P& p) {
    value += p.value;
    error += p.error;
    ++panels;
    heap.push(p);
  };
  Real left = a;
  for (double bp : breakpoints) {
    const Real r = static_cast<Real>(bp);
    if (r > left && r < b) {
      push(gauss_kronrod21<Real>(f, left, r));
      left = r;
    }
  }
  push(gauss_kronrod21<Real>(f, left, b));

  const Real min_width = 64 * std::numeric_limits<Real>::epsilon() * std::max(abs(a), abs(b));
  while (!heap.empty() && error > std::max(static_cast<Real>(opt.abs_tol), static_cast<Real>(opt.rel_tol) * abs(value))) {
    const P worst = heap.top();
    heap.pop();
    if (worst.error <= worst.floor * Real(1.0000001) || (worst.b - worst.a) < min_width) {
      settled.push_back(worst);  // cannot be improved further
      continue;
    }
    if (panels >= opt.max_panels) {
      throw ConvergenceError("quadrature panel budget exhausted", static_cast<double>(value),
                             static_cast<double>(error));
    }
    --panels;
    value -= worst.value;
    error -= worst.error;
    const Real mid = (worst.a + worst.b) / 2;
    push(gauss_kronrod21<Real>(f, worst.a, mid));
    push(gauss_kronrod21<Real>(f, mid, worst.b));
  }

  std::vector<P> all = std::move(settled);
  while (!heap.empty()) {
    all.push_back(heap.top());
    heap.pop();
  }
  std::sort(all.begin(), all.end(), [](const P& p, const P& q) { return p.a < q.a; });
  Estimate<Real> r{0, 0, static_cast<int>(all.size())};
  for (const P& p : all) {
    r.value += p.value;
    r.error += p.error;
  }
  return r;
}

}  // namespace detail

/// Adaptive integral of f over [a, b], optionally seeded with interior
/// breakpoints (increasing; those outside (a, b) are ignored). Real selects
/// the working precision (double or long double); f is called with Real.
template <typename Real = double, typename F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {},
                           std::span<const double> breakpoints = {}) {
  if (a == b) return {};
  if (a > b) {
    QuadratureResult r = integrate<Real>(f, b, a, opt, breakpoints);
    r.value = -r.value;
    return r;
  }
  const auto e = detail::adaptive<Real>(f, static_cast<Real>(a), static_cast<Real>(b), opt, breakpoints);
  return {static_cast<double>(e.value), static_cast<double>(e.error), e.panels, 0.0};
}

/// Geometrically spaced breakpoints lo*2^k inside (lo, hi), for long
/// intervals with algebraically decaying integrands (lo > 0).
inline std::vector<double> geometric_breakpoints(double lo, double hi, double ratio = 2.0) {
  std::vector<double> bp;
  if (!(lo > 0.0)) return bp;
  for (double x = lo * ratio; x < hi; x *= ratio) bp.push_back(x);
  return bp;
}

}  // namespace vdw

#endif  // VDWFLUCT_QUADRATURE_HPP
