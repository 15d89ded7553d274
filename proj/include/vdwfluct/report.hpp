#ifndef VDWFLUCT_REPORT_HPP
#define VDWFLUCT_REPORT_HPP

// Run configurations and their tabular results, written as CSV or JSON.
// Parameter sweeps fan out over worker threads; each grid point is computed
// independently and rows are emitted in grid order.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "vdwfluct/dispersion.hpp"
#include "vdwfluct/errors.hpp"
#include "vdwfluct/kernels.hpp"
#include "vdwfluct/units.hpp"

#ifndef VDWFLUCT_VERSION
#define VDWFLUCT_VERSION "unknown"
#endif

namespace vdw {

inline constexpr const char* kVersion = VDWFLUCT_VERSION;

enum class Command { mean_force, correlation, dispersion, asymptotes, temperature, bound, sweep, verify };
enum class Format { csv, json };
enum class Observable { dispersion, correlation };

inline Command parse_command(std::string_view s) {
  if (s == "mean-force") return Command::mean_force;
  if (s == "correlation") return Command::correlation;
  if (s == "dispersion") return Command::dispersion;
  if (s == "asymptotes") return Command::asymptotes;
  if (s == "temperature") return Command::temperature;
  if (s == "bound") return Command::bound;
  if (s == "sweep") return Command::sweep;
  if (s == "verify") return Command::verify;
  throw UsageError("unknown command '" + std::string(s) + "'");
}

inline const char* to_string(Command c) {
  switch (c) {
    case Command::mean_force: return "mean-force";
    case Command::correlation: return "correlation";
    case Command::dispersion: return "dispersion";
    case Command::asymptotes: return "asymptotes";
    case Command::temperature: return "temperature";
    case Command::bound: return "bound";
    case Command::sweep: return "sweep";
    case Command::verify: return "verify";
  }
  return "?";
}

inline Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("unknown format '" + std::string(s) + "'");
}

inline Observable parse_observable(std::string_view s) {
  if (s == "dispersion") return Observable::dispersion;
  if (s == "correlation") return Observable::correlation;
  throw UsageError("unknown observable '" + std::string(s) + "'");
}

/// count points between min and max, evenly spaced in value or in log.
struct Grid {
  double min = 1.0;
  double max = 1.0;
  int count = 1;
  bool log = false;

  std::vector<double> points() const {
    std::vector<double> p;
    if (count == 1) return {min};
    for (int i = 0; i < count; ++i) {
      const double f = static_cast<double>(i) / (count - 1);
      p.push_back(log ? min * std::pow(max / min, f) : min + (max - min) * f);
    }
    p.back() = max;
    return p;
  }
};

inline Grid make_grid(double min, double max, int count, bool log) {
  if (count < 1) throw ValidationError("grid count must be at least 1");
  if (!std::isfinite(min) || !std::isfinite(max)) throw ValidationError("grid bounds must be finite");
  if (count > 1 && !(min < max)) throw ValidationError("grid needs min < max when count > 1");
  if (log && !(min > 0.0)) throw ValidationError("log grid needs a positive minimum");
  return {min, max, count, log};
}

/// "min:max:count" with an optional "log" or "lin" suffix on count, e.g. 10:10000:20log.
inline Grid parse_grid(std::string_view spec) {
  const auto c1 = spec.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : spec.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw UsageError("grid must look like min:max:count[log|lin]");
  std::string_view count_part = spec.substr(c2 + 1);
  bool log = false;
  if (count_part.ends_with("log")) {
    log = true;
    count_part.remove_suffix(3);
  } else if (count_part.ends_with("lin")) {
    count_part.remove_suffix(3);
  }
  auto number = [](std::string_view s, auto& out) {
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
      throw UsageError("bad number '" + std::string(s) + "' in grid");
  };
  double lo = 0.0, hi = 0.0;
  int count = 0;
  number(spec.substr(0, c1), lo);
  number(spec.substr(c1 + 1, c2 - c1 - 1), hi);
  number(count_part, count);
  return make_grid(lo, hi, count, log);
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

using Value = std::variant<double, long long, bool, std::string>;
using Record = std::vector<std::pair<std::string, Value>>;

struct Table {
  std::string command;
  Record inputs;
  std::vector<Record> rows;
  std::string units;
  std::string alpha_convention = UnitConvention::alpha_convention;
  bool numerical_failure = false;  // some rows carry best estimates only
};

inline std::string format_value(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) return format_double(x);
        else if constexpr (std::is_same_v<T, long long>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
        else return x;
      },
      v);
}

namespace detail {
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string r = "\"";
  for (char c : s) r += c == '"' ? std::string("\"\"") : std::string(1, c);
  return r + "\"";
}

inline nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(x)) return format_double(x);
          return x;
        } else {
          return x;
        }
      },
      v);
}

inline nlohmann::ordered_json to_json(const Record& r) {
  nlohmann::ordered_json o = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r) o[k] = to_json(v);
  return o;
}
}  // namespace detail

/// Header row, then one line per record; the unit system and polarizability
/// convention are appended to every record.
inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  std::vector<std::string> header;
  for (const auto& row : t.rows)
    for (const auto& [k, v] : row)
      if (std::find(header.begin(), header.end(), k) == header.end()) header.push_back(k);
  header.push_back("units");
  header.push_back("alpha_convention");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << detail::csv_field(header[i]);
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i + 2 < header.size(); ++i) {
      if (i) os << ",";
      const auto it = std::find_if(row.begin(), row.end(), [&](const auto& kv) { return kv.first == header[i]; });
      if (it != row.end()) os << detail::csv_field(format_value(it->second));
    }
    os << "," << detail::csv_field(t.units) << "," << detail::csv_field(t.alpha_convention) << "\n";
  }
  return os.str();
}

inline std::string to_json(const Table& t) {
  nlohmann::ordered_json o;
  o["command"] = t.command;
  o["inputs"] = detail::to_json(t.inputs);
  o["results"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) o["results"].push_back(detail::to_json(r));
  o["metadata"] = {{"units", t.units}, {"alpha_convention", t.alpha_convention}, {"version", kVersion}};
  return o.dump(2) + "\n";
}

inline std::string render(const Table& t, Format f) { return f == Format::csv ? to_csv(t) : to_json(t); }

struct RunConfig {
  Command command = Command::mean_force;
  double alpha = 1.0;
  double mass = 1.0;
  double z = 1.0;
  UnitSystem units = UnitSystem::natural;
  bool hydrogen = false;          // alpha and mass of atomic hydrogen; z in A
  double alpha_factor = constants::lh_per_gaussian_polarizability;
  std::vector<Component> components{kAllComponents.begin(), kAllComponents.end()};
  std::vector<Term> terms{kAllTerms.begin(), kAllTerms.end()};
  std::vector<double> separations{0.0};  // correlation: T in length units
  std::optional<double> t;               // dispersion: elapsed time as c t, length units
  std::optional<double> t_over_z;
  double delta_z = 0.0;
  Observable observable = Observable::dispersion;
  Grid grid{};
  Format format = Format::json;
  int threads = 0;  // 0: hardware concurrency
};

namespace detail {

inline UnitConvention convention_of(const RunConfig& c) {
  UnitConvention conv;
  conv.system = c.units;
  conv.alpha_factor = c.alpha_factor;
  return conv;
}

inline PhysicalSetup setup_of(const RunConfig& c) {
  if (c.hydrogen) {
    return PhysicalSetup::make(c.alpha_factor * hydrogen_polarizability_gaussian(),
                               constants::hydrogen_mass_ev / constants::hbar_c_ev_angstrom, c.z);
  }
  return PhysicalSetup::from_units(c.alpha, c.mass, c.z, convention_of(c));
}

inline double velocity_squared_out(double v2, const RunConfig& c) {
  const double s = unit_scale(UnitKind::velocity, convention_of(c));
  return v2 / (s * s);
}

/// Natural length per input length unit; hydrogen mode takes every length in A.
inline double length_scale(const RunConfig& c) {
  return c.hydrogen ? 1.0 : unit_scale(UnitKind::length, convention_of(c));
}

inline double length_out(double x, const RunConfig& c) { return x / length_scale(c); }

inline double force_out(double f, const RunConfig& c) { return f / unit_scale(UnitKind::force, convention_of(c)); }

/// pi^4 C_k(T) has dimension alpha^2 / length^10; report the same combination.
inline double correlation_out(double v, const RunConfig& c) {
  const double f = unit_scale(UnitKind::force, convention_of(c));
  return v / (f * f);
}

inline Record setup_inputs(const RunConfig& c) {
  Record r{{"alpha", c.alpha}, {"mass", c.mass}, {"z", c.z}};
  if (c.hydrogen) r = {{"hydrogen", true}, {"z_angstrom", c.z}};
  return r;
}

inline std::string rational_string(const Rational& q) { return q.get_str(); }

inline Record dispersion_row(const DispersionResult& d, const RunConfig& c) {
  return {{"component", std::string(to_string(d.component))},
          {"term", std::string(to_string(d.term))},
          {"t", length_out(d.time, c)},
          {"value", velocity_squared_out(d.value, c)},
          {"error_estimate", velocity_squared_out(d.error_estimate, c)}};
}

inline int worker_count(int requested, std::size_t jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return std::max(1, std::min<int>(n, static_cast<int>(jobs)));
}

/// Runs job(i) for i in [0, n) on `threads` workers; job must only touch slot i.
/// The exception of the lowest failing index is rethrown after all workers join.
template <typename Job>
void parallel_for(std::size_t n, int threads, const Job& job) {
  const int w = worker_count(threads, n);
  if (w == 1) {
    for (std::size_t i = 0; i < n; ++i) job(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (int k = 0; k < w; ++k)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          job(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline Table sweep(const RunConfig& c, const PhysicalSetup& s) {
  Table t;
  t.command = to_string(Command::sweep);
  t.inputs = setup_inputs(c);
  t.inputs.emplace_back("observable", std::string(c.observable == Observable::dispersion ? "dispersion" : "correlation"));
  t.inputs.emplace_back("grid_min", c.grid.min);
  t.inputs.emplace_back("grid_max", c.grid.max);
  t.inputs.emplace_back("grid_count", static_cast<long long>(c.grid.count));
  t.inputs.emplace_back("grid_log", c.grid.log);

  struct Job {
    std::size_t grid_index;
    Component component;
    Term term;
  };
  const std::vector<double> pts = c.grid.points();
  std::vector<Job> jobs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (Component k : c.components) {
      if (c.observable == Observable::correlation) {
        jobs.push_back({i, k, Term::normal});
      } else {
        for (Term term : c.terms) jobs.push_back({i, k, term});
      }
    }

  std::vector<Record> rows(jobs.size());
  std::vector<char> failed(jobs.size(), 0);
  parallel_for(jobs.size(), c.threads, [&](std::size_t j) {
    const Job& job = jobs[j];
    const double ratio = pts[job.grid_index];
    const double sep = ratio * s.z;
    Record r{{"index", static_cast<long long>(job.grid_index)}, {"component", std::string(to_string(job.component))}};
    if (c.observable == Observable::correlation) {
      r.emplace_back("T_over_z", ratio);
      r.emplace_back("T", length_out(sep, c));
      try {
        const auto v = force_corr_no(job.component, sep, s);
        r.emplace_back("value", correlation_out(v.value, c));
        r.emplace_back("connected", v.connected);
        r.emplace_back("status", std::string("ok"));
      } catch (const SingularityError&) {
        r.emplace_back("value", std::numeric_limits<double>::infinity());
        r.emplace_back("connected", job.component == Component::z);
        r.emplace_back("status", std::string("singular"));
      }
    } else {
      r.emplace_back("term", std::string(to_string(job.term)));
      r.emplace_back("t_over_z", ratio);
      r.emplace_back("t", length_out(sep, c));
      try {
        const auto d = dispersion(job.component, job.term, sep, s);
        r.emplace_back("value", velocity_squared_out(d.value, c));
        r.emplace_back("error_estimate", velocity_squared_out(d.error_estimate, c));
        r.emplace_back("status", std::string("ok"));
      } catch (const ConvergenceError& e) {
        r.emplace_back("value", velocity_squared_out(e.best_estimate(), c));
        r.emplace_back("error_estimate", velocity_squared_out(e.error_estimate(), c));
        r.emplace_back("status", std::string("convergence_failure"));
        failed[j] = 1;
      } catch (const ValidationError&) {
        r.emplace_back("value", std::numeric_limits<double>::quiet_NaN());
        r.emplace_back("error_estimate", std::numeric_limits<double>::quiet_NaN());
        r.emplace_back("status", std::string("singular"));
      }
    }
    rows[j] = std::move(r);
  });
  t.rows = std::move(rows);
  t.numerical_failure = std::any_of(failed.begin(), failed.end(), [](char f) { return f != 0; });
  return t;
}

}  // namespace detail

/// Evaluates every command except verify. Throws UsageError/ValidationError
/// on bad input and ConvergenceError when a single evaluation fails.
inline Table evaluate(const RunConfig& c) {
  if (c.command == Command::verify) throw UsageError("verify is handled by the acceptance runner");
  const PhysicalSetup s = detail::setup_of(c);
  Table t;
  t.command = to_string(c.command);
  t.units = to_string(c.units);
  if (c.alpha_factor == 1.0) t.alpha_convention = "gaussian (alpha_LH = alpha_gaussian)";
  t.inputs = detail::setup_inputs(c);

  switch (c.command) {
    case Command::mean_force: {
      const MeanForce m = mean_force(s);
      t.rows.push_back({{"F_x", detail::force_out(m.force.x, c)},
                        {"F_y", detail::force_out(m.force.y, c)},
                        {"F_z", detail::force_out(m.force.z, c)},
                        {"E2", m.field_squared}});
      break;
    }
    case Command::correlation: {
      for (double sep : c.separations) {
        const double tn = sep * detail::length_scale(c);
        for (Component k : c.components) {
          const CorrelationSample v = force_corr_no(k, tn, s);
          t.rows.push_back({{"component", std::string(to_string(k))},
                            {"T", sep},
                            {"value", detail::correlation_out(v.value, c)},
                            {"connected", v.connected}});
        }
      }
      const CoincidentStats st = coincident_force_stats(s);
      t.inputs.emplace_back("coincident_var_x", detail::correlation_out(st.var_x, c));
      t.inputs.emplace_back("coincident_var_z", detail::correlation_out(st.var_z, c));
      t.inputs.emplace_back("coincident_delta", st.delta);
      break;
    }
    case Command::dispersion: {
      if (c.t.has_value() == c.t_over_z.has_value()) throw UsageError("dispersion needs exactly one of --t, --t-over-z");
      const double time = c.t ? *c.t * detail::length_scale(c) : *c.t_over_z * s.z;
      if (c.t_over_z) t.inputs.emplace_back("t_over_z", *c.t_over_z);
      for (Component k : c.components)
        for (Term term : c.terms) t.rows.push_back(detail::dispersion_row(dispersion(k, term, time, s), c));
      break;
    }
    case Command::asymptotes: {
      for (Component k : c.components)
        for (Term term : c.terms) {
          const DispersionResult d = asymptote(k, term, s);
          const Rational coef = exact::asymptote_coefficient(k, term);
          const Rational ratio = coef / exact::asymptote_coefficient(k, Term::normal);
          t.rows.push_back({{"component", std::string(to_string(k))},
                            {"term", std::string(to_string(term))},
                            {"value", detail::velocity_squared_out(d.value, c)},
                            {"coefficient", detail::rational_string(coef)},
                            {"pi_power", -4LL},
                            {"ratio_to_normal", ratio.get_d()}});
        }
      t.inputs.emplace_back("anisotropy_ratio", anisotropy_ratio(s));
      break;
    }
    case Command::temperature: {
      UnitConvention conv = detail::convention_of(c);
      const EffectiveTemperature e = effective_temperature(s, conv);
      t.rows.push_back({{"T_eff_natural", e.natural},
                        {"T_eff_kelvin", e.kelvin},
                        {"hydrogen_reference_kelvin", e.hydrogen_reference_kelvin},
                        {"mass_ratio", e.mass_ratio},
                        {"distance_factor", e.distance_factor},
                        {"alpha_ratio_squared", e.alpha_ratio_squared},
                        {"convention", e.convention},
                        {"note", std::string("the often quoted 0.1 K is an order of magnitude only; the value depends "
                                             "on the polarizability convention")}});
      break;
    }
    case Command::bound: {
      const double dz = c.delta_z * detail::length_scale(c);
      t.inputs.emplace_back("delta_z", c.delta_z);
      const QuantumBound b = quantum_bound(s, dz);
      const double vs = unit_scale(UnitKind::velocity, detail::convention_of(c));
      t.rows.push_back({{"delta_v_f", b.delta_v_f / vs},
                        {"estimate", b.estimate / vs},
                        {"bound_ratio", b.bound_ratio},
                        {"small", b.small},
                        {"warning", b.warning}});
      break;
    }
    case Command::sweep: {
      Table sw = detail::sweep(c, s);
      sw.units = t.units;
      sw.alpha_convention = t.alpha_convention;
      return sw;
    }
    case Command::verify: break;
  }
  return t;
}

}  // namespace vdw

#endif  // VDWFLUCT_REPORT_HPP
