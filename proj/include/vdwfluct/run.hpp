#ifndef VDWFLUCT_RUN_HPP
#define VDWFLUCT_RUN_HPP

// Command dispatch shared by the CLI and its tests: text to print and the
// process exit code.

#include <string>

#include "vdwfluct/acceptance.hpp"
#include "vdwfluct/errors.hpp"
#include "vdwfluct/report.hpp"

namespace vdw {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int usage = 2;
inline constexpr int numerical = 3;
}  // namespace exit_code

struct RunOutcome {
  std::string out;
  std::string err;
  int code = exit_code::ok;
};

inline RunOutcome run(const RunConfig& c) {
  RunOutcome o;
  try {
    if (c.command == Command::verify) {
      const auto results = acceptance::run_all();
      int failed = 0;
      for (const auto& r : results) {
        o.out += acceptance::format_line(r) + "\n";
        failed += r.passed ? 0 : 1;
      }
      o.out += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " criteria passed\n";
      o.code = failed == 0 ? exit_code::ok : exit_code::verify_failed;
      return o;
    }
    const Table t = evaluate(c);
    o.out = render(t, c.format);
    if (t.numerical_failure) {
      o.err = "error: one or more sweep points did not converge\n";
      o.code = exit_code::numerical;
    }
  } catch (const ConvergenceError& e) {
    o.err = std::string("error: ") + e.what() + " (best estimate " + format_double(e.best_estimate()) +
            ", error estimate " + format_double(e.error_estimate()) + ")\n";
    o.code = exit_code::numerical;
  } catch (const Error& e) {
    o.err = std::string("error: ") + e.what() + "\n";
    o.code = exit_code::usage;
  }
  return o;
}

}  // namespace vdw

#endif  // VDWFLUCT_RUN_HPP
