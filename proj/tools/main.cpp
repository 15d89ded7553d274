#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vdwfluct/run.hpp"

namespace {

double parse_number(const std::string& s, const char* flag) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw vdw::UsageError(std::string("bad number '") + s + "' for " + flag);
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Van der Waals force fluctuations near a conducting plate"};
  app.require_subcommand(1);
  app.fallthrough();

  vdw::RunConfig cfg;
  std::string units = "natural", format = "json", out_path, observable = "dispersion";
  std::vector<std::string> components, terms;
  std::vector<double> separations;
  std::string t_over_z;
  std::optional<double> t;
  bool lh = false, gaussian = false;

  app.add_option("--alpha", cfg.alpha, "polarizability (Lorentz-Heaviside)");
  app.add_option("--mass", cfg.mass, "particle mass");
  app.add_option("--z", cfg.z, "distance from the plate");
  app.add_option("--units", units, "natural | si | gaussian")->check(CLI::IsMember({"natural", "si", "gaussian"}));
  app.add_flag("--hydrogen", cfg.hydrogen, "use the polarizability and mass of atomic hydrogen (z in A)");
  auto* lh_flag = app.add_flag("--alpha-lh", lh, "alpha_LH = 4 pi alpha_gaussian (default)");
  app.add_flag("--alpha-gaussian", gaussian, "treat polarizabilities as alpha_LH = alpha_gaussian")->excludes(lh_flag);
  app.add_option("--component", components, "x, y, z (repeatable or comma separated)")->delimiter(',');
  app.add_option("--term", terms, "normal, cross, total (repeatable or comma separated)")->delimiter(',');
  app.add_option("--T", separations, "correlation time separation(s)")->delimiter(',');
  app.add_option("--t", t, "elapsed time as c t in length units");
  app.add_option("--t-over-z", t_over_z, "t/z for dispersion; grid min:max:count[log|lin] for sweep");
  app.add_option("--observable", observable, "sweep observable: dispersion | correlation")
      ->check(CLI::IsMember({"dispersion", "correlation"}));
  app.add_option("--delta-z", cfg.delta_z, "position uncertainty for the quantum bound");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", out_path, "output file (default standard output)");
  app.add_option("--threads", cfg.threads, "sweep worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);

  for (const char* name : {"mean-force", "correlation", "dispersion", "asymptotes", "temperature", "bound", "sweep",
                           "verify"})
    app.add_subcommand(name)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : vdw::exit_code::usage;
  }

  try {
    cfg.command = vdw::parse_command(app.get_subcommands().front()->get_name());
    cfg.units = vdw::parse_unit_system(units);
    cfg.format = vdw::parse_format(format);
    cfg.observable = vdw::parse_observable(observable);
    if (gaussian) cfg.alpha_factor = 1.0;
    if (!components.empty()) {
      cfg.components.clear();
      for (const auto& c : components) cfg.components.push_back(vdw::parse_component(c));
    }
    if (!terms.empty()) {
      cfg.terms.clear();
      for (const auto& s : terms) cfg.terms.push_back(vdw::parse_term(s));
    }
    if (!separations.empty()) cfg.separations = separations;
    cfg.t = t;
    if (cfg.command == vdw::Command::sweep) {
      if (t_over_z.empty()) throw vdw::UsageError("sweep needs --t-over-z min:max:count[log|lin]");
      cfg.grid = vdw::parse_grid(t_over_z);
    } else if (!t_over_z.empty()) {
      cfg.t_over_z = parse_number(t_over_z, "--t-over-z");
    }
  } catch (const vdw::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return vdw::exit_code::usage;
  }

  const vdw::RunOutcome r = vdw::run(cfg);
  if (!r.err.empty()) std::cerr << r.err;
  if (!r.out.empty()) {
    if (out_path.empty()) {
      std::cout << r.out;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      f << r.out;
      if (!f) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return vdw::exit_code::usage;
      }
    }
  }
  return r.code;
}
