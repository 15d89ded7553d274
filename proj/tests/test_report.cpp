#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <nlohmann/json.hpp>

#include "vdwfluct/run.hpp"

namespace {

using vdw::Command;
using vdw::Component;
using vdw::Format;
using vdw::RunConfig;
using vdw::Term;

TEST(Grid, ParsesLogAndLinear) {
  const auto g = vdw::parse_grid("10:10000:4log");
  EXPECT_TRUE(g.log);
  const auto p = g.points();
  ASSERT_EQ(p.size(), 4u);
  EXPECT_DOUBLE_EQ(p[0], 10.0);
  EXPECT_NEAR(p[1], 100.0, 1e-12);
  EXPECT_NEAR(p[2], 1000.0, 1e-9);
  EXPECT_EQ(p[3], 10000.0);

  const auto l = vdw::parse_grid("1:3:3lin").points();
  EXPECT_EQ(l, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(vdw::parse_grid("5:5:1").points(), std::vector<double>{5.0});
}

TEST(Grid, RejectsBadSpecs) {
  EXPECT_THROW(vdw::parse_grid("10:100"), vdw::UsageError);
  EXPECT_THROW(vdw::parse_grid("a:100:3"), vdw::UsageError);
  EXPECT_THROW(vdw::parse_grid("1:2:3x"), vdw::UsageError);
  EXPECT_THROW(vdw::parse_grid("1:2:0"), vdw::ValidationError);
  EXPECT_THROW(vdw::parse_grid("5:1:3"), vdw::ValidationError);
  EXPECT_THROW(vdw::parse_grid("0:1:3log"), vdw::ValidationError);
}

TEST(Format, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -0.037995443865876666, 1e-300, 6.02214076e23}) {
    const std::string s = vdw::format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
    EXPECT_LE(s.size(), 24u);
  }
  EXPECT_EQ(vdw::format_double(0.1), "0.1");
  EXPECT_EQ(vdw::format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
}

TEST(Json, MeanForceSchema) {
  RunConfig c;
  c.command = Command::mean_force;
  const auto j = nlohmann::json::parse(vdw::render(vdw::evaluate(c), Format::json));
  EXPECT_EQ(j["command"], "mean-force");
  EXPECT_EQ(j["inputs"]["alpha"], 1.0);
  EXPECT_NEAR(j["results"][0]["F_z"].get<double>(), -0.0379954, 1e-7);
  EXPECT_EQ(j["metadata"]["units"], "natural");
  EXPECT_TRUE(j["metadata"]["alpha_convention"].is_string());
  EXPECT_TRUE(j["metadata"]["version"].is_string());
}

TEST(Csv, HeaderAndMetadataColumns) {
  RunConfig c;
  c.command = Command::asymptotes;
  c.format = Format::csv;
  const std::string out = vdw::render(vdw::evaluate(c), Format::csv);
  const std::string header = out.substr(0, out.find('\n'));
  EXPECT_EQ(header, "component,term,value,coefficient,pi_power,ratio_to_normal,units,alpha_convention");
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 10);
  EXPECT_NE(out.find("z,total,"), std::string::npos);
  EXPECT_NE(out.find("-3787/3840"), std::string::npos);
}

TEST(Csv, GaussianConventionRecorded) {
  RunConfig c;
  c.command = Command::mean_force;
  c.alpha_factor = 1.0;
  EXPECT_NE(vdw::render(vdw::evaluate(c), Format::csv).find("gaussian (alpha_LH = alpha_gaussian)"),
            std::string::npos);
}

TEST(Sweep, ConvergesToClosedForm) {
  RunConfig c;
  c.command = Command::sweep;
  c.components = {Component::z};
  c.terms = {Term::total};
  c.grid = vdw::parse_grid("10:10000:20log");
  const auto t = vdw::evaluate(c);
  ASSERT_EQ(t.rows.size(), 20u);
  EXPECT_FALSE(t.numerical_failure);
  const auto last = std::get<double>(std::find_if(t.rows.back().begin(), t.rows.back().end(), [](const auto& kv) {
                                       return kv.first == "value";
                                     })->second);
  EXPECT_NEAR(last, -3787.0 / (3840.0 * std::pow(std::numbers::pi, 4)), 1e-6 * 0.0102);
}

TEST(Sweep, RowOrderIndependentOfThreads) {
  RunConfig c;
  c.command = Command::sweep;
  c.grid = vdw::parse_grid("3:300:9log");
  c.format = Format::csv;
  c.threads = 1;
  const std::string one = vdw::render(vdw::evaluate(c), Format::csv);
  for (int threads : {2, 3, 7, 16}) {
    c.threads = threads;
    EXPECT_EQ(vdw::render(vdw::evaluate(c), Format::csv), one) << threads;
  }
}

TEST(Sweep, SingularGridPointFlagged) {
  RunConfig c;
  c.command = Command::sweep;
  c.components = {Component::x};
  c.terms = {Term::normal};
  c.grid = vdw::parse_grid("1:3:3");
  c.threads = 3;
  const auto t = vdw::evaluate(c);
  EXPECT_FALSE(t.numerical_failure);
  EXPECT_EQ(std::get<std::string>(t.rows[1].back().second), "singular");
  EXPECT_EQ(std::get<std::string>(t.rows[0].back().second), "ok");
}

TEST(Sweep, CorrelationObservable) {
  RunConfig c;
  c.command = Command::sweep;
  c.observable = vdw::Observable::correlation;
  c.components = {Component::x, Component::z};
  c.grid = vdw::parse_grid("1:3:3");
  const auto t = vdw::evaluate(c);
  ASSERT_EQ(t.rows.size(), 6u);
  EXPECT_EQ(std::get<std::string>(t.rows[2].back().second), "singular");
}

TEST(Run, ExitCodes) {
  RunConfig c;
  c.command = Command::mean_force;
  EXPECT_EQ(vdw::run(c).code, 0);

  c.z = -1.0;
  const auto bad = vdw::run(c);
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(bad.out.empty());
  EXPECT_NE(bad.err.find("error:"), std::string::npos);

  RunConfig d;
  d.command = Command::dispersion;
  EXPECT_EQ(vdw::run(d).code, 2);  // neither --t nor --t-over-z
  d.t_over_z = 2.0;
  EXPECT_EQ(vdw::run(d).code, 2);  // pole on the endpoint

  RunConfig b;
  b.command = Command::bound;
  b.delta_z = 2.0;
  EXPECT_EQ(vdw::run(b).code, 2);

  RunConfig corr;
  corr.command = Command::correlation;
  corr.separations = {2.0};
  EXPECT_EQ(vdw::run(corr).code, 2);
}

TEST(Run, HydrogenLengthsInAngstrom) {
  RunConfig c;
  c.command = Command::temperature;
  c.hydrogen = true;
  c.units = vdw::UnitSystem::si;
  const auto t = vdw::evaluate(c);
  EXPECT_NEAR(std::get<double>(t.rows[0][1].second), 2.1234, 1e-3);
}

TEST(Run, Deterministic) {
  RunConfig c;
  c.command = Command::dispersion;
  c.t_over_z = 50.0;
  c.format = Format::json;
  EXPECT_EQ(vdw::run(c).out, vdw::run(c).out);
}

}  // namespace
