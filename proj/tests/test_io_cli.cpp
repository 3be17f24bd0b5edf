#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gaugefield/cli.hpp"
#include "gaugefield/io.hpp"

using namespace gaugefield;
using nlohmann::json;

namespace
{

const std::string config_dir = GAUGEFIELD_CONFIG_DIR;

std::string error_of(const std::string &text)
{
  try
  {
    parse_config(text);
  }
  catch (const ConfigError &e)
  {
    return e.what();
  }
  return "";
}

bool contains(const std::string &s, const std::string &part) { return s.find(part) != std::string::npos; }

std::filesystem::path scratch(const std::string &name)
{
  const auto dir = std::filesystem::temp_directory_path() / "gaugefield_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string &name, const std::string &text)
{
  const auto p = scratch(name);
  std::ofstream(p, std::ios::binary) << text;
  return p.string();
}

const char *solenoid_source = R"("source": {"kind": "solenoid", "flux": 1.0, "radius": 1.0})";

} // namespace

TEST_CASE("strict config parsing")
{
  CHECK(contains(error_of(R"({"sourse": {}})"), "unknown key 'sourse'"));
  CHECK(contains(error_of(R"({"source": {"kind": "solenoid", "flux": 1, "radius": 1, "lenght": 2}})"),
                 "source.lenght"));
  CHECK(contains(error_of(R"({"source": {"kind": "toroid"}})"), "toroid"));
  CHECK(contains(error_of(R"({"source": {"kind": "solenoid", "flux": "big", "radius": 1}})"), "source.flux"));
  CHECK(contains(error_of(R"({"source": {"kind": "solenoid", "flux": 1, "radius": -1}})"), "radius"));
  CHECK(contains(error_of("{\n  \"source\": {\n    \"kind\": ,\n  }\n}"), "line 3"));
  CHECK(contains(error_of(R"({"version": 2})"), "version"));
  CHECK(contains(error_of(R"({"checks": {"eq14": {}}})"), "unknown check 'eq14'"));
  CHECK(contains(error_of(R"({"probes": {"points": [[0, 1, 0]], "rho_sweep": {"from": 1, "to": 2, "count": 3}}})"),
                 "probes"));
  CHECK(contains(error_of(R"({"quadrature": {"preset": "cylinder", "rho_max": 1, "z_half": 1, "cells": [0, 4, 4]}})"),
                 "quadrature"));
  CHECK(error_of(R"({"version": 1})").empty());
}

TEST_CASE("config values")
{
  const RunConfig cfg = parse_config(R"({
    "source": {"kind": "time_varying_solenoid", "radius": 2.0,
               "law": {"type": "sinusoidal", "phi0": 3.0, "omega": 0.5}},
    "time": 1.5,
    "probes": {"rho_sweep": {"from": 1.0, "to": 3.0, "count": 5, "theta": 0.5, "z": 0.25}},
    "checks": {"eq13": {"probes": [[4, 0, 0]], "tolerance": 0.02}, "minimality": {"functions": 3, "seed": 7}}
  })");
  REQUIRE(cfg.source);
  const auto &tv = std::get<TimeVaryingSolenoid>(*cfg.source);
  CHECK(tv.radius() == 2.0);
  CHECK(tv.flux(1.0) == doctest::Approx(3.0 * std::sin(0.5)));
  CHECK(cfg.time == 1.5);
  REQUIRE(cfg.probes.points.size() == 5);
  CHECK(norm(cfg.probes.points[4] - Vec3{3.0 * std::cos(0.5), 3.0 * std::sin(0.5), 0.25}) < 1e-14);
  REQUIRE(cfg.checks.eq13);
  CHECK(cfg.checks.eq13->options.relative_tolerance == 0.02);
  REQUIRE(cfg.checks.minimality);
  CHECK(cfg.checks.minimality->seed == 7u);
  CHECK_FALSE(cfg.checks.decay);

  const RunConfig grid = parse_config(R"({"probes": {"grid": {"origin": [0, 0, 0], "spacing": [1, 1, 1], "dims": [2, 3, 2]}}})");
  CHECK(grid.probes.points.size() == 12);

  const RunConfig loop = parse_config(R"({"probes": {"loop": {"radius": 2.0, "segments": 64, "turns": 3}}})");
  REQUIRE(loop.probes.loop);
  CHECK(loop.probes.loop->path().num_segments() == 3u * 64u);
}

TEST_CASE("shipped configs parse")
{
  for (const auto &entry : std::filesystem::directory_iterator(config_dir))
  {
    CAPTURE(entry.path().string());
    CHECK_NOTHROW(load_config(entry.path().string()));
  }
  CHECK_THROWS_AS(load_config(config_dir + "/missing.json"), ConfigError);
}

TEST_CASE("default quadrature")
{
  const QuadratureSpec sol = default_quadrature(SolenoidParams(1.0, 2.0));
  CHECK(sol.frame == Frame::cylindrical);
  CHECK(sol.axes[0].hi == 2.0);
  CHECK(sol.axes[2].hi == doctest::Approx(200.0));
  CHECK(sol.anchor_to_probe);
  const QuadratureSpec pc = default_quadrature(PointCharge(1.0, {1, 2, 3}));
  CHECK(pc.frame == Frame::spherical);
}

TEST_CASE("quadrature json round trip")
{
  QuadratureSpec s = QuadratureSpec::cylinder(1.5, 30.0, {8, 16, 32}, {Rule::gauss2, Rule::midpoint, Rule::gauss4});
  s.origin = {0.1, -0.2, 0.3};
  s.policy = SingularPolicy::shifted_centroid;
  s.epsilon = 1e-3;
  const QuadratureSpec back = quadrature_from_json(to_json(s));
  CHECK(to_json(back) == to_json(s));
  CHECK(back.axes[2].unbounded);
}

TEST_CASE("csv output")
{
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.0) == "-2");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

  FieldTable t{{"x", "A_x"}, {{1.0, 1.0 / 3.0}, {-2.5, 1e-300}}};
  std::ostringstream os;
  write_csv(os, t);
  const std::string text = os.str();
  CHECK(text.rfind(units_header, 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  std::istringstream is(text);
  const FieldTable back = read_csv(is);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);

  FieldTable bad{{"x"}, {{NAN}}};
  std::ostringstream sink;
  CHECK_THROWS_AS(write_csv(sink, bad), std::domain_error);
}

TEST_CASE("report json")
{
  VerificationReport r;
  r.checks.push_back({"a", 0.5, 1.0, true, ""});
  r.checks.push_back({"b", 2.0, 1.0, false, "too large"});
  r.traces.push_back({"t", {{1.0, 2.0}, {2.0, 0.5}}});
  r.metadata.push_back({"source", "solenoid"});
  const json j = report_to_json(r, json{{"k", 1}});
  CHECK(j.at("version") == report_version);
  CHECK(j.at("checks").size() == 2);
  CHECK_FALSE(j.at("checks")[0].contains("note"));
  CHECK(j.at("checks")[1].at("note") == "too large");
  const VerificationReport back = report_from_json(j);
  CHECK(back.checks.size() == 2);
  CHECK(back.checks[1].value == 2.0);
  CHECK(back.traces[0].points == r.traces[0].points);
  CHECK(dump_json(j) == dump_json(report_to_json(back, json{{"k", 1}})));
  CHECK(dump_json(j).back() == '\n');
}

TEST_CASE("potential command")
{
  const RunConfig cfg = parse_config(std::string("{") + solenoid_source + R"(,
    "quadrature": {"preset": "cylinder", "rho_max": 1, "z_half": 20, "cells": [16, 64, 64]},
    "probes": {"points": [[0, 2, 0], [0.5, 0, 0]]}})");
  std::ostringstream out, err;
  REQUIRE(cmd_potential(cfg, out, err) == exit_ok);
  std::istringstream is(out.str());
  const FieldTable t = read_csv(is);
  CHECK(t.columns == std::vector<std::string>{"x", "y", "z", "t", "A_x", "A_y", "A_z", "A_theta"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0][7] == doctest::Approx(1.0 / (4.0 * pi)).epsilon(0.02));

  RunConfig none = cfg;
  none.probes = {};
  std::ostringstream o2, e2;
  CHECK(cmd_potential(none, o2, e2) == exit_config_error);
  CHECK(contains(e2.str(), "no probes"));

  const RunConfig v = parse_config(R"({"source": {"kind": "point_charge", "q": 12.566370614359172},
    "quantity": "V", "quadrature": {"preset": "sphere", "radial_scale": 4, "cells": [32, 17, 33]},
    "probes": {"points": [[2, 0, 0]]}})");
  std::ostringstream o3, e3;
  REQUIRE(cmd_potential(v, o3, e3) == exit_ok);
  std::istringstream i3(o3.str());
  const FieldTable tv = read_csv(i3);
  CHECK(tv.columns.back() == "V");
  CHECK(tv.rows[0].back() == doctest::Approx(0.5).epsilon(0.01));

  const RunConfig at_charge = parse_config(R"({"source": {"kind": "point_charge", "q": 1},
    "quantity": "V", "probes": {"points": [[0, 0, 0]]}})");
  std::ostringstream o4, e4;
  CHECK(cmd_potential(at_charge, o4, e4) == exit_numerical_failure);
}

TEST_CASE("abphase command")
{
  const RunConfig cfg = parse_config(std::string("{") + solenoid_source + R"(,
    "q": 2.0, "probes": {"loop": {"radius": 2.0, "segments": 720}}})");
  std::ostringstream out, err;
  REQUIRE(cmd_abphase(cfg, out, err) == exit_ok);
  const json j = json::parse(out.str());
  CHECK(j.at("circulation").get<double>() == doctest::Approx(1.0).epsilon(1e-5));
  CHECK(j.at("phase").get<double>() == doctest::Approx(2.0).epsilon(1e-5));
  CHECK(j.at("winding") == 1);
  CHECK(j.at("enclosed_flux").get<double>() == doctest::Approx(1.0));

  const RunConfig wall = parse_config(std::string("{") + solenoid_source + R"(,
    "probes": {"loop": {"center": [1, 0, 0], "radius": 0.5, "segments": 64}}})");
  std::ostringstream o2, e2;
  REQUIRE(cmd_abphase(wall, o2, e2) == exit_ok);
  CHECK(json::parse(o2.str()).at("enclosed_flux").is_null());

  const RunConfig pc = parse_config(R"({"source": {"kind": "point_charge", "q": 1},
    "probes": {"loop": {"radius": 2.0}}})");
  std::ostringstream o3, e3;
  CHECK(cmd_abphase(pc, o3, e3) == exit_config_error);
}

TEST_CASE("solenoid command")
{
  const RunConfig cfg = parse_config(R"({"source": {"kind": "solenoid", "flux": 0.0, "radius": 1.0},
    "probes": {"rho_sweep": {"from": 0.5, "to": 2.0, "count": 4}}})");
  std::ostringstream out, err;
  REQUIRE(cmd_solenoid(cfg, out, err) == exit_ok);
  std::istringstream is(out.str());
  const FieldTable t = read_csv(is);
  CHECK(t.columns == std::vector<std::string>{"x", "y", "z", "rho", "A_theta", "B_z"});
  for (const auto &row : t.rows)
  {
    CHECK(row[4] == 0.0);
    CHECK(row[5] == 0.0);
  }

  // A_theta rises to the wall, then falls as 1/rho; B_z drops to zero
  const RunConfig sweep = parse_config(R"({"source": {"kind": "solenoid", "flux": 1.0, "radius": 1.0},
    "probes": {"points": [[0.9, 0, 0], [0.999, 0, 0], [1.001, 0, 0], [1.1, 0, 0]]}})");
  std::ostringstream o2, e2;
  REQUIRE(cmd_solenoid(sweep, o2, e2) == exit_ok);
  std::istringstream i2(o2.str());
  const FieldTable s = read_csv(i2);
  CHECK(s.rows[0][4] < s.rows[1][4]);
  CHECK(s.rows[2][4] > s.rows[3][4]);
  CHECK(s.rows[1][4] == doctest::Approx(s.rows[2][4]).epsilon(3e-3));
  CHECK(s.rows[1][5] == doctest::Approx(1.0 / pi));
  CHECK(s.rows[2][5] == 0.0);

  const std::string bad = write_file("bad_radius.json", R"({"source": {"kind": "solenoid", "flux": 1, "radius": 0},
    "probes": {"points": [[1, 0, 0]]}})");
  std::ostringstream o3, e3;
  CHECK(run_command("solenoid", bad, "", o3, e3) == exit_config_error);
}

TEST_CASE("verify command")
{
  const std::string quick = write_file("quick.json", std::string("{") + solenoid_source + R"(,
    "checks": {"angular_kernel": {}, "radial_assembly": {}, "decay": {"kinds": ["dipole_like", "compact"]}}})");
  std::ostringstream out, err;
  REQUIRE(run_command("verify", quick, "", out, err) == exit_ok);
  const VerificationReport r = report_from_json(json::parse(out.str()));
  CHECK(r.all_pass());
  CHECK(r.checks.size() > 10);

  // identical bytes on a rerun, and --out writes the same document
  std::ostringstream again, err2;
  run_command("verify", quick, "", again, err2);
  CHECK(again.str() == out.str());
  const auto file = scratch("quick_report.json");
  std::ostringstream unused, err3;
  REQUIRE(run_command("verify", quick, file.string(), unused, err3) == exit_ok);
  std::ifstream in(file, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == out.str());

  std::ostringstream o4, e4;
  CHECK(run_command("verify", config_dir + "/verify_coarse.json", "", o4, e4) == exit_verification_failed);
  CHECK(contains(e4.str(), "FAILED"));

  const std::string empty = write_file("empty_checks.json", std::string("{") + solenoid_source + "}");
  std::ostringstream o5, e5;
  CHECK(run_command("verify", empty, "", o5, e5) == exit_config_error);

  const std::string unknown = write_file("unknown_check.json", R"({"checks": {"everything": {}}})");
  std::ostringstream o6, e6;
  CHECK(run_command("verify", unknown, "", o6, e6) == exit_config_error);
  CHECK(contains(e6.str(), "unknown check 'everything'"));

  std::ostringstream o7, e7;
  CHECK(run_command("transmogrify", quick, "", o7, e7) == exit_config_error);
}
