#include "gaugefield/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "gaugefield/abphase.hpp"
#include "gaugefield/potentials.hpp"

namespace gaugefield
{

using nlohmann::json;

namespace
{

const char *const units_note = "Heaviside-Lorentz units, c = hbar = 1; phase = q * circulation";

int guarded(std::ostream &err, const std::function<int()> &body)
{
  try
  {
    return body();
  }
  catch (const ConfigError &e)
  {
    err << "config error: " << e.what() << "\n";
    return exit_config_error;
  }
  catch (const IntegrationError &e)
  {
    err << "integration failure: " << e.what() << "\n";
    return exit_numerical_failure;
  }
  catch (const std::domain_error &e)
  {
    err << "numerical failure: " << e.what() << "\n";
    return exit_numerical_failure;
  }
  catch (const std::invalid_argument &e)
  {
    err << "invalid input: " << e.what() << "\n";
    return exit_config_error;
  }
}

void emit(const RunConfig &cfg, const std::string &text, std::ostream &out)
{
  if (cfg.output.path.empty())
  {
    out << text;
    return;
  }
  std::ofstream f(cfg.output.path, std::ios::binary | std::ios::trunc);
  if (!f)
  {
    throw ConfigError("cannot write output file '" + cfg.output.path + "'");
  }
  f << text;
  if (!f)
  {
    throw ConfigError("failed writing output file '" + cfg.output.path + "'");
  }
}

void require_format(const RunConfig &cfg, const std::string &expected)
{
  if (!cfg.output.format.empty() && cfg.output.format != expected)
  {
    throw ConfigError("invalid value '" + cfg.output.format + "' for 'output.format' (this command writes " +
                      expected + ")");
  }
}

const SourceSpec &require_source(const RunConfig &cfg)
{
  if (!cfg.source)
  {
    throw ConfigError("missing key 'source'");
  }
  return *cfg.source;
}

// Static solenoid seen by commands that need a flux; time-varying ones are
// frozen at cfg.time.
std::optional<SolenoidParams> as_solenoid(const SourceSpec &s, double t)
{
  if (const auto *p = std::get_if<SolenoidParams>(&s))
  {
    return *p;
  }
  if (const auto *p = std::get_if<TimeVaryingSolenoid>(&s))
  {
    return p->at(t);
  }
  return std::nullopt;
}

std::optional<VectorField> b_field(const SourceSpec &s)
{
  if (const auto *p = std::get_if<SolenoidParams>(&s))
  {
    return magnetic_field(*p);
  }
  if (const auto *p = std::get_if<TimeVaryingSolenoid>(&s))
  {
    return magnetic_field(*p);
  }
  if (const auto *p = std::get_if<CompactTestField>(&s))
  {
    return magnetic_field(*p);
  }
  return std::nullopt;
}

std::optional<VectorField> e_field(const SourceSpec &s)
{
  if (const auto *p = std::get_if<PointCharge>(&s))
  {
    return electric_field(*p);
  }
  if (const auto *p = std::get_if<TimeVaryingSolenoid>(&s))
  {
    return electric_field(*p);
  }
  return std::nullopt;
}

bool is_solenoid(const SourceSpec &s) { return s.index() == 0 || s.index() == 1; }

std::vector<Vec3> rotated_probes(const std::vector<std::pair<double, double>> &rho_angle, double R,
                                 const std::vector<double> &z)
{
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < rho_angle.size(); ++i)
  {
    const auto [rho, th] = rho_angle[i];
    out.push_back({rho * R * std::cos(th), rho * R * std::sin(th), z[i] * R});
  }
  return out;
}

} // namespace

VerificationReport run_checks(const RunConfig &cfg)
{
  const VerifyPlan &plan = cfg.checks;
  VerificationReport report;
  std::string names;
  auto note = [&](const char *n) { names += (names.empty() ? "" : ",") + std::string(n); };

  auto static_solenoid = [&](const char *check)
  {
    const auto s = cfg.source ? as_solenoid(*cfg.source, cfg.time) : std::nullopt;
    if (!s)
    {
      throw ConfigError(std::string("check '") + check + "' needs a solenoid or time_varying_solenoid source");
    }
    return *s;
  };

  if (plan.eq13)
  {
    note("eq13");
    const auto *tv = cfg.source ? std::get_if<TimeVaryingSolenoid>(&*cfg.source) : nullptr;
    if (!tv)
    {
      throw ConfigError("check 'eq13' needs a time_varying_solenoid source");
    }
    const Eq13Check &c = *plan.eq13;
    const double R = tv->radius();
    const std::vector<Vec3> probes =
      c.probes.empty() ? rotated_probes({{2.0, 0.7}, {3.0, -2.1}}, R, {0.2, -0.4}) : c.probes;
    const QuadratureSpec spec = c.quadrature ? *c.quadrature : default_quadrature(*cfg.source);
    const FDScheme fd(c.h > 0.0 ? c.h : 1e-3 * R, c.order);
    report.append(verify_eq13(*tv, probes, c.t, spec, fd, c.dt, c.options));
  }
  if (plan.decay)
  {
    note("decay");
    const DecayCheck &c = *plan.decay;
    std::vector<double> radii = c.radii;
    if (radii.empty())
    {
      for (int m = 2; m <= 7; ++m)
      {
        radii.push_back((2.0 * m + 0.5) * pi / c.k);
      }
    }
    for (DecayKind k : c.kinds)
    {
      report.append(surface_decay_report(DecayProbe(k, radii, c.field_point, c.k, c.support)));
    }
  }
  if (plan.angular_kernel)
  {
    note("angular_kernel");
    const auto &c = *plan.angular_kernel;
    report.append(check_angular_kernel(c.points, c.n_theta, c.tolerance));
  }
  if (plan.radial_assembly)
  {
    note("radial_assembly");
    const auto &c = *plan.radial_assembly;
    const SolenoidParams s = static_solenoid("radial_assembly");
    std::vector<double> radii = c.radii;
    if (radii.empty())
    {
      for (int i = 0; i < 10; ++i)
      {
        radii.push_back(0.1 * s.radius() * std::pow(100.0, i / 9.0));
      }
    }
    report.append(check_radial_assembly(s, radii, c.n_rho, c.tolerance, c.continuity_tolerance));
  }
  if (plan.coulomb_residual)
  {
    note("coulomb_residual");
    const auto &c = *plan.coulomb_residual;
    const SolenoidParams s = static_solenoid("coulomb_residual");
    const double R = s.radius();
    const std::vector<Vec3> probes =
      c.probes.empty()
        ? rotated_probes({{1.5, 0.4}, {2.0, 1.1}, {3.0, 2.0}, {4.0, -2.5}, {5.0, -0.7}}, R, {0.0, 0.3, -0.5, 1.0, 0.0})
        : c.probes;
    const QuadratureSpec spec = c.quadrature ? *c.quadrature : default_quadrature(*cfg.source);
    report.append(check_coulomb_residual(s, probes, spec, c.h > 0.0 ? c.h : 1e-3 * R, c.tolerance));
  }
  if (plan.minimality)
  {
    note("minimality");
    report.append(check_minimality(static_solenoid("minimality"), *plan.minimality));
  }
  report.metadata.emplace_back("checks", names);
  report.metadata.emplace_back("source", cfg.source ? source_kind(*cfg.source) : "none");
  return report;
}

int cmd_potential(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return guarded(err,
                 [&]
                 {
                   require_format(cfg, "csv");
                   const SourceSpec &src = require_source(cfg);
                   if (cfg.probes.points.empty())
                   {
                     throw ConfigError("no probes: 'probes' is missing or empty");
                   }
                   const QuadratureSpec spec = cfg.quadrature ? *cfg.quadrature : default_quadrature(src);
                   spec.validate();
                   FieldTable table;
                   const double t = cfg.time;
                   if (cfg.quantity == "A")
                   {
                     const auto B = b_field(src);
                     if (!B)
                     {
                       throw ConfigError("'quantity' A needs a magnetic source, got '" + source_kind(src) + "'");
                     }
                     const bool sol = is_solenoid(src);
                     table.columns = {"x", "y", "z", "t", "A_x", "A_y", "A_z"};
                     if (sol)
                     {
                       table.columns.push_back("A_theta");
                     }
                     for (const Vec3 &p : cfg.probes.points)
                     {
                       const Vec3 a = vector_potential(*B, p, t, spec);
                       std::vector<double> row{p.x, p.y, p.z, t, a.x, a.y, a.z};
                       if (sol)
                       {
                         row.push_back(dot(a, theta_hat(p)));
                       }
                       table.rows.push_back(row);
                     }
                   }
                   else
                   {
                     const auto E = e_field(src);
                     if (!E)
                     {
                       throw ConfigError("'quantity' V needs an electric source, got '" + source_kind(src) + "'");
                     }
                     table.columns = {"x", "y", "z", "t", "V"};
                     for (const Vec3 &p : cfg.probes.points)
                     {
                       table.rows.push_back({p.x, p.y, p.z, t, scalar_potential(*E, p, t, spec)});
                     }
                   }
                   std::ostringstream os;
                   write_csv(os, table);
                   emit(cfg, os.str(), out);
                   return int(exit_ok);
                 });
}

int cmd_solenoid(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return guarded(err,
                 [&]
                 {
                   require_format(cfg, "csv");
                   const auto s = as_solenoid(require_source(cfg), cfg.time);
                   if (!s)
                   {
                     throw ConfigError("'source.kind' must be solenoid or time_varying_solenoid");
                   }
                   if (cfg.probes.points.empty())
                   {
                     throw ConfigError("no probes: 'probes' is missing or empty");
                   }
                   FieldTable table;
                   table.columns = {"x", "y", "z", "rho", "A_theta", "B_z"};
                   for (const Vec3 &p : cfg.probes.points)
                   {
                     const double rho = std::hypot(p.x, p.y);
                     table.rows.push_back({p.x, p.y, p.z, rho, dot(solenoid_A_analytic(*s, p), theta_hat(p)),
                                           solenoid_B(*s, p).z});
                   }
                   std::ostringstream os;
                   write_csv(os, table);
                   emit(cfg, os.str(), out);
                   return int(exit_ok);
                 });
}

int cmd_abphase(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return guarded(err,
                 [&]
                 {
                   require_format(cfg, "json");
                   const auto s = as_solenoid(require_source(cfg), cfg.time);
                   if (!s)
                   {
                     throw ConfigError("'source.kind' must be solenoid or time_varying_solenoid");
                   }
                   if (cfg.probes.points.empty())
                   {
                     throw ConfigError("no probes: abphase needs 'probes.loop' or 'probes.points' as the path");
                   }
                   if (cfg.probes.kind != "loop" && cfg.probes.kind != "points")
                   {
                     throw ConfigError("abphase takes its path from 'probes.loop' or 'probes.points'");
                   }
                   const PolylinePath path =
                     cfg.probes.loop ? cfg.probes.loop->path() : PolylinePath(cfg.probes.points);

                   StaticVectorFn A;
                   if (cfg.potential == "analytic")
                   {
                     A = [sol = *s](const Vec3 &p) { return solenoid_A_analytic(sol, p); };
                   }
                   else
                   {
                     const QuadratureSpec spec = cfg.quadrature ? *cfg.quadrature : default_quadrature(*cfg.source);
                     A = [B = magnetic_field(*s), spec](const Vec3 &p) { return vector_potential(B, p, 0.0, spec); };
                   }
                   // one pass over the path: the numeric A is expensive
                   const double circ = circulation(A, path);
                   const double phase = cfg.q * circ;

                   json j = json::object();
                   j["circulation"] = circ;
                   try
                   {
                     j["enclosed_flux"] = enclosed_flux(*s, path);
                   }
                   catch (const std::domain_error &)
                   {
                     j["enclosed_flux"] = nullptr;
                   }
                   try
                   {
                     j["winding"] = winding_number(path);
                   }
                   catch (const std::domain_error &)
                   {
                     j["winding"] = nullptr;
                   }
                   j["phase"] = phase;
                   j["q"] = cfg.q;
                   j["segments"] = path.num_segments();
                   j["potential"] = cfg.potential;
                   j["units_note"] = units_note;
                   emit(cfg, dump_json(j), out);
                   return int(exit_ok);
                 });
}

int cmd_verify(const RunConfig &cfg, std::ostream &out, std::ostream &err)
{
  return guarded(err,
                 [&]
                 {
                   require_format(cfg, "json");
                   const VerifyPlan &p = cfg.checks;
                   if (!p.eq13 && !p.decay && !p.angular_kernel && !p.radial_assembly && !p.coulomb_residual &&
                       !p.minimality)
                   {
                     throw ConfigError("no checks: 'checks' is missing or empty");
                   }
                   const VerificationReport report = run_checks(cfg);
                   emit(cfg, dump_json(report_to_json(report, cfg.echo)), out);
                   if (report.all_pass())
                   {
                     return int(exit_ok);
                   }
                   for (const auto &c : report.checks)
                   {
                     if (!c.pass)
                     {
                       err << "FAILED " << c.name << ": value " << format_double(c.value) << ", tolerance "
                           << format_double(c.tolerance) << "\n";
                     }
                   }
                   return int(exit_verification_failed);
                 });
}

int run_command(const std::string &command, const std::string &config_path, const std::string &out_path,
                std::ostream &out, std::ostream &err)
{
  RunConfig cfg;
  const int rc = guarded(err,
                         [&]
                         {
                           cfg = load_config(config_path);
                           return int(exit_ok);
                         });
  if (rc != exit_ok)
  {
    return rc;
  }
  if (!out_path.empty())
  {
    cfg.output.path = out_path;
  }
  if (command == "potential")
  {
    return cmd_potential(cfg, out, err);
  }
  if (command == "abphase")
  {
    return cmd_abphase(cfg, out, err);
  }
  if (command == "verify")
  {
    return cmd_verify(cfg, out, err);
  }
  if (command == "solenoid")
  {
    return cmd_solenoid(cfg, out, err);
  }
  err << "unknown command '" << command << "' (expected potential, abphase, verify or solenoid)\n";
  return exit_config_error;
}

} // namespace gaugefield
