// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gaugefield/abphase.hpp"
#include "gaugefield/cli.hpp"
#include "gaugefield/io.hpp"
#include "gaugefield/potentials.hpp"
#include "gaugefield/verify.hpp"

using namespace gaugefield;

namespace
{

constexpr double R = 1.0;
constexpr double Phi = 1.0;

int failures = 0;

void report(int n, bool pass, const std::string &detail)
{
  std::printf("criterion %2d: %s  %s\n", n, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass)
  {
    ++failures;
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double a, double b = 0.0, double c = 0.0)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

// L = 100 R, 64 x 256 x 256 cells
QuadratureSpec solenoid_spec()
{
  QuadratureSpec s =
    QuadratureSpec::cylinder(R, 100.0 * R, {64, 256, 256}, {Rule::midpoint, Rule::midpoint, Rule::gauss4});
  s.anchor_to_probe = true;
  return s;
}

double a_theta_at(const Vec3 &p)
{
  const SolenoidParams s(Phi, R);
  return dot(vector_potential(magnetic_field(s), p, 0.0, solenoid_spec()), theta_hat(p));
}

void exterior_law()
{
  bool pass = true;
  std::string detail;
  for (double rho : {2.0, 5.0})
  {
    const auto t0 = std::chrono::steady_clock::now();
    const Vec3 p{rho * R * std::cos(0.3), rho * R * std::sin(0.3), 0.0};
    const double exact = Phi / (2.0 * pi * rho * R);
    const double rel = std::abs(a_theta_at(p) - exact) / exact;
    const double dt = seconds_since(t0);
    pass = pass && rel <= 0.01 && dt <= 300.0;
    detail += fmt("rho=%gR rel=%.2e (%.1fs) ", rho, rel, dt);
  }
  report(1, pass, detail + "tol 1e-2, 300s/point");
}

void interior_law()
{
  const auto t0 = std::chrono::steady_clock::now();
  const double rho = 0.5 * R;
  const Vec3 p{0.0, rho, 0.0};
  const double exact = Phi * rho / (2.0 * pi * R * R);
  const double rel = std::abs(a_theta_at(p) - exact) / exact;
  const double dt = seconds_since(t0);
  report(2, rel <= 0.01 && dt <= 300.0, fmt("rho=0.5R rel=%.2e (%.1fs) tol 1e-2, 300s/point", rel, dt));
}

void kernel()
{
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (auto [a, b] : {std::pair{2.0, 1.0}, std::pair{0.5, 1.0}, std::pair{3.0, 2.5}})
  {
    const AngularKernelInput in(a, b);
    worst = std::max(worst, std::abs(angular_kernel(in, 4096) - angular_kernel_closed(in)));
  }
  const double dt = seconds_since(t0);
  report(3, worst <= 1e-6 && dt <= 1.0, fmt("max diff %.2e (%.4fs) tol 1e-6, 1s", worst, dt));
}

void radial()
{
  std::vector<double> radii;
  for (int i = 0; i < 10; ++i)
  {
    radii.push_back(R * std::pow(10.0, -1.0 + 2.0 * i / 9.0));
  }
  const auto r = check_radial_assembly(SolenoidParams(Phi, R), radii, 200, 1e-3, 5e-3);
  double worst = 0.0;
  double cont = 0.0;
  for (const auto &c : r.checks)
  {
    (c.name == "radial_assembly.continuity" ? cont : worst) =
      std::max(c.name == "radial_assembly.continuity" ? cont : worst, c.value);
  }
  report(4, r.all_pass() && r.checks.size() == 11,
         fmt("max rel %.2e tol 1e-3, continuity %.2e tol 5e-3", worst, cont));
}

void stokes()
{
  const SolenoidParams s(Phi, R);
  const StaticVectorFn A = [&](const Vec3 &p) { return solenoid_A_analytic(s, p); };
  const double q = 2.0;
  const PolylinePath circle = circle_loop({}, 2.0 * R, {0, 0, 1}, 720);
  const double c1 = circulation(A, circle);
  bool pass = std::abs(c1 - Phi) <= 1e-3 * Phi;
  pass = pass && std::abs(ab_phase({q, circle, A}) - q * Phi) <= 1e-3 * q * Phi;
  std::string detail = fmt("circle rel %.2e; ", std::abs(c1 - Phi) / Phi);
  for (int n : {-2, 1, 3})
  {
    const PolylinePath path = n == 1 ? circle : multi_turn_loop(2.0 * R, n, 720);
    const double c = circulation(A, path);
    const double rel = std::abs(c - n * Phi) / std::abs(n * Phi);
    pass = pass && rel <= 2e-3 && winding_number(path) == n;
    pass = pass && std::abs(ab_phase({q, path, A}) - q * n * Phi) <= 2e-3 * std::abs(q * n * Phi);
    detail += fmt("n=%g rel %.2e; ", n, rel);
  }
  report(5, pass, detail + "tol 1e-3 / 2e-3");
}

std::vector<Vec3> exterior_probes()
{
  const double rho[] = {1.5, 2.0, 3.0, 4.0, 5.0};
  const double th[] = {0.4, 1.1, 2.0, -2.5, -0.7};
  const double z[] = {0.0, 0.3, -0.5, 1.0, 0.0};
  std::vector<Vec3> p;
  for (int i = 0; i < 5; ++i)
  {
    p.push_back({rho[i] * R * std::cos(th[i]), rho[i] * R * std::sin(th[i]), z[i] * R});
  }
  return p;
}

void coulomb_gauge()
{
  const SolenoidParams s(Phi, R);
  const auto probes = exterior_probes();
  const auto t0 = std::chrono::steady_clock::now();
  const double base = check_coulomb_residual(s, probes, solenoid_spec(), 1e-3 * R, 1e-2).checks.at(0).value;
  const double fine = check_coulomb_residual(s, probes, solenoid_spec().refined(), 1e-3 * R, 1e-2).checks.at(0).value;
  const double dt = seconds_since(t0);
  // central-difference error alone, for comparison
  const double floor = coulomb_residual([&](const Vec3 &p) { return solenoid_A_analytic(s, p); }, probes, 1e-3 * R, R);
  report(6, base <= 1e-2 && fine < base,
         fmt("residual %.6e, refined %.6e (%.0fs) tol 1e-2, must decrease", base, fine, dt) +
           fmt("; analytic A gives %.6e", floor));
}

void faraday()
{
  const TimeVaryingSolenoid s(R, LinearFlux{Phi, 1.0});
  const std::vector<Vec3> probes{{2.0 * R * std::cos(0.7), 2.0 * R * std::sin(0.7), 0.2 * R},
                                 {3.0 * R * std::cos(-2.1), 3.0 * R * std::sin(-2.1), -0.4 * R}};
  auto worst = [](const VerificationReport &r)
  {
    double w = 0.0;
    for (const auto &c : r.checks)
    {
      w = std::max(w, c.value);
    }
    return w;
  };
  const auto t0 = std::chrono::steady_clock::now();
  const auto base = verify_eq13(s, probes, 0.0, solenoid_spec(), FDScheme(1e-3 * R), 1e-3);
  const auto fine = verify_eq13(s, probes, 0.0, solenoid_spec().refined(), FDScheme(0.5e-3 * R), 0.5e-3);
  const double dt = seconds_since(t0);
  const double w0 = worst(base);
  const double w1 = worst(fine);
  bool decreasing = true;
  for (std::size_t i = 0; i < base.checks.size(); ++i)
  {
    decreasing = decreasing && fine.checks.at(i).value < base.checks.at(i).value;
  }
  report(7, base.all_pass() && w0 <= 1e-2 && decreasing,
         fmt("max residual %.2e, refined %.2e (%.0fs) tol 1e-2, must decrease", w0, w1, dt));
}

void point_charge()
{
  const PointCharge c(4.0 * pi, {});
  const QuadratureSpec spec = default_quadrature(c);
  double worst = 0.0;
  for (const Vec3 &p : {Vec3{2, 0, 0}, Vec3{0, 0, 2}, Vec3{1.2, 1.6, 0}})
  {
    worst = std::max(worst, std::abs(scalar_potential(electric_field(c), p, 0.0, spec) - 0.5) / 0.5);
  }
  report(8, worst <= 0.01, fmt("max rel %.2e tol 1e-2", worst));
}

void minimality()
{
  const auto r = check_minimality(SolenoidParams(Phi, R));
  double inc = 0.0;
  double cross = 0.0;
  for (const auto &c : r.checks)
  {
    (c.name == "minimality.increase" ? inc : cross) = c.value;
  }
  report(9, r.all_pass(), fmt("min relative increase %.2e (>= -1e-6), cross %.2e (<= 1e-3)", inc, cross));
}

void decay()
{
  std::vector<double> radii;
  for (int m = 2; m <= 7; ++m)
  {
    radii.push_back((2.0 * m + 0.5) * pi);
  }
  const Vec3 fp{0.3, 0.2, 0.1};
  auto slope = [&](DecayKind k)
  {
    const auto r = surface_decay_report(DecayProbe(k, radii, fp, 1.0, 2.0));
    return r.checks.back();
  };
  const CheckResult compact = slope(DecayKind::compact);
  const CheckResult dipole = slope(DecayKind::dipole_like);
  const CheckResult coulomb = slope(DecayKind::coulomb_like);
  const CheckResult radiation = slope(DecayKind::radiation_like);
  const bool pass = compact.pass && compact.value == 0.0 && std::abs(dipole.value + 2.0) <= 0.1 &&
                    std::abs(coulomb.value + 1.0) <= 0.1;
  std::string detail = "compact ";
  detail += compact.note;
  detail += fmt(", dipole %.4f, coulomb %.4f, radiation %.4f (reported)", dipole.value, coulomb.value,
                radiation.value);
  report(10, pass, detail);
}

void determinism()
{
  const std::string cfg = std::string(GAUGEFIELD_CONFIG_DIR) + "/verify_default.json";
  std::ostringstream a, b, ea, eb;
  const int ra = run_command("verify", cfg, "", a, ea);
  const int rb = run_command("verify", cfg, "", b, eb);
  const bool same = a.str() == b.str() && !a.str().empty();
  report(11, same && ra == rb,
         std::string(same ? "identical" : "different") + " reports (" + std::to_string(a.str().size()) +
           " bytes), exit codes " + std::to_string(ra) + "/" + std::to_string(rb));
}

} // namespace

int main()
{
  const std::vector<std::function<void()>> criteria{exterior_law, interior_law, kernel,       radial,
                                                    stokes,       coulomb_gauge, faraday,     point_charge,
                                                    minimality,   decay,        determinism};
  for (std::size_t i = 0; i < criteria.size(); ++i)
  {
    try
    {
      criteria[i]();
    }
    catch (const std::exception &e)
    {
      report(static_cast<int>(i + 1), false, std::string("error: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
