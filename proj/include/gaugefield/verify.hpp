#ifndef GAUGEFIELD_VERIFY_HPP
#define GAUGEFIELD_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gaugefield/diffops.hpp"
#include "gaugefield/geometry.hpp"
#include "gaugefield/quadrature.hpp"
#include "gaugefield/sources.hpp"

namespace gaugefield
{

struct CheckResult
{
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note; // empty unless the check needs a qualifier
};

struct NamedTrace
{
  std::string name;
  std::vector<std::pair<double, double>> points; // (parameter, value)
};

struct VerificationReport
{
  std::vector<CheckResult> checks;
  std::vector<NamedTrace> traces;
  std::vector<std::pair<std::string, std::string>> metadata;

  bool all_pass() const;
  void append(const VerificationReport &other);
};

//
// Angular kernel of a uniform flux cylinder seen from a field point at
// radius rho, azimuth 0: the azimuthal A contributed per unit B by the ring of
// source radius rho', divided by rho' drho'.
//
class AngularKernelInput
{
public:
  AngularKernelInput(double rho, double rho_prime);

  double rho() const { return rho_; }
  double rho_prime() const { return rho_prime_; }

private:
  double rho_;
  double rho_prime_;
};

// Midpoint rule with n_theta (>= 64) cells of
//   int_{-pi}^{pi} cos(alpha) / (2 pi d) dtheta',
//   d^2 = rho^2 + rho'^2 - 2 rho rho' cos(theta'), cos(alpha) = (rho - rho' cos(theta')) / d.
// Throws std::domain_error for rho == rho'.
double angular_kernel(const AngularKernelInput &in, int n_theta);

// [1 + sign(rho - rho')] / (2 rho), with sign(0) = 0.
double angular_kernel_closed(const AngularKernelInput &in);

enum class KernelMode
{
  closed,
  numeric
};

// A_theta(rho) = int_0^R B rho' K(rho, rho') drho' by the midpoint rule with
// n_rho cells. The cell containing rho is split there.
double radial_assembly(const SolenoidParams &s, double rho, int n_rho, int n_theta,
                       KernelMode mode = KernelMode::closed);

struct Eq13Options
{
  double relative_tolerance = 0.01;
  double absolute_tolerance = 1e-8; // used where the exact E vanishes
};

// Per probe: |E_exact + grad V_numeric + dA_numeric/dt| relative to |E_exact|.
// V and A come from the integral operators; probes must lie at rho >= 1.5 R.
VerificationReport verify_eq13(const TimeVaryingSolenoid &s, const std::vector<Vec3> &probes, double t,
                               const QuadratureSpec &spec, const FDScheme &fd, double dt,
                               const Eq13Options &opt = {});

// The quadrature used for the scalar potential in verify_eq13: the A spec
// with its radial extent widened to twice the outermost probe radius.
QuadratureSpec eq13_scalar_spec(const QuadratureSpec &spec, const std::vector<Vec3> &probes);

enum class DecayKind
{
  compact,
  dipole_like,
  coulomb_like,
  radiation_like
};

std::string to_string(DecayKind k);
DecayKind decay_kind_from_string(const std::string &s);

class DecayProbe
{
public:
  DecayProbe(DecayKind kind, std::vector<double> radii, const Vec3 &field_point, double k = 1.0,
             double support = 1.0);

  DecayKind kind() const { return kind_; }
  const std::vector<double> &radii() const { return radii_; }
  const Vec3 &field_point() const { return r_; }
  double wavevector() const { return k_; }
  double support() const { return support_; }

  // Probe field: z_hat x r' times a radial profile (azimuthal, so its
  // tangential part survives the surface integral).
  Vec3 field(const Vec3 &rp) const;

private:
  DecayKind kind_;
  std::vector<double> radii_;
  Vec3 r_;
  double k_;
  double support_;
};

// |(1/4pi) closed-surface integral of r_hat' x E(r') / |r - r'| r'^2 dOmega'| on the sphere
// of radius R_s, with a product rule of 32 polar x 64 azimuthal nodes.
double surface_term(const DecayProbe &probe, double radius);

// Surface terms at every radius and the log-log slope over the last three.
VerificationReport surface_decay_report(const DecayProbe &probe);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

//
// Battery checks shared by the CLI and the acceptance suite.
//

VerificationReport check_angular_kernel(const std::vector<std::pair<double, double>> &points,
                                        int n_theta, double tolerance);

// Radial assembly with the closed kernel against the closed-form A at each
// radius, plus continuity across rho = R.
VerificationReport check_radial_assembly(const SolenoidParams &s, const std::vector<double> &radii,
                                         int n_rho, double tolerance, double continuity_tolerance);

// coulomb_residual of the numerical A of a static solenoid.
VerificationReport check_coulomb_residual(const SolenoidParams &s, const std::vector<Vec3> &probes,
                                          const QuadratureSpec &spec, double h, double tolerance);

struct MinimalityOptions
{
  int functions = 20;
  std::uint64_t seed = 20240611;
  double half_extent = 3.0; // region [-L, L]^3
  int cells = 128;          // per axis
  double increase_tolerance = 1e-6;
  double cross_tolerance = 1e-3;
};

// Gaussian-bump gauge functions against the analytic Coulomb-gauge A of s.
VerificationReport check_minimality(const SolenoidParams &s, const MinimalityOptions &opt = {});

} // namespace gaugefield

#endif // GAUGEFIELD_VERIFY_HPP
