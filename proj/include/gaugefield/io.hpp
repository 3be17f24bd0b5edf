#ifndef GAUGEFIELD_IO_HPP
#define GAUGEFIELD_IO_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gaugefield/abphase.hpp"
#include "gaugefield/quadrature.hpp"
#include "gaugefield/sources.hpp"
#include "gaugefield/verify.hpp"

namespace gaugefield
{

// Bad or unknown configuration; the message names the offending key or line.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char *units_header = "# units: HL, c=hbar=1";
inline constexpr int report_version = 1;

using SourceSpec = std::variant<SolenoidParams, TimeVaryingSolenoid, PointCharge, CompactTestField>;

std::string source_kind(const SourceSpec &s);

struct LoopSpec
{
  Vec3 center{};
  double radius = 1.0;
  int segments = 720; // per turn
  Vec3 axis{0.0, 0.0, 1.0};
  int turns = 1;       // signed; |turns| > 1 uses the wobbled multi-turn loop about +z
  double wobble = 0.1; // multi-turn only
  bool reversed = false;

  PolylinePath path() const;
};

struct ProbeSet
{
  std::string kind; // points | grid | loop | rho_sweep
  std::vector<Vec3> points;
  std::optional<LoopSpec> loop;
};

struct OutputSpec
{
  std::string path; // empty: standard output
  std::string format;
};

struct AngularKernelCheck
{
  std::vector<std::pair<double, double>> points{{2.0, 1.0}, {0.5, 1.0}, {3.0, 2.5}};
  int n_theta = 4096;
  double tolerance = 1e-6;
};

struct RadialAssemblyCheck
{
  std::vector<double> radii; // empty: 10 log-spaced radii in [0.1 R, 10 R]
  int n_rho = 200;
  double tolerance = 1e-3;
  double continuity_tolerance = 5e-3;
};

struct Eq13Check
{
  std::vector<Vec3> probes; // empty: rho = 2R and 3R off the x axis
  double t = 0.0;
  std::optional<QuadratureSpec> quadrature; // empty: the source default
  double h = 0.0;                           // 0: 1e-3 R
  int order = 2;
  double dt = 1e-3;
  Eq13Options options;
};

struct DecayCheck
{
  std::vector<DecayKind> kinds{DecayKind::compact, DecayKind::dipole_like, DecayKind::coulomb_like,
                               DecayKind::radiation_like};
  std::vector<double> radii; // empty: (2m + 1/2) pi / k for m = 2..7
  Vec3 field_point{0.3, 0.2, 0.1};
  double k = 1.0;
  double support = 2.0;
};

struct CoulombCheck
{
  std::vector<Vec3> probes; // empty: 5 exterior probes
  std::optional<QuadratureSpec> quadrature;
  double h = 0.0; // 0: 1e-3 R
  double tolerance = 1e-2;
};

struct VerifyPlan
{
  std::optional<Eq13Check> eq13;
  std::optional<DecayCheck> decay;
  std::optional<AngularKernelCheck> angular_kernel;
  std::optional<RadialAssemblyCheck> radial_assembly;
  std::optional<CoulombCheck> coulomb_residual;
  std::optional<MinimalityOptions> minimality;
};

struct RunConfig
{
  std::optional<SourceSpec> source;
  std::string quantity = "A"; // potential: A or V
  double time = 0.0;
  double q = 1.0; // abphase charge
  std::string potential = "analytic"; // abphase: analytic | numeric
  std::optional<QuadratureSpec> quadrature;
  ProbeSet probes;
  OutputSpec output;
  VerifyPlan checks;
  nlohmann::json echo; // the document as read
};

// Strict parse: unknown keys, wrong types and invalid parameters raise
// ConfigError naming the key; syntax errors name line and column.
RunConfig parse_config(const std::string &text);
RunConfig load_config(const std::string &path);

// Default quadrature for a source: cylinder for solenoids (L = 100 R,
// 64 x 256 x 256), probe-centered sphere for a point charge.
QuadratureSpec default_quadrature(const SourceSpec &s);

QuadratureSpec quadrature_from_json(const nlohmann::json &j, const std::string &where = "quadrature");
nlohmann::json to_json(const QuadratureSpec &spec);

//
// Field tables
//
struct FieldTable
{
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

// Header line, column names, rows; LF line endings. Throws
// std::domain_error on a non-finite value.
void write_csv(std::ostream &os, const FieldTable &table);
FieldTable read_csv(std::istream &is);

//
// Reports
//
nlohmann::json report_to_json(const VerificationReport &report, const nlohmann::json &config_echo);
VerificationReport report_from_json(const nlohmann::json &j);
std::string dump_json(const nlohmann::json &j);

} // namespace gaugefield

#endif // GAUGEFIELD_IO_HPP
