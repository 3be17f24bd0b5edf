#ifndef GAUGEFIELD_QUADRATURE_HPP
#define GAUGEFIELD_QUADRATURE_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gaugefield/geometry.hpp"

namespace gaugefield
{

// Raised when an integrand returns NaN/Inf; the message names the cell.
class IntegrationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

enum class Rule
{
  midpoint,
  gauss2,
  gauss3,
  gauss4
};

// How uniform cells in a reference variable u map onto the axis coordinate.
//   uniform:       x = u on [lo, hi]
//   sinh:          x = center + scale * sinh(u), clustering cells near center
//   semi_infinite: x = lo + scale * t / (1 - t), t in [0, 1); hi is ignored
enum class Mapping
{
  uniform,
  sinh,
  semi_infinite
};

struct AxisSpec
{
  double lo = 0.0;
  double hi = 1.0;
  int cells = 4;
  Rule rule = Rule::midpoint;
  Mapping mapping = Mapping::uniform;
  double map_center = 0.0;
  double map_scale = 1.0;
  // The bounds truncate an infinite range. refined() then also doubles the
  // extent about the midpoint.
  bool unbounded = false;
};

enum class Frame
{
  cartesian,   // (x, y, z) relative to origin
  cylindrical, // (rho, theta, z) about the z-directed axis through origin
  spherical    // (r, polar angle, azimuth) about origin
};

enum class SingularPolicy
{
  skip_cell,
  shifted_centroid
};

//
// Complete description of a tensor-product integration scheme. Angles of the
// cylindrical and spherical frames are measured from azimuth_offset, which
// lets a caller rotate the grid so that it is mirror-symmetric about a point.
//
struct QuadratureSpec
{
  Frame frame = Frame::cartesian;
  Vec3 origin{};
  double azimuth_offset = 0.0;
  std::array<AxisSpec, 3> axes{};
  SingularPolicy policy = SingularPolicy::skip_cell;
  double epsilon = 0.0;
  // Evaluation routines re-anchor the grid at each probe: a cylindrical grid
  // is rotated so the probe sits at zero relative azimuth, a spherical grid
  // is centered on the probe.
  bool anchor_to_probe = false;

  // Spec re-anchored at probe when anchor_to_probe is set; otherwise a copy.
  QuadratureSpec anchored_at(const Vec3 &probe) const;

  // Throws std::invalid_argument describing the first violated invariant.
  void validate() const;

  // Halves every cell width; unbounded axes also double their extent.
  QuadratureSpec refined() const;

  // Same spec with every axis' cell count multiplied by factor.
  QuadratureSpec scaled(int factor) const;

  std::size_t total_cells() const;

  static QuadratureSpec box(const Vec3 &lo, const Vec3 &hi, const std::array<int, 3> &cells,
                            Rule rule = Rule::midpoint);

  // rho in [0, rho_max], full turn in theta, z in [-z_half, z_half] (unbounded).
  static QuadratureSpec cylinder(double rho_max, double z_half, const std::array<int, 3> &cells,
                                 const std::array<Rule, 3> &rules);

  // Whole space about origin with a semi-infinite radial map of the given scale.
  static QuadratureSpec sphere(const Vec3 &origin, double radial_scale,
                               const std::array<int, 3> &cells, Rule rule);
};

std::string to_string(Rule r);
std::string to_string(Mapping m);
std::string to_string(Frame f);
std::string to_string(SingularPolicy p);
Rule rule_from_string(const std::string &s);
Mapping mapping_from_string(const std::string &s);
Frame frame_from_string(const std::string &s);
SingularPolicy policy_from_string(const std::string &s);

struct AxisRule
{
  std::vector<double> nodes;
  std::vector<double> weights; // including the axis mapping, no frame Jacobian
};

// One-dimensional composite rule of an axis.
AxisRule axis_rule(const AxisSpec &axis);

using VecIntegrand = std::function<Vec3(const Vec3 &)>;
using CylIntegrand = std::function<Vec3(const CylPoint &)>;

// Integral of f over the spec's region with the frame's volume element.
// Cells whose closure contains one of the singular points are skipped or
// sampled once at a shifted centroid, per spec.policy.
Vec3 integrate_vec(const VecIntegrand &f, const QuadratureSpec &spec,
                   std::span<const Vec3> singular_points = {});

// Same engine over a cylindrical spec, with the integrand written in
// (rho', theta', z'). The measure rho' drho' dtheta' dz' is applied here.
Vec3 integrate_cyl(const CylIntegrand &f, const QuadratureSpec &spec,
                   std::span<const Vec3> singular_points = {});

struct TraceEntry
{
  double parameter; // cells along the first axis
  Vec3 value;
};

struct ConvergenceTrace
{
  std::vector<TraceEntry> entries;

  // Observed order p from the last three entries, assuming refinement by 2:
  // |v1 - v0| / |v2 - v1| = 2^p. Empty with fewer than three entries or when
  // the last difference vanishes.
  std::optional<double> estimated_order() const;
};

struct RefineResult
{
  Vec3 value;
  ConvergenceTrace trace;
  bool converged = false;
  int levels = 0; // refinements performed after the base evaluation
  std::string message;
};

// Evaluates job(base), then job on successively refined specs until two
// successive values differ by less than tolerance (Euclidean norm) or
// max_level refinements have been made. Non-convergence is reported through
// RefineResult::converged, not thrown.
RefineResult refine_until(const std::function<Vec3(const QuadratureSpec &)> &job,
                          const QuadratureSpec &base, double tolerance, int max_level);

} // namespace gaugefield

#endif // GAUGEFIELD_QUADRATURE_HPP
