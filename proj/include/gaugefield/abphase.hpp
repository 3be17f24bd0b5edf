#ifndef GAUGEFIELD_ABPHASE_HPP
#define GAUGEFIELD_ABPHASE_HPP

#include <functional>

#include "gaugefield/geometry.hpp"
#include "gaugefield/sources.hpp"

namespace gaugefield
{

using StaticVectorFn = std::function<Vec3(const Vec3 &)>;

struct AxisLine
{
  Vec3 point{};
  Vec3 direction{0.0, 0.0, 1.0};
};

struct ABConfig
{
  double q = 1.0; // charge in units where hbar = 1
  PolylinePath path;
  StaticVectorFn A;
};

// Sum over segments of A(midpoint) . (end - start), closing the loop.
double circulation(const StaticVectorFn &A, const PolylinePath &path);

// Sum of chi(end) - chi(start) over the closed path. Telescopes to zero up to
// rounding for any single-valued chi.
double gradient_circulation(const std::function<double(const Vec3 &)> &chi, const PolylinePath &path);

// Signed number of turns of the path about the axis, from the accumulated
// projected angle. Throws std::domain_error if the path meets the axis.
int winding_number(const PolylinePath &path, const AxisLine &axis = {});

// Flux of the solenoid through the path. Paths entirely outside the cylinder
// give winding * flux; planar paths entirely inside integrate B over a fan
// triangulation of the spanned surface. Paths that come within `margin` of the
// cylinder wall are rejected with std::domain_error.
double enclosed_flux(const SolenoidParams &s, const PolylinePath &path, double margin = -1.0);

// q * circulation(A, path), in radians with hbar = c = 1.
double ab_phase(const ABConfig &cfg);

} // namespace gaugefield

#endif // GAUGEFIELD_ABPHASE_HPP
