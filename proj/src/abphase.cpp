#include "gaugefield/abphase.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gaugefield
{

namespace
{

// Distance from the origin to the segment [a, b] in the xy-plane.
double min_xy_distance(const Vec3 &a, const Vec3 &b)
{
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? -(a.x * dx + a.y * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(a.x + t * dx, a.y + t * dy);
}

double planar_flux(const SolenoidParams &s, const PolylinePath &path)
{
  const auto &v = path.vertices();
  Vec3 c{};
  for (const auto &p : v)
  {
    c += p;
  }
  c = c / static_cast<double>(v.size());

  Vec3 area{};
  double size = 0.0;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    area += 0.5 * cross(path.segment_start(i) - c, path.segment_end(i) - c);
    size = std::max(size, norm(v[i] - c));
  }
  if (norm(area) > 0.0)
  {
    const Vec3 n = normalized(area);
    for (const auto &p : v)
    {
      if (std::abs(dot(p - c, n)) > 1e-9 * size)
      {
        throw std::domain_error("enclosed_flux: path crossing the solenoid interior must be planar");
      }
    }
  }

  // Fan triangles from the centroid, each split into 16 congruent pieces
  // sampled at their centroids.
  constexpr int split = 4;
  double flux = 0.0;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    const Vec3 a = c;
    const Vec3 e1 = (path.segment_start(i) - c) / split;
    const Vec3 e2 = (path.segment_end(i) - c) / split;
    const Vec3 sub_area = 0.5 * cross(e1, e2);
    double tri = 0.0;
    for (int p = 0; p < split; ++p)
    {
      for (int q = 0; q < split - p; ++q)
      {
        const Vec3 up = a + e1 * (p + 1.0 / 3.0) + e2 * (q + 1.0 / 3.0);
        tri += dot(solenoid_B(s, up), sub_area);
        if (q < split - p - 1)
        {
          const Vec3 down = a + e1 * (p + 2.0 / 3.0) + e2 * (q + 2.0 / 3.0);
          tri += dot(solenoid_B(s, down), sub_area);
        }
      }
    }
    flux += tri;
  }
  return flux;
}

} // namespace

double circulation(const StaticVectorFn &A, const PolylinePath &path)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    const Vec3 a = path.segment_start(i);
    const Vec3 b = path.segment_end(i);
    const Vec3 value = A(0.5 * (a + b));
    if (!value.finite())
    {
      throw std::domain_error("circulation: non-finite A on segment " + std::to_string(i));
    }
    sum += dot(value, b - a);
  }
  return sum;
}

double gradient_circulation(const std::function<double(const Vec3 &)> &chi, const PolylinePath &path)
{
  double sum = 0.0;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    sum += chi(path.segment_end(i)) - chi(path.segment_start(i));
  }
  return sum;
}

int winding_number(const PolylinePath &path, const AxisLine &axis)
{
  const Vec3 n = normalized(axis.direction);
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = normalized(helper - n * dot(helper, n));
  const Vec3 e2 = cross(n, e1);

  auto project = [&](const Vec3 &p)
  {
    const Vec3 d = p - axis.point;
    return Vec3{dot(d, e1), dot(d, e2), 0.0};
  };

  double scale = 0.0;
  for (const auto &p : path.vertices())
  {
    scale = std::max(scale, norm(project(p)));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    const Vec3 a = project(path.segment_start(i));
    const Vec3 b = project(path.segment_end(i));
    if (min_xy_distance(a, b) <= 1e-12 * scale)
    {
      throw std::domain_error("winding_number: path meets the axis on segment " + std::to_string(i));
    }
    double d = std::atan2(b.y, b.x) - std::atan2(a.y, a.x);
    if (d > pi)
    {
      d -= 2.0 * pi;
    }
    else if (d <= -pi)
    {
      d += 2.0 * pi;
    }
    total += d;
  }
  return static_cast<int>(std::lround(total / (2.0 * pi)));
}

double enclosed_flux(const SolenoidParams &s, const PolylinePath &path, double margin)
{
  if (margin < 0.0)
  {
    margin = 1e-3 * s.radius();
  }
  const double R = s.radius();
  bool all_outside = true;
  bool all_inside = true;
  for (std::size_t i = 0; i < path.num_segments(); ++i)
  {
    const Vec3 &a = path.segment_start(i);
    const Vec3 &b = path.segment_end(i);
    const double dmin = min_xy_distance(a, b);
    const double dmax = std::max(std::hypot(a.x, a.y), std::hypot(b.x, b.y));
    if (dmax >= R - margin && dmin <= R + margin)
    {
      throw std::domain_error("enclosed_flux: segment " + std::to_string(i) +
                              " comes within the margin of the solenoid wall");
    }
    all_outside = all_outside && dmin > R + margin;
    all_inside = all_inside && dmax < R - margin;
  }
  if (all_outside)
  {
    return winding_number(path) * s.flux();
  }
  if (all_inside)
  {
    return planar_flux(s, path);
  }
  throw std::domain_error("enclosed_flux: path both inside and outside the solenoid");
}

double ab_phase(const ABConfig &cfg)
{
  if (cfg.path.num_segments() < 8)
  {
    throw std::invalid_argument("ab_phase needs a closed path with at least 8 segments");
  }
  if (!std::isfinite(cfg.q))
  {
    throw std::invalid_argument("ab_phase charge must be finite");
  }
  return cfg.q * circulation(cfg.A, cfg.path);
}

} // namespace gaugefield
