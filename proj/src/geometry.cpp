#include "gaugefield/geometry.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace gaugefield
{

const Vec3 &Vec3::validated() const
{
  if (!finite())
  {
    throw std::invalid_argument("Vec3 has a non-finite component");
  }
  return *this;
}

Vec3 normalized(const Vec3 &a)
{
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n))
  {
    throw std::invalid_argument("cannot normalize a zero or non-finite vector");
  }
  return a / n;
}

double wrap_angle(double theta)
{
  if (!std::isfinite(theta))
  {
    throw std::invalid_argument("angle is not finite");
  }
  double t = std::remainder(theta, 2.0 * pi); // [-pi, pi]
  if (t <= -pi)
  {
    t += 2.0 * pi;
  }
  return t;
}

CylPoint::CylPoint(double rho, double theta, double z) : rho_(rho), theta_(wrap_angle(theta)), z_(z)
{
  if (!(rho >= 0.0) || !std::isfinite(rho) || !std::isfinite(z))
  {
    throw std::invalid_argument("CylPoint requires finite rho >= 0 and finite z");
  }
}

Vec3 cyl_to_cart(const CylPoint &p)
{
  return {p.rho() * std::cos(p.theta()), p.rho() * std::sin(p.theta()), p.z()};
}

CylPoint cart_to_cyl(const Vec3 &p)
{
  p.validated();
  const double rho = std::hypot(p.x, p.y);
  const double theta = rho > 0.0 ? std::atan2(p.y, p.x) : 0.0;
  return {rho, theta, p.z};
}

Vec3 rho_hat(const Vec3 &p)
{
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0)
  {
    return {1.0, 0.0, 0.0};
  }
  return {p.x / rho, p.y / rho, 0.0};
}

Vec3 theta_hat(const Vec3 &p)
{
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0)
  {
    return {0.0, 1.0, 0.0};
  }
  return {-p.y / rho, p.x / rho, 0.0};
}

GridSpec::GridSpec(const Vec3 &origin, const std::array<double, 3> &spacing,
                   const std::array<int, 3> &dims)
  : origin_(origin), spacing_(spacing), dims_(dims)
{
  origin.validated();
  for (int a = 0; a < 3; ++a)
  {
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
    {
      throw std::invalid_argument("GridSpec spacing must be finite and > 0");
    }
    if (dims[a] < 2)
    {
      throw std::invalid_argument("GridSpec needs at least 2 nodes per axis");
    }
  }
}

std::size_t GridSpec::size() const
{
  return static_cast<std::size_t>(dims_[0]) * static_cast<std::size_t>(dims_[1]) *
         static_cast<std::size_t>(dims_[2]);
}

Vec3 GridSpec::node(int i, int j, int k) const
{
  return {origin_.x + i * spacing_[0], origin_.y + j * spacing_[1], origin_.z + k * spacing_[2]};
}

GridSpec GridSpec::cell_centers(const Vec3 &lo, const Vec3 &hi, const std::array<int, 3> &n)
{
  const std::array<double, 3> h = {(hi.x - lo.x) / n[0], (hi.y - lo.y) / n[1], (hi.z - lo.z) / n[2]};
  return GridSpec({lo.x + 0.5 * h[0], lo.y + 0.5 * h[1], lo.z + 0.5 * h[2]}, h, n);
}

PolylinePath::PolylinePath(std::vector<Vec3> vertices) : vertices_(std::move(vertices))
{
  if (vertices_.size() < 3)
  {
    throw std::invalid_argument("closed path needs at least 3 vertices");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
  {
    vertices_[i].validated();
    if (segment_start(i) == segment_end(i))
    {
      throw std::invalid_argument("path has coincident consecutive vertices at index " +
                                  std::to_string(i));
    }
  }
}

double PolylinePath::perimeter() const
{
  double sum = 0.0;
  for (std::size_t i = 0; i < num_segments(); ++i)
  {
    sum += norm(segment_end(i) - segment_start(i));
  }
  return sum;
}

PolylinePath PolylinePath::reversed() const
{
  return PolylinePath(std::vector<Vec3>(vertices_.rbegin(), vertices_.rend()));
}

PolylinePath PolylinePath::translated(const Vec3 &offset) const
{
  std::vector<Vec3> v = vertices_;
  for (auto &p : v)
  {
    p += offset;
  }
  return PolylinePath(std::move(v));
}

PolylinePath circle_loop(const Vec3 &center, double radius, const Vec3 &axis, int n_segments)
{
  if (n_segments < 8)
  {
    throw std::invalid_argument("circle_loop needs at least 8 segments");
  }
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw std::invalid_argument("circle_loop radius must be > 0");
  }
  center.validated();
  const Vec3 n = normalized(axis);
  if (std::abs(norm(axis) - 1.0) > 1e-9)
  {
    throw std::invalid_argument("circle_loop axis must be a unit vector");
  }
  // Right-handed in-plane basis (e1, e2, n).
  const Vec3 helper = std::abs(n.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = normalized(helper - n * dot(helper, n));
  const Vec3 e2 = cross(n, e1);

  std::vector<Vec3> v;
  v.reserve(static_cast<std::size_t>(n_segments));
  for (int i = 0; i < n_segments; ++i)
  {
    const double phi = 2.0 * pi * i / n_segments;
    v.push_back(center + radius * (std::cos(phi) * e1 + std::sin(phi) * e2));
  }
  return PolylinePath(std::move(v));
}

PolylinePath multi_turn_loop(double radius, int turns, int segments_per_turn, double wobble)
{
  if (turns == 0)
  {
    throw std::invalid_argument("multi_turn_loop needs a nonzero number of turns");
  }
  if (segments_per_turn < 8)
  {
    throw std::invalid_argument("multi_turn_loop needs at least 8 segments per turn");
  }
  if (!(radius > 0.0) || !(wobble >= 0.0) || wobble >= 1.0)
  {
    throw std::invalid_argument("multi_turn_loop needs radius > 0 and 0 <= wobble < 1");
  }
  const int n_turns = std::abs(turns);
  const int n = n_turns * segments_per_turn;
  const double sign = turns > 0 ? 1.0 : -1.0;
  std::vector<Vec3> v;
  v.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
  {
    const double phi = 2.0 * pi * i / segments_per_turn;
    const double slow = phi / n_turns;
    const double r = radius * (1.0 + wobble * std::cos(slow));
    v.push_back({r * std::cos(sign * phi), r * std::sin(sign * phi), radius * wobble * std::sin(slow)});
  }
  return PolylinePath(std::move(v));
}

} // namespace gaugefield
