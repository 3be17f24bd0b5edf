#ifndef GAUGEFIELD_GEOMETRY_HPP
#define GAUGEFIELD_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace gaugefield
{

inline constexpr double pi = std::numbers::pi;

//
// Cartesian point or vector. Plain value type; arithmetic does not check for
// non-finite results so that NaN can surface where it is produced (see
// quadrature). Use validated() at API boundaries.
//
struct Vec3
{
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 &operator+=(const Vec3 &o)
  {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3 &operator-=(const Vec3 &o)
  {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
  constexpr Vec3 &operator*=(double s)
  {
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }

  bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }

  // Throws std::invalid_argument when any component is NaN or infinite.
  const Vec3 &validated() const;

  friend constexpr bool operator==(const Vec3 &, const Vec3 &) = default;
};

constexpr Vec3 operator+(Vec3 a, const Vec3 &b) { return a += b; }
constexpr Vec3 operator-(Vec3 a, const Vec3 &b) { return a -= b; }
constexpr Vec3 operator-(const Vec3 &a) { return {-a.x, -a.y, -a.z}; }
constexpr Vec3 operator*(Vec3 a, double s) { return a *= s; }
constexpr Vec3 operator*(double s, Vec3 a) { return a *= s; }
constexpr Vec3 operator/(Vec3 a, double s) { return a *= (1.0 / s); }

constexpr double dot(const Vec3 &a, const Vec3 &b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3 &a, const Vec3 &b)
{
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) { return std::sqrt(dot(a, a)); }
Vec3 normalized(const Vec3 &a);

// Wraps an angle into (-pi, pi].
double wrap_angle(double theta);

//
// Cylindrical point about the z-axis. rho >= 0, theta normalized into (-pi, pi].
//
class CylPoint
{
public:
  CylPoint(double rho, double theta, double z);

  double rho() const { return rho_; }
  double theta() const { return theta_; }
  double z() const { return z_; }

private:
  double rho_;
  double theta_;
  double z_;
};

Vec3 cyl_to_cart(const CylPoint &p);

// On the axis (rho == 0) theta is reported as 0.
CylPoint cart_to_cyl(const Vec3 &p);

// Unit vectors of the cylindrical frame at p. Undefined on the axis; there the
// x and y axes are returned.
Vec3 rho_hat(const Vec3 &p);
Vec3 theta_hat(const Vec3 &p);

//
// Uniform axis-aligned grid of nodes origin + (i*hx, j*hy, k*hz).
//
class GridSpec
{
public:
  GridSpec(const Vec3 &origin, const std::array<double, 3> &spacing, const std::array<int, 3> &dims);

  const Vec3 &origin() const { return origin_; }
  const std::array<double, 3> &spacing() const { return spacing_; }
  const std::array<int, 3> &dims() const { return dims_; }

  std::size_t size() const;
  double cell_volume() const { return spacing_[0] * spacing_[1] * spacing_[2]; }
  Vec3 node(int i, int j, int k) const;

  // Grid whose nodes are the centers of n^3 cells tiling [lo, hi] per axis.
  static GridSpec cell_centers(const Vec3 &lo, const Vec3 &hi, const std::array<int, 3> &n);

private:
  Vec3 origin_;
  std::array<double, 3> spacing_;
  std::array<int, 3> dims_;
};

//
// Closed polyline. The last vertex connects back to the first implicitly, so
// the first and last stored vertices must differ.
//
class PolylinePath
{
public:
  explicit PolylinePath(std::vector<Vec3> vertices);

  const std::vector<Vec3> &vertices() const { return vertices_; }
  std::size_t num_segments() const { return vertices_.size(); }
  const Vec3 &segment_start(std::size_t i) const { return vertices_[i]; }
  const Vec3 &segment_end(std::size_t i) const { return vertices_[(i + 1) % vertices_.size()]; }

  double perimeter() const;
  PolylinePath reversed() const;
  PolylinePath translated(const Vec3 &offset) const;

private:
  std::vector<Vec3> vertices_;
};

// Regular n-gon inscribed in the circle, counter-clockwise about axis.
PolylinePath circle_loop(const Vec3 &center, double radius, const Vec3 &axis, int n_segments);

// Closed loop winding `turns` times (sign gives orientation) about the z-axis
// at mean radius `radius`, with a small radial and axial wobble so that
// successive turns do not overlap. segments_per_turn >= 8.
PolylinePath multi_turn_loop(double radius, int turns, int segments_per_turn, double wobble = 0.1);

} // namespace gaugefield

#endif // GAUGEFIELD_GEOMETRY_HPP
