#ifndef GAUGEFIELD_DIFFOPS_HPP
#define GAUGEFIELD_DIFFOPS_HPP

#include <functional>

#include "gaugefield/geometry.hpp"

namespace gaugefield
{

using ScalarFn = std::function<double(const Vec3 &)>;
using VectorFn = std::function<Vec3(const Vec3 &)>;
using TimeVectorFn = std::function<Vec3(const Vec3 &, double)>;

// Central-difference scheme of order 2 or 4 with step h.
class FDScheme
{
public:
  explicit FDScheme(double h, int order = 2);

  double h() const { return h_; }
  int order() const { return order_; }

  // Default step: 1e-3 of the characteristic length.
  static FDScheme for_length(double length, int order = 2) { return FDScheme(1e-3 * length, order); }

private:
  double h_;
  int order_;
};

Vec3 grad_fd(const ScalarFn &f, const Vec3 &p, const FDScheme &s);
Vec3 curl_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s);
double div_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s);

// Second-order central difference in time.
Vec3 dt_fd(const TimeVectorFn &F, const Vec3 &p, double t, double dt);

// Jacobian of F by central differences: row i holds dF/dx_i.
struct Jacobian3
{
  Vec3 d_dx;
  Vec3 d_dy;
  Vec3 d_dz;
};
Jacobian3 jacobian_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s);

} // namespace gaugefield

#endif // GAUGEFIELD_DIFFOPS_HPP
