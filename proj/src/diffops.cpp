#include "gaugefield/diffops.hpp"

#include <stdexcept>

namespace gaugefield
{

namespace
{

const Vec3 unit[3] = {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};

template <class F>
auto central(const F &f, const Vec3 &p, const Vec3 &dir, const FDScheme &s)
{
  const double h = s.h();
  if (s.order() == 2)
  {
    return (f(p + dir * h) - f(p - dir * h)) / (2.0 * h);
  }
  return (8.0 * (f(p + dir * h) - f(p - dir * h)) - (f(p + dir * (2.0 * h)) - f(p - dir * (2.0 * h)))) /
         (12.0 * h);
}

} // namespace

FDScheme::FDScheme(double h, int order) : h_(h), order_(order)
{
  if (!(h > 0.0) || !std::isfinite(h))
  {
    throw std::invalid_argument("FDScheme step must be > 0");
  }
  if (order != 2 && order != 4)
  {
    throw std::invalid_argument("FDScheme order must be 2 or 4");
  }
}

Vec3 grad_fd(const ScalarFn &f, const Vec3 &p, const FDScheme &s)
{
  return {central(f, p, unit[0], s), central(f, p, unit[1], s), central(f, p, unit[2], s)};
}

Jacobian3 jacobian_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s)
{
  return {central(F, p, unit[0], s), central(F, p, unit[1], s), central(F, p, unit[2], s)};
}

Vec3 curl_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s)
{
  const Jacobian3 j = jacobian_fd(F, p, s);
  return {j.d_dy.z - j.d_dz.y, j.d_dz.x - j.d_dx.z, j.d_dx.y - j.d_dy.x};
}

double div_fd(const VectorFn &F, const Vec3 &p, const FDScheme &s)
{
  const Vec3 fx = central(F, p, unit[0], s);
  const Vec3 fy = central(F, p, unit[1], s);
  const Vec3 fz = central(F, p, unit[2], s);
  return fx.x + fy.y + fz.z;
}

Vec3 dt_fd(const TimeVectorFn &F, const Vec3 &p, double t, double dt)
{
  if (!(dt > 0.0) || !std::isfinite(dt))
  {
    throw std::invalid_argument("dt_fd step must be > 0");
  }
  return (F(p, t + dt) - F(p, t - dt)) / (2.0 * dt);
}

} // namespace gaugefield
