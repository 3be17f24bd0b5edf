#include "gaugefield/sources.hpp"

#include <stdexcept>

namespace gaugefield
{

namespace
{

void require_finite(double v, const char *what)
{
  if (!std::isfinite(v))
  {
    throw std::invalid_argument(std::string(what) + " must be finite");
  }
}

// Azimuthal magnitude of A for a uniform flux cylinder; interior branch at rho == R.
double cylinder_azimuthal(double flux, double radius, double rho)
{
  if (rho <= radius)
  {
    return flux * rho / (2.0 * pi * radius * radius);
  }
  return flux / (2.0 * pi * rho);
}

} // namespace

SolenoidParams::SolenoidParams(double flux, double radius) : flux_(flux), radius_(radius)
{
  require_finite(flux, "solenoid flux");
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw std::invalid_argument("solenoid radius must be > 0");
  }
}

double SolenoidParams::b_inside() const { return flux_ / (pi * radius_ * radius_); }

TimeVaryingSolenoid::TimeVaryingSolenoid(double radius, FluxLaw law) : radius_(radius), law_(law)
{
  if (!(radius > 0.0) || !std::isfinite(radius))
  {
    throw std::invalid_argument("solenoid radius must be > 0");
  }
  std::visit(
    [](const auto &l)
    {
      using T = std::decay_t<decltype(l)>;
      if constexpr (std::is_same_v<T, LinearFlux>)
      {
        require_finite(l.phi0, "phi0");
        require_finite(l.rate, "rate");
      }
      else
      {
        require_finite(l.phi0, "phi0");
        require_finite(l.omega, "omega");
      }
    },
    law_);
}

double TimeVaryingSolenoid::flux(double t) const
{
  return std::visit(
    [t](const auto &l)
    {
      using T = std::decay_t<decltype(l)>;
      if constexpr (std::is_same_v<T, LinearFlux>)
      {
        return l.phi0 + l.rate * t;
      }
      else
      {
        return l.phi0 * std::sin(l.omega * t);
      }
    },
    law_);
}

double TimeVaryingSolenoid::flux_rate(double t) const
{
  return std::visit(
    [t](const auto &l)
    {
      using T = std::decay_t<decltype(l)>;
      if constexpr (std::is_same_v<T, LinearFlux>)
      {
        return l.rate;
      }
      else
      {
        return l.phi0 * l.omega * std::cos(l.omega * t);
      }
    },
    law_);
}

PointCharge::PointCharge(double q, const Vec3 &position) : q_(q), position_(position)
{
  require_finite(q, "charge");
  position.validated();
}

CompactTestField::CompactTestField(double support_radius, double amplitude, const Vec3 &center)
  : a_(support_radius), amplitude_(amplitude), center_(center)
{
  if (!(support_radius > 0.0) || !std::isfinite(support_radius))
  {
    throw std::invalid_argument("compact field support radius must be > 0");
  }
  require_finite(amplitude, "compact field amplitude");
  center.validated();
}

Vec3 CompactTestField::operator()(const Vec3 &p) const
{
  const Vec3 d = p - center_;
  const double s = 1.0 - dot(d, d) / (a_ * a_);
  if (!(s > 0.0))
  {
    return {0.0, 0.0, 0.0};
  }
  const double g = amplitude_ * 6.0 / (a_ * a_) * s * s;
  return {-g * d.y, g * d.x, 0.0};
}

Vec3 solenoid_B(const SolenoidParams &s, const Vec3 &p)
{
  const double rho = std::hypot(p.x, p.y);
  if (rho <= s.radius())
  {
    return {0.0, 0.0, s.b_inside()};
  }
  return {0.0, 0.0, 0.0};
}

Vec3 solenoid_A_analytic(const SolenoidParams &s, const Vec3 &p)
{
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0)
  {
    return {0.0, 0.0, 0.0};
  }
  return cylinder_azimuthal(s.flux(), s.radius(), rho) * theta_hat(p);
}

double thin_tube_A(double dflux, double d)
{
  if (!(d > 0.0))
  {
    throw std::invalid_argument("thin_tube_A is singular on the tube (d must be > 0)");
  }
  return dflux / (2.0 * pi * d);
}

Vec3 point_charge_E(const PointCharge &c, const Vec3 &p)
{
  const Vec3 d = p - c.position();
  const double r = norm(d);
  if (r == 0.0)
  {
    throw std::domain_error("point_charge_E evaluated at the charge position");
  }
  return d * (c.q() / (4.0 * pi * r * r * r));
}

Vec3 induced_E_solenoid(const TimeVaryingSolenoid &s, const Vec3 &p, double t)
{
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0)
  {
    return {0.0, 0.0, 0.0};
  }
  return -cylinder_azimuthal(s.flux_rate(t), s.radius(), rho) * theta_hat(p);
}

Vec3 solenoid_A_at(const TimeVaryingSolenoid &s, const Vec3 &p, double t)
{
  return solenoid_A_analytic(s.at(t), p);
}

VectorField zero_field()
{
  return {[](const Vec3 &, double) { return Vec3{}; }, {}};
}

VectorField magnetic_field(const SolenoidParams &s)
{
  return {[s](const Vec3 &p, double) { return solenoid_B(s, p); }, {}};
}

VectorField magnetic_field(const TimeVaryingSolenoid &s)
{
  return {[s](const Vec3 &p, double t) { return solenoid_B(s.at(t), p); }, {}};
}

VectorField magnetic_field(const CompactTestField &f)
{
  return {[f](const Vec3 &p, double) { return f(p); }, {}};
}

VectorField electric_field(const PointCharge &c)
{
  return {[c](const Vec3 &p, double) { return point_charge_E(c, p); }, {c.position()}};
}

VectorField electric_field(const TimeVaryingSolenoid &s)
{
  return {[s](const Vec3 &p, double t) { return induced_E_solenoid(s, p, t); }, {}};
}

VectorField operator+(const VectorField &a, const VectorField &b)
{
  std::vector<Vec3> sing = a.singular_points;
  sing.insert(sing.end(), b.singular_points.begin(), b.singular_points.end());
  return {[fa = a.eval, fb = b.eval](const Vec3 &p, double t) { return fa(p, t) + fb(p, t); },
          std::move(sing)};
}

VectorField translated(const VectorField &f, const Vec3 &offset)
{
  std::vector<Vec3> sing = f.singular_points;
  for (auto &p : sing)
  {
    p += offset;
  }
  return {[fe = f.eval, offset](const Vec3 &p, double t) { return fe(p - offset, t); },
          std::move(sing)};
}

} // namespace gaugefield
