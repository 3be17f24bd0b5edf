#ifndef GAUGEFIELD_SOURCES_HPP
#define GAUGEFIELD_SOURCES_HPP

#include <functional>
#include <variant>
#include <vector>

#include "gaugefield/geometry.hpp"

//
// Closed-form electromagnetic sources. Heaviside-Lorentz units with c = hbar = 1.
// The solenoid axis is the z-axis and positive flux means B along +z, with A
// circulating counter-clockwise about +z.
//

namespace gaugefield
{

class SolenoidParams
{
public:
  SolenoidParams(double flux, double radius);

  double flux() const { return flux_; }
  double radius() const { return radius_; }
  double b_inside() const;

private:
  double flux_;
  double radius_;
};

// Phi(t) = phi0 + rate * t
struct LinearFlux
{
  double phi0 = 0.0;
  double rate = 0.0;
};

// Phi(t) = phi0 * sin(omega * t)
struct SinusoidalFlux
{
  double phi0 = 0.0;
  double omega = 0.0;
};

using FluxLaw = std::variant<LinearFlux, SinusoidalFlux>;

class TimeVaryingSolenoid
{
public:
  TimeVaryingSolenoid(double radius, FluxLaw law);

  double radius() const { return radius_; }
  const FluxLaw &law() const { return law_; }

  double flux(double t) const;
  double flux_rate(double t) const;

  // Instantaneous (quasi-static) solenoid at time t.
  SolenoidParams at(double t) const { return {flux(t), radius_}; }

private:
  double radius_;
  FluxLaw law_;
};

class PointCharge
{
public:
  PointCharge(double q, const Vec3 &position);

  double q() const { return q_; }
  const Vec3 &position() const { return position_; }

private:
  double q_;
  Vec3 position_;
};

//
// Divergence-free azimuthal bump B = amplitude * (6/a^2) (1 - r^2/a^2)^2 (-y, x, 0)
// for r < a, identically zero for r >= a. It is the curl of
// amplitude * (1 - r^2/a^2)^3 z_hat.
//
class CompactTestField
{
public:
  CompactTestField(double support_radius, double amplitude, const Vec3 &center = {});

  double support_radius() const { return a_; }
  double amplitude() const { return amplitude_; }
  const Vec3 &center() const { return center_; }

  Vec3 operator()(const Vec3 &p) const;

private:
  double a_;
  double amplitude_;
  Vec3 center_;
};

Vec3 solenoid_B(const SolenoidParams &s, const Vec3 &p);
Vec3 solenoid_A_analytic(const SolenoidParams &s, const Vec3 &p);

// Magnitude dflux / (2 pi d) of the vector potential of a thin flux tube.
double thin_tube_A(double dflux, double d);

Vec3 point_charge_E(const PointCharge &c, const Vec3 &p);

// Azimuthal induced E of a time-varying solenoid (Faraday's law).
Vec3 induced_E_solenoid(const TimeVaryingSolenoid &s, const Vec3 &p, double t);

// A of the quasi-static solenoid at time t.
Vec3 solenoid_A_at(const TimeVaryingSolenoid &s, const Vec3 &p, double t);

//
// A time-dependent vector field with the points where it is singular. The
// quadrature layer excludes cells touching those points.
//
struct VectorField
{
  std::function<Vec3(const Vec3 &, double)> eval;
  std::vector<Vec3> singular_points;

  Vec3 operator()(const Vec3 &p, double t) const { return eval(p, t); }
};

VectorField zero_field();
VectorField magnetic_field(const SolenoidParams &s);
VectorField magnetic_field(const TimeVaryingSolenoid &s);
VectorField magnetic_field(const CompactTestField &f);
VectorField electric_field(const PointCharge &c);
VectorField electric_field(const TimeVaryingSolenoid &s);

// Pointwise sum; singular point sets are merged.
VectorField operator+(const VectorField &a, const VectorField &b);

// Field shifted so that f'(p) = f(p - offset).
VectorField translated(const VectorField &f, const Vec3 &offset);

} // namespace gaugefield

#endif // GAUGEFIELD_SOURCES_HPP
