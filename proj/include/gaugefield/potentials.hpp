#ifndef GAUGEFIELD_POTENTIALS_HPP
#define GAUGEFIELD_POTENTIALS_HPP

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <variant>

#include "gaugefield/geometry.hpp"
#include "gaugefield/quadrature.hpp"
#include "gaugefield/sources.hpp"

namespace gaugefield
{

using VectorProvider = std::function<Vec3(const Vec3 &, double)>;
using ScalarProvider = std::function<double(const Vec3 &, double)>;

template <class T>
struct PotentialResult
{
  T value;
  QuadratureSpec spec;
  std::optional<ConvergenceTrace> trace;
};

//
// Coulomb-gauge vector potential from the magnetic field,
//
//   A(r) = curl_r  int B(r') / (4 pi |r - r'|) d^3r'
//        = (1/4pi) int B(r') x (r - r') / |r - r'|^3 d^3r',
//
// evaluated in the second form so that no numerical derivative is taken of a
// numerical integral.
//
Vec3 vector_potential(const VectorField &B, const Vec3 &r, double t, const QuadratureSpec &spec);

// Scalar potential from the electric field,
//
//   V(r) = div_r int E(r') / (4 pi |r - r'|) d^3r'
//        = -(1/4pi) int E(r') . (r - r') / |r - r'|^3 d^3r'.
//
double scalar_potential(const VectorField &E, const Vec3 &r, double t, const QuadratureSpec &spec);

// int F(r') / (4 pi |r - r'|) d^3r'. Its curl (divergence) taken by finite
// differences reproduces vector_potential (scalar_potential) in the form with
// the derivative outside the integral.
Vec3 newtonian_integral(const VectorField &F, const Vec3 &r, double t, const QuadratureSpec &spec);

// Refines the spec until successive A values agree within tolerance.
PotentialResult<Vec3> vector_potential_refined(const VectorField &B, const Vec3 &r, double t,
                                               const QuadratureSpec &spec, double tolerance,
                                               int max_level);

//
// Gauge function chi(r, t) = (1 + rate * t) * chi_s(r) with closed-form
// gradient and time derivative. chi_s is a polynomial of total degree <= 3 or
// a Gaussian bump.
//
class GaugeFunction
{
public:
  // Monomial coefficients in the order of monomial_exponents().
  static GaugeFunction polynomial(const std::array<double, 20> &coeffs, double rate = 0.0);
  static GaugeFunction gaussian(const Vec3 &center, double width, double amplitude, double rate = 0.0);
  static GaugeFunction constant(double c);

  // (a, b, c) exponents of x^a y^b z^c for each polynomial coefficient slot.
  static const std::array<std::array<int, 3>, 20> &monomial_exponents();

  double value(const Vec3 &p, double t = 0.0) const;
  Vec3 gradient(const Vec3 &p, double t = 0.0) const;
  double time_derivative(const Vec3 &p, double t = 0.0) const;

  // Radius beyond which a Gaussian bump is below 1e-14 of its amplitude;
  // empty for polynomials.
  std::optional<double> support_radius() const;

private:
  struct Polynomial
  {
    std::array<double, 20> c;
  };
  struct Gaussian
  {
    Vec3 center;
    double width;
    double amplitude;
  };

  GaugeFunction(std::variant<Polynomial, Gaussian> shape, double rate);

  double spatial(const Vec3 &p) const;
  Vec3 spatial_gradient(const Vec3 &p) const;

  std::variant<Polynomial, Gaussian> shape_;
  double rate_;
};

// A' = A + grad chi, V' = V - d chi / dt.
std::pair<VectorProvider, ScalarProvider> gauge_transform(VectorProvider A, ScalarProvider V,
                                                          const GaugeFunction &chi);

// Midpoint sum of |A|^2 * cell volume over the grid nodes.
double a_squared_functional(const std::function<Vec3(const Vec3 &)> &A, const GridSpec &region);

// Max over probes of |div A| (central differences, step h), divided by
// max |A| / length_scale over the same probes.
double coulomb_residual(const std::function<Vec3(const Vec3 &)> &A, std::span<const Vec3> probes,
                        double h, double length_scale = 1.0);

} // namespace gaugefield

#endif // GAUGEFIELD_POTENTIALS_HPP
