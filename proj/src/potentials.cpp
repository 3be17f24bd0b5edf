#include "gaugefield/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "gaugefield/diffops.hpp"

namespace gaugefield
{

namespace
{

constexpr double inv_four_pi = 1.0 / (4.0 * pi);

// Singular points for an evaluation at r: the source's own plus r itself,
// unless the grid is centered on r (the spherical Jacobian removes it).
std::vector<Vec3> singular_set(const VectorField &f, const Vec3 &r, const QuadratureSpec &spec)
{
  std::vector<Vec3> pts = f.singular_points;
  const bool centered = spec.frame == Frame::spherical && spec.origin == r;
  if (!centered)
  {
    pts.push_back(r);
  }
  return pts;
}

// Bump (1 - (x/delta)^2)^4 around a source singularity.
double bump(const Vec3 &p, const Vec3 &c, double delta)
{
  const Vec3 d = p - c;
  const double u = dot(d, d) / (delta * delta);
  if (u >= 1.0)
  {
    return 0.0;
  }
  const double v = 1.0 - u;
  return v * v * v * v;
}

//
// Integral of a kernel over the spec with source singular points split off:
// near each one, the kernel times a bump is integrated on a small spherical
// patch centered there (where the r'^2 Jacobian tames a 1/r'^2 source), and the
// main grid sees the kernel times (1 - bump).
//
Vec3 integrate_split(const VecIntegrand &kernel, const VectorField &f, const Vec3 &r, const QuadratureSpec &s)
{
  const auto sing = singular_set(f, r, s);
  if (f.singular_points.empty())
  {
    return integrate_vec(kernel, s, sing);
  }
  std::vector<double> radius;
  for (std::size_t i = 0; i < f.singular_points.size(); ++i)
  {
    const Vec3 &c = f.singular_points[i];
    double gap = norm(r - c);
    for (std::size_t j = 0; j < f.singular_points.size(); ++j)
    {
      if (j != i)
      {
        gap = std::min(gap, norm(f.singular_points[j] - c));
      }
    }
    if (!(gap > 0.0))
    {
      throw std::domain_error("potential evaluated at a source singular point");
    }
    radius.push_back(0.5 * gap);
  }
  auto weight = [&](const Vec3 &p)
  {
    double w = 0.0;
    for (std::size_t i = 0; i < radius.size(); ++i)
    {
      w += bump(p, f.singular_points[i], radius[i]);
    }
    return w;
  };
  Vec3 total = integrate_vec(
    [&](const Vec3 &rp)
    {
      const double w = weight(rp);
      return w >= 1.0 ? Vec3{} : kernel(rp) * (1.0 - w);
    },
    s, sing);
  for (std::size_t i = 0; i < radius.size(); ++i)
  {
    QuadratureSpec patch;
    patch.frame = Frame::spherical;
    patch.origin = f.singular_points[i];
    patch.axes[0] = AxisSpec{0.0, radius[i], 8, Rule::gauss4};
    patch.axes[1] = AxisSpec{0.0, pi, 8, Rule::gauss4};
    patch.axes[2] = AxisSpec{-pi, pi, 16, Rule::gauss4};
    total += integrate_vec([&](const Vec3 &rp) { return kernel(rp) * bump(rp, f.singular_points[i], radius[i]); },
                           patch);
  }
  return total;
}

} // namespace

Vec3 vector_potential(const VectorField &B, const Vec3 &r, double t, const QuadratureSpec &spec)
{
  r.validated();
  const QuadratureSpec s = spec.anchored_at(r);
  return integrate_split(
    [&](const Vec3 &rp)
    {
      const Vec3 d = r - rp;
      const double d2 = dot(d, d);
      const double inv = inv_four_pi / (d2 * std::sqrt(d2));
      return cross(B(rp, t), d) * inv;
    },
    B, r, s);
}

double scalar_potential(const VectorField &E, const Vec3 &r, double t, const QuadratureSpec &spec)
{
  r.validated();
  const QuadratureSpec s = spec.anchored_at(r);
  const Vec3 v = integrate_split(
    [&](const Vec3 &rp)
    {
      const Vec3 d = r - rp;
      const double d2 = dot(d, d);
      return Vec3{-dot(E(rp, t), d) * inv_four_pi / (d2 * std::sqrt(d2)), 0.0, 0.0};
    },
    E, r, s);
  return v.x;
}

Vec3 newtonian_integral(const VectorField &F, const Vec3 &r, double t, const QuadratureSpec &spec)
{
  r.validated();
  const QuadratureSpec s = spec.anchored_at(r);
  return integrate_split([&](const Vec3 &rp) { return F(rp, t) * (inv_four_pi / norm(r - rp)); }, F, r, s);
}

PotentialResult<Vec3> vector_potential_refined(const VectorField &B, const Vec3 &r, double t,
                                               const QuadratureSpec &spec, double tolerance,
                                               int max_level)
{
  const RefineResult rr = refine_until(
    [&](const QuadratureSpec &s) { return vector_potential(B, r, t, s); }, spec, tolerance,
    max_level);
  if (!rr.converged)
  {
    throw IntegrationError("vector potential at probe did not converge: " + rr.message);
  }
  QuadratureSpec used = spec;
  for (int i = 0; i < rr.levels; ++i)
  {
    used = used.refined();
  }
  return {rr.value, used, rr.trace};
}

GaugeFunction::GaugeFunction(std::variant<Polynomial, Gaussian> shape, double rate)
  : shape_(shape), rate_(rate)
{
  if (!std::isfinite(rate))
  {
    throw std::invalid_argument("gauge function time rate must be finite");
  }
}

const std::array<std::array<int, 3>, 20> &GaugeFunction::monomial_exponents()
{
  static const std::array<std::array<int, 3>, 20> e = [] {
    std::array<std::array<int, 3>, 20> out{};
    std::size_t n = 0;
    for (int deg = 0; deg <= 3; ++deg)
    {
      for (int a = deg; a >= 0; --a)
      {
        for (int b = deg - a; b >= 0; --b)
        {
          out[n++] = {a, b, deg - a - b};
        }
      }
    }
    return out;
  }();
  return e;
}

GaugeFunction GaugeFunction::polynomial(const std::array<double, 20> &coeffs, double rate)
{
  for (double c : coeffs)
  {
    if (!std::isfinite(c))
    {
      throw std::invalid_argument("polynomial gauge coefficients must be finite");
    }
  }
  return GaugeFunction(Polynomial{coeffs}, rate);
}

GaugeFunction GaugeFunction::gaussian(const Vec3 &center, double width, double amplitude, double rate)
{
  center.validated();
  if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(amplitude))
  {
    throw std::invalid_argument("Gaussian gauge function needs width > 0 and finite amplitude");
  }
  return GaugeFunction(Gaussian{center, width, amplitude}, rate);
}

GaugeFunction GaugeFunction::constant(double c)
{
  std::array<double, 20> coeffs{};
  coeffs[0] = c;
  return polynomial(coeffs);
}

namespace
{

double ipow(double x, int n)
{
  double r = 1.0;
  for (int i = 0; i < n; ++i)
  {
    r *= x;
  }
  return r;
}

} // namespace

double GaugeFunction::spatial(const Vec3 &p) const
{
  if (const auto *poly = std::get_if<Polynomial>(&shape_))
  {
    const auto &ex = monomial_exponents();
    double v = 0.0;
    for (std::size_t i = 0; i < ex.size(); ++i)
    {
      v += poly->c[i] * ipow(p.x, ex[i][0]) * ipow(p.y, ex[i][1]) * ipow(p.z, ex[i][2]);
    }
    return v;
  }
  const auto &g = std::get<Gaussian>(shape_);
  const Vec3 d = p - g.center;
  return g.amplitude * std::exp(-dot(d, d) / (2.0 * g.width * g.width));
}

Vec3 GaugeFunction::spatial_gradient(const Vec3 &p) const
{
  if (const auto *poly = std::get_if<Polynomial>(&shape_))
  {
    const auto &ex = monomial_exponents();
    Vec3 g{};
    for (std::size_t i = 0; i < ex.size(); ++i)
    {
      const auto [a, b, c] = ex[i];
      const double k = poly->c[i];
      if (a > 0)
      {
        g.x += k * a * ipow(p.x, a - 1) * ipow(p.y, b) * ipow(p.z, c);
      }
      if (b > 0)
      {
        g.y += k * b * ipow(p.x, a) * ipow(p.y, b - 1) * ipow(p.z, c);
      }
      if (c > 0)
      {
        g.z += k * c * ipow(p.x, a) * ipow(p.y, b) * ipow(p.z, c - 1);
      }
    }
    return g;
  }
  const auto &g = std::get<Gaussian>(shape_);
  const Vec3 d = p - g.center;
  const double w2 = g.width * g.width;
  return d * (-g.amplitude * std::exp(-dot(d, d) / (2.0 * w2)) / w2);
}

double GaugeFunction::value(const Vec3 &p, double t) const { return (1.0 + rate_ * t) * spatial(p); }

Vec3 GaugeFunction::gradient(const Vec3 &p, double t) const
{
  return spatial_gradient(p) * (1.0 + rate_ * t);
}

double GaugeFunction::time_derivative(const Vec3 &p, double) const { return rate_ * spatial(p); }

std::optional<double> GaugeFunction::support_radius() const
{
  if (const auto *g = std::get_if<Gaussian>(&shape_))
  {
    // exp(-r^2 / 2w^2) < 1e-14  <=>  r > w sqrt(28 ln 10)
    return g->width * std::sqrt(28.0 * std::log(10.0));
  }
  return std::nullopt;
}

std::pair<VectorProvider, ScalarProvider> gauge_transform(VectorProvider A, ScalarProvider V,
                                                          const GaugeFunction &chi)
{
  VectorProvider a = [A = std::move(A), chi](const Vec3 &p, double t) { return A(p, t) + chi.gradient(p, t); };
  ScalarProvider v = [V = std::move(V), chi](const Vec3 &p, double t)
  { return V(p, t) - chi.time_derivative(p, t); };
  return {std::move(a), std::move(v)};
}

double a_squared_functional(const std::function<Vec3(const Vec3 &)> &A, const GridSpec &region)
{
  const auto [nx, ny, nz] = region.dims();
  double sum = 0.0;
  double comp = 0.0;
  for (int i = 0; i < nx; ++i)
  {
    double slab = 0.0;
    for (int j = 0; j < ny; ++j)
    {
      for (int k = 0; k < nz; ++k)
      {
        const Vec3 a = A(region.node(i, j, k));
        slab += dot(a, a);
      }
    }
    const double t = sum + slab;
    comp += std::abs(sum) >= std::abs(slab) ? (sum - t) + slab : (slab - t) + sum;
    sum = t;
  }
  return (sum + comp) * region.cell_volume();
}

double coulomb_residual(const std::function<Vec3(const Vec3 &)> &A, std::span<const Vec3> probes,
                        double h, double length_scale)
{
  if (probes.empty())
  {
    throw std::invalid_argument("coulomb_residual needs at least one probe");
  }
  if (!(length_scale > 0.0))
  {
    throw std::invalid_argument("coulomb_residual length scale must be > 0");
  }
  const FDScheme fd(h);
  double max_div = 0.0;
  double max_a = 0.0;
  for (const Vec3 &p : probes)
  {
    max_div = std::max(max_div, std::abs(div_fd(A, p, fd)));
    max_a = std::max(max_a, norm(A(p)));
  }
  if (max_a == 0.0)
  {
    return max_div;
  }
  return max_div * length_scale / max_a;
}

} // namespace gaugefield
