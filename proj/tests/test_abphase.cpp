#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "gaugefield/abphase.hpp"
#include "gaugefield/potentials.hpp"
#include "oracle_values.hpp"

using namespace gaugefield;

namespace
{

StaticVectorFn analytic_A(const SolenoidParams &s)
{
  return [s](const Vec3 &p) { return solenoid_A_analytic(s, p); };
}

const Vec3 z_axis{0, 0, 1};

} // namespace

TEST_CASE("circulation around the solenoid")
{
  const SolenoidParams s(1.0, 1.0);
  const PolylinePath loop = circle_loop({}, 2.0, z_axis, 720);
  CHECK(circulation(analytic_A(s), loop) == doctest::Approx(oracle::circulation_720_rho2).epsilon(1e-12));
  CHECK(circulation(analytic_A(s), loop.reversed()) == doctest::Approx(-oracle::circulation_720_rho2).epsilon(1e-12));

  const PolylinePath aside = circle_loop({3, 0, 0}, 0.4, z_axis, 720);
  CHECK(std::abs(circulation(analytic_A(s), aside)) < 1e-12);

  CHECK(circulation([](const Vec3 &) { return Vec3{1, 0, 0}; }, loop) == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(circulation([](const Vec3 &) { return Vec3{NAN, 0, 0}; }, loop), std::domain_error);
}

TEST_CASE("winding numbers")
{
  CHECK(winding_number(circle_loop({}, 2.0, z_axis, 64)) == 1);
  CHECK(winding_number(circle_loop({}, 2.0, z_axis, 64).reversed()) == -1);
  CHECK(winding_number(multi_turn_loop(2.0, 3, 64)) == 3);
  CHECK(winding_number(multi_turn_loop(2.0, -2, 64)) == -2);
  CHECK(winding_number(circle_loop({5, 0, 0}, 1.0, z_axis, 64)) == 0);
  // tilted loop still links the axis once
  CHECK(winding_number(circle_loop({}, 2.0, normalized({0.3, 0.1, 1.0}), 64)) == 1);
  // axis through a different point
  CHECK(winding_number(circle_loop({5, 0, 0}, 1.0, z_axis, 64), AxisLine{{5, 0, 0}, z_axis}) == 1);
  CHECK_THROWS_AS(winding_number(PolylinePath({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}})), std::domain_error);
}

TEST_CASE("enclosed_flux")
{
  const SolenoidParams s(2.5, 1.0);
  CHECK(enclosed_flux(s, circle_loop({}, 2.0, z_axis, 128)) == doctest::Approx(2.5));
  CHECK(enclosed_flux(s, multi_turn_loop(2.0, -2, 128)) == doctest::Approx(-5.0));
  CHECK(enclosed_flux(s, circle_loop({4, 0, 0}, 1.0, z_axis, 128)) == 0.0);
  // polygon of radius R/2 inside: area fraction of the inscribed polygon
  const int n = 256;
  const double polygon_area = 0.5 * n * 0.25 * std::sin(2.0 * pi / n);
  CHECK(enclosed_flux(s, circle_loop({}, 0.5, z_axis, n)) ==
        doctest::Approx(s.b_inside() * polygon_area).epsilon(1e-12));
  CHECK(enclosed_flux(s, circle_loop({}, 0.5, z_axis, 4096)) == doctest::Approx(2.5 / 4.0).epsilon(1e-5));
  CHECK_THROWS_AS(enclosed_flux(s, circle_loop({}, 1.0, z_axis, 128)), std::domain_error);
  CHECK_THROWS_AS(enclosed_flux(s, circle_loop({1, 0, 0}, 0.5, z_axis, 128)), std::domain_error);
}

TEST_CASE("ab_phase")
{
  const SolenoidParams s(2.0 * pi, 1.0);
  ABConfig cfg{1.0, circle_loop({}, 2.0, z_axis, 720), analytic_A(s)};
  CHECK(ab_phase(cfg) == doctest::Approx(2.0 * pi).epsilon(1e-5));

  cfg.q = 0.0;
  CHECK(ab_phase(cfg) == 0.0);

  cfg.q = 1.0;
  const double base = ab_phase(cfg);
  cfg.q = -3.0;
  CHECK(ab_phase(cfg) == doctest::Approx(-3.0 * base).epsilon(1e-14));

  // linear in the flux
  cfg.q = 1.0;
  cfg.A = analytic_A(SolenoidParams(4.0 * pi, 1.0));
  CHECK(ab_phase(cfg) == doctest::Approx(2.0 * base).epsilon(1e-14));
}

TEST_CASE("phase is unchanged by a gauge transformation")
{
  const SolenoidParams s(1.3, 1.0);
  const GaugeFunction chi = GaugeFunction::gaussian({1.5, 0.5, 0.1}, 0.6, 3.0);
  const PolylinePath loop = circle_loop({}, 1.8, normalized({0.1, 0.0, 1.0}), 2048);
  ABConfig a{1.0, loop, analytic_A(s)};
  ABConfig b{1.0, loop, [&](const Vec3 &p) { return solenoid_A_analytic(s, p) + chi.gradient(p); }};
  CHECK(ab_phase(b) == doctest::Approx(ab_phase(a)).epsilon(1e-5));
  CHECK(std::abs(gradient_circulation([&](const Vec3 &p) { return chi.value(p); }, loop)) < 1e-10);
}

TEST_CASE("circulation matches enclosed flux")
{
  const SolenoidParams s(1.7, 1.0);
  for (double rho : {1.5, 2.0, 5.0})
  {
    for (int turns : {-2, -1, 1, 3})
    {
      const PolylinePath path =
        turns == 1 ? circle_loop({}, rho, z_axis, 720)
                   : (turns == -1 ? circle_loop({}, rho, z_axis, 720).reversed() : multi_turn_loop(rho, turns, 720));
      const double flux = enclosed_flux(s, path);
      CHECK(flux == doctest::Approx(turns * 1.7));
      CHECK(circulation(analytic_A(s), path) == doctest::Approx(flux).epsilon(1e-4));
    }
  }
}
