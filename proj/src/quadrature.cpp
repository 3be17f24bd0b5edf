#include "gaugefield/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace gaugefield
{

namespace
{

struct GaussRule
{
  std::vector<double> x;
  std::vector<double> w;
};

const GaussRule &gauss_rule(Rule r)
{
  static const GaussRule mid{{0.0}, {2.0}};
  static const GaussRule g2{{-0.57735026918962576451, 0.57735026918962576451}, {1.0, 1.0}};
  static const GaussRule g3{{-0.77459666924148337704, 0.0, 0.77459666924148337704},
                            {0.55555555555555555556, 0.88888888888888888889,
                             0.55555555555555555556}};
  static const GaussRule g4{{-0.86113631159405257522, -0.33998104358485626480,
                             0.33998104358485626480, 0.86113631159405257522},
                            {0.34785484513745385737, 0.65214515486254614263,
                             0.65214515486254614263, 0.34785484513745385737}};
  switch (r)
  {
    case Rule::midpoint:
      return mid;
    case Rule::gauss2:
      return g2;
    case Rule::gauss3:
      return g3;
    case Rule::gauss4:
      return g4;
  }
  return mid;
}

// Reference-variable range of an axis.
std::pair<double, double> u_range(const AxisSpec &a)
{
  switch (a.mapping)
  {
    case Mapping::uniform:
      return {a.lo, a.hi};
    case Mapping::sinh:
      return {std::asinh((a.lo - a.map_center) / a.map_scale),
              std::asinh((a.hi - a.map_center) / a.map_scale)};
    case Mapping::semi_infinite:
      return {0.0, 1.0};
  }
  return {a.lo, a.hi};
}

double map_x(const AxisSpec &a, double u)
{
  switch (a.mapping)
  {
    case Mapping::uniform:
      return u;
    case Mapping::sinh:
      return a.map_center + a.map_scale * std::sinh(u);
    case Mapping::semi_infinite:
      return u >= 1.0 ? std::numeric_limits<double>::infinity()
                      : a.lo + a.map_scale * u / (1.0 - u);
  }
  return u;
}

double map_dx(const AxisSpec &a, double u)
{
  switch (a.mapping)
  {
    case Mapping::uniform:
      return 1.0;
    case Mapping::sinh:
      return a.map_scale * std::cosh(u);
    case Mapping::semi_infinite:
      return a.map_scale / ((1.0 - u) * (1.0 - u));
  }
  return 1.0;
}

struct AxisNodes
{
  std::vector<double> x;      // node coordinates
  std::vector<double> w;      // weights including mapping and frame Jacobian
  std::vector<int> cell;      // owning cell of each node
  std::vector<double> cell_lo;
  std::vector<double> cell_hi;
  std::vector<double> cell_mid;
  std::vector<double> cell_weight; // sum of node weights per cell
};

enum class Jacobian
{
  none,
  linear,   // |x|
  square,   // x^2
  sine      // sin(x)
};

double jacobian(Jacobian j, double x)
{
  switch (j)
  {
    case Jacobian::none:
      return 1.0;
    case Jacobian::linear:
      return x;
    case Jacobian::square:
      return x * x;
    case Jacobian::sine:
      return std::sin(x);
  }
  return 1.0;
}

AxisNodes build_axis(const AxisSpec &a, Jacobian jac)
{
  const GaussRule &g = gauss_rule(a.rule);
  const auto [u0, u1] = u_range(a);
  const double du = (u1 - u0) / a.cells;
  AxisNodes n;
  const std::size_t count = static_cast<std::size_t>(a.cells) * g.x.size();
  n.x.reserve(count);
  n.w.reserve(count);
  n.cell.reserve(count);
  for (int c = 0; c < a.cells; ++c)
  {
    const double ua = u0 + c * du;
    const double ub = c + 1 == a.cells ? u1 : u0 + (c + 1) * du;
    const double mid = 0.5 * (ua + ub);
    const double half = 0.5 * (ub - ua);
    double sum = 0.0;
    for (std::size_t k = 0; k < g.x.size(); ++k)
    {
      const double u = mid + half * g.x[k];
      const double x = map_x(a, u);
      const double w = half * g.w[k] * map_dx(a, u) * jacobian(jac, x);
      n.x.push_back(x);
      n.w.push_back(w);
      n.cell.push_back(c);
      sum += w;
    }
    n.cell_lo.push_back(map_x(a, ua));
    n.cell_hi.push_back(map_x(a, ub));
    n.cell_mid.push_back(map_x(a, mid));
    n.cell_weight.push_back(sum);
  }
  return n;
}

std::array<Jacobian, 3> frame_jacobians(Frame f)
{
  switch (f)
  {
    case Frame::cartesian:
      return {Jacobian::none, Jacobian::none, Jacobian::none};
    case Frame::cylindrical:
      return {Jacobian::linear, Jacobian::none, Jacobian::none};
    case Frame::spherical:
      return {Jacobian::square, Jacobian::sine, Jacobian::none};
  }
  return {Jacobian::none, Jacobian::none, Jacobian::none};
}

bool is_angular(Frame f, int axis)
{
  return (f == Frame::cylindrical && axis == 1) || (f == Frame::spherical && axis >= 1);
}

bool is_periodic(const QuadratureSpec &s, int axis)
{
  const bool azimuth = (s.frame == Frame::cylindrical && axis == 1) ||
                       (s.frame == Frame::spherical && axis == 2);
  return azimuth && std::abs((s.axes[axis].hi - s.axes[axis].lo) - 2.0 * pi) < 1e-12;
}

// Frame coordinates of a Cartesian point.
std::array<double, 3> to_frame(const QuadratureSpec &s, const Vec3 &p)
{
  const Vec3 d = p - s.origin;
  switch (s.frame)
  {
    case Frame::cartesian:
      return {d.x, d.y, d.z};
    case Frame::cylindrical:
    {
      const double rho = std::hypot(d.x, d.y);
      return {rho, rho > 0.0 ? std::atan2(d.y, d.x) - s.azimuth_offset : 0.0, d.z};
    }
    case Frame::spherical:
    {
      const double r = norm(d);
      const double polar = r > 0.0 ? std::acos(std::clamp(d.z / r, -1.0, 1.0)) : 0.0;
      const double rho = std::hypot(d.x, d.y);
      return {r, polar, rho > 0.0 ? std::atan2(d.y, d.x) - s.azimuth_offset : 0.0};
    }
  }
  return {d.x, d.y, d.z};
}

Vec3 from_frame(const QuadratureSpec &s, double u0, double u1, double u2)
{
  switch (s.frame)
  {
    case Frame::cartesian:
      return s.origin + Vec3{u0, u1, u2};
    case Frame::cylindrical:
    {
      const double t = u1 + s.azimuth_offset;
      return s.origin + Vec3{u0 * std::cos(t), u0 * std::sin(t), u2};
    }
    case Frame::spherical:
    {
      const double a = u2 + s.azimuth_offset;
      const double st = std::sin(u1);
      return s.origin + Vec3{u0 * st * std::cos(a), u0 * st * std::sin(a), u0 * std::cos(u1)};
    }
  }
  return s.origin;
}

// Cells of one axis whose closure contains v.
std::vector<int> containing_cells(const AxisNodes &n, double v)
{
  std::vector<int> out;
  for (std::size_t c = 0; c < n.cell_lo.size(); ++c)
  {
    if (n.cell_lo[c] <= v && v <= n.cell_hi[c])
    {
      out.push_back(static_cast<int>(c));
    }
  }
  return out;
}

std::vector<int> all_cells(const AxisNodes &n)
{
  std::vector<int> out(n.cell_lo.size());
  for (std::size_t c = 0; c < out.size(); ++c)
  {
    out[c] = static_cast<int>(c);
  }
  return out;
}

using CellIndex = std::array<int, 3>;

std::vector<CellIndex> singular_cells(const QuadratureSpec &s, const std::array<AxisNodes, 3> &ax,
                                      std::span<const Vec3> points)
{
  std::vector<CellIndex> out;
  for (const Vec3 &p : points)
  {
    auto u = to_frame(s, p);
    std::array<std::vector<int>, 3> cand;
    for (int a = 0; a < 3; ++a)
    {
      if (is_angular(s.frame, a) && !(s.frame == Frame::spherical && a == 1))
      {
        // Bring the azimuth into [lo, lo + 2 pi).
        const double lo = s.axes[a].lo;
        u[a] = lo + std::fmod(std::fmod(u[a] - lo, 2.0 * pi) + 2.0 * pi, 2.0 * pi);
      }
      cand[a] = containing_cells(ax[a], u[a]);
      if (is_periodic(s, a) && u[a] == s.axes[a].lo)
      {
        cand[a].push_back(s.axes[a].cells - 1);
      }
    }
    // Coordinate singularities: every cell around the degenerate line.
    if (s.frame == Frame::cylindrical && u[0] == 0.0)
    {
      cand[1] = all_cells(ax[1]);
    }
    if (s.frame == Frame::spherical && u[0] == 0.0)
    {
      cand[1] = all_cells(ax[1]);
      cand[2] = all_cells(ax[2]);
    }
    if (s.frame == Frame::spherical && (u[1] == 0.0 || u[1] == pi))
    {
      cand[2] = all_cells(ax[2]);
    }
    for (int i : cand[0])
    {
      for (int j : cand[1])
      {
        for (int k : cand[2])
        {
          out.push_back({i, j, k});
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Neumaier-compensated vector accumulator.
struct CompensatedSum
{
  Vec3 sum{};
  Vec3 comp{};

  static void add1(double &s, double &c, double v)
  {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
    {
      c += (s - t) + v;
    }
    else
    {
      c += (v - t) + s;
    }
    s = t;
  }

  void add(const Vec3 &v)
  {
    add1(sum.x, comp.x, v.x);
    add1(sum.y, comp.y, v.y);
    add1(sum.z, comp.z, v.z);
  }

  Vec3 value() const { return sum + comp; }
};

[[noreturn]] void fail_cell(const CellIndex &c, const Vec3 &p)
{
  std::ostringstream os;
  os.precision(17);
  os << "non-finite integrand in cell (" << c[0] << ", " << c[1] << ", " << c[2] << ") at ("
     << p.x << ", " << p.y << ", " << p.z << ")";
  throw IntegrationError(os.str());
}

// Core loop. eval(u0, u1, u2, pos) returns the integrand at a node.
template <class Eval>
Vec3 accumulate(const QuadratureSpec &spec, std::span<const Vec3> singular_points, Eval &&eval)
{
  spec.validate();
  const auto jac = frame_jacobians(spec.frame);
  const std::array<AxisNodes, 3> ax = {build_axis(spec.axes[0], jac[0]),
                                       build_axis(spec.axes[1], jac[1]),
                                       build_axis(spec.axes[2], jac[2])};
  const std::vector<CellIndex> sing = singular_cells(spec, ax, singular_points);
  std::vector<char> sing0(static_cast<std::size_t>(spec.axes[0].cells), 0);
  for (const auto &c : sing)
  {
    sing0[static_cast<std::size_t>(c[0])] = 1;
  }

  // Per-axis trig tables for the curvilinear frames.
  std::vector<double> c1(ax[1].x.size(), 1.0), s1(ax[1].x.size(), 0.0);
  std::vector<double> c2(ax[2].x.size(), 1.0), s2(ax[2].x.size(), 0.0);
  if (spec.frame == Frame::cylindrical)
  {
    for (std::size_t j = 0; j < ax[1].x.size(); ++j)
    {
      c1[j] = std::cos(ax[1].x[j] + spec.azimuth_offset);
      s1[j] = std::sin(ax[1].x[j] + spec.azimuth_offset);
    }
  }
  else if (spec.frame == Frame::spherical)
  {
    for (std::size_t j = 0; j < ax[1].x.size(); ++j)
    {
      c1[j] = std::cos(ax[1].x[j]);
      s1[j] = std::sin(ax[1].x[j]);
    }
    for (std::size_t k = 0; k < ax[2].x.size(); ++k)
    {
      c2[k] = std::cos(ax[2].x[k] + spec.azimuth_offset);
      s2[k] = std::sin(ax[2].x[k] + spec.azimuth_offset);
    }
  }

  const Vec3 o = spec.origin;
  CompensatedSum total;
  std::vector<CellIndex> row_sing;
  for (std::size_t i = 0; i < ax[0].x.size(); ++i)
  {
    const int ci = ax[0].cell[i];
    const bool slab_sing = sing0[static_cast<std::size_t>(ci)] != 0;
    for (std::size_t j = 0; j < ax[1].x.size(); ++j)
    {
      const int cj = ax[1].cell[j];
      row_sing.clear();
      if (slab_sing)
      {
        for (const auto &c : sing)
        {
          if (c[0] == ci && c[1] == cj)
          {
            row_sing.push_back(c);
          }
        }
      }
      const double wij = ax[0].w[i] * ax[1].w[j];
      const double u0 = ax[0].x[i];
      const double u1 = ax[1].x[j];
      Vec3 row{};
      for (std::size_t k = 0; k < ax[2].x.size(); ++k)
      {
        const int ck = ax[2].cell[k];
        if (!row_sing.empty() &&
            std::any_of(row_sing.begin(), row_sing.end(), [ck](const CellIndex &c) { return c[2] == ck; }))
        {
          continue;
        }
        const double u2 = ax[2].x[k];
        Vec3 pos;
        switch (spec.frame)
        {
          case Frame::cartesian:
            pos = {o.x + u0, o.y + u1, o.z + u2};
            break;
          case Frame::cylindrical:
            pos = {o.x + u0 * c1[j], o.y + u0 * s1[j], o.z + u2};
            break;
          case Frame::spherical:
            pos = {o.x + u0 * s1[j] * c2[k], o.y + u0 * s1[j] * s2[k], o.z + u0 * c1[j]};
            break;
        }
        const Vec3 v = eval(u0, u1, u2, pos);
        if (!v.finite())
        {
          fail_cell({ci, cj, ck}, pos);
        }
        row += v * (wij * ax[2].w[k]);
      }
      total.add(row);
    }
  }

  if (spec.policy == SingularPolicy::shifted_centroid)
  {
    for (const auto &c : sing)
    {
      const double m0 = ax[0].cell_mid[static_cast<std::size_t>(c[0])];
      const double m1 = ax[1].cell_mid[static_cast<std::size_t>(c[1])];
      const double m2 = ax[2].cell_mid[static_cast<std::size_t>(c[2])];
      Vec3 pos = from_frame(spec, m0, m1, m2);
      for (const Vec3 &sp : singular_points)
      {
        const Vec3 d = pos - sp;
        const double dist = norm(d);
        if (dist < spec.epsilon)
        {
          pos = sp + (dist > 0.0 ? d * (spec.epsilon / dist) : Vec3{spec.epsilon, 0.0, 0.0});
        }
      }
      const auto u = to_frame(spec, pos);
      const double vol = ax[0].cell_weight[static_cast<std::size_t>(c[0])] *
                         ax[1].cell_weight[static_cast<std::size_t>(c[1])] *
                         ax[2].cell_weight[static_cast<std::size_t>(c[2])];
      const Vec3 v = eval(u[0], u[1], u[2], pos);
      if (!v.finite())
      {
        fail_cell(c, pos);
      }
      total.add(v * vol);
    }
  }
  return total.value();
}

double min_length_cell(const QuadratureSpec &s)
{
  double m = std::numeric_limits<double>::infinity();
  const auto jac = frame_jacobians(Frame::cartesian);
  for (int a = 0; a < 3; ++a)
  {
    if (is_angular(s.frame, a))
    {
      continue;
    }
    const AxisNodes n = build_axis(s.axes[a], jac[a]);
    for (std::size_t c = 0; c < n.cell_lo.size(); ++c)
    {
      m = std::min(m, n.cell_hi[c] - n.cell_lo[c]);
    }
  }
  return m;
}

} // namespace

void QuadratureSpec::validate() const
{
  auto bad = [](const std::string &msg) { throw std::invalid_argument("QuadratureSpec: " + msg); };
  if (!origin.finite() || !std::isfinite(azimuth_offset))
  {
    bad("origin and azimuth_offset must be finite");
  }
  static const char *names[3] = {"axis 0", "axis 1", "axis 2"};
  for (int a = 0; a < 3; ++a)
  {
    const AxisSpec &ax = axes[a];
    const std::string n = names[a];
    if (ax.cells < 4)
    {
      bad(n + " needs at least 4 cells");
    }
    if (!std::isfinite(ax.lo))
    {
      bad(n + " lower bound must be finite");
    }
    if (ax.mapping != Mapping::semi_infinite && !(std::isfinite(ax.hi) && ax.hi > ax.lo))
    {
      bad(n + " needs finite bounds with hi > lo");
    }
    if (ax.mapping != Mapping::uniform && !(ax.map_scale > 0.0 && std::isfinite(ax.map_scale)))
    {
      bad(n + " mapping scale must be > 0");
    }
    if (ax.mapping == Mapping::sinh && !std::isfinite(ax.map_center))
    {
      bad(n + " mapping center must be finite");
    }
    if (ax.mapping == Mapping::semi_infinite && is_angular(frame, a))
    {
      bad(n + " is angular and cannot be semi-infinite");
    }
  }
  if (frame == Frame::cylindrical)
  {
    if (axes[0].lo < 0.0)
    {
      bad("cylindrical rho must be >= 0");
    }
    if (axes[1].hi - axes[1].lo > 2.0 * pi + 1e-12)
    {
      bad("cylindrical theta range exceeds a full turn");
    }
  }
  if (frame == Frame::spherical)
  {
    if (axes[0].lo < 0.0)
    {
      bad("spherical radius must be >= 0");
    }
    if (axes[1].lo < 0.0 || axes[1].hi > pi + 1e-12)
    {
      bad("spherical polar angle must lie in [0, pi]");
    }
    if (axes[2].hi - axes[2].lo > 2.0 * pi + 1e-12)
    {
      bad("spherical azimuth range exceeds a full turn");
    }
  }
  if (policy == SingularPolicy::shifted_centroid)
  {
    if (!(epsilon > 0.0))
    {
      bad("shifted_centroid needs epsilon > 0");
    }
    if (!(epsilon < min_length_cell(*this)))
    {
      bad("epsilon must be smaller than the smallest cell");
    }
  }
}

QuadratureSpec QuadratureSpec::refined() const
{
  QuadratureSpec r = *this;
  for (auto &a : r.axes)
  {
    a.cells *= 2;
    if (a.unbounded && a.mapping != Mapping::semi_infinite)
    {
      const double mid = 0.5 * (a.lo + a.hi);
      const double half = a.hi - a.lo;
      a.lo = mid - half;
      a.hi = mid + half;
      if (a.mapping == Mapping::uniform)
      {
        a.cells *= 2;
      }
    }
  }
  return r;
}

QuadratureSpec QuadratureSpec::anchored_at(const Vec3 &probe) const
{
  QuadratureSpec r = *this;
  if (!anchor_to_probe)
  {
    return r;
  }
  if (frame == Frame::cylindrical)
  {
    const Vec3 d = probe - origin;
    r.azimuth_offset = std::hypot(d.x, d.y) > 0.0 ? std::atan2(d.y, d.x) : 0.0;
  }
  else if (frame == Frame::spherical)
  {
    r.origin = probe;
  }
  return r;
}

QuadratureSpec QuadratureSpec::scaled(int factor) const
{
  if (factor < 1)
  {
    throw std::invalid_argument("scale factor must be >= 1");
  }
  QuadratureSpec r = *this;
  for (auto &a : r.axes)
  {
    a.cells *= factor;
  }
  return r;
}

std::size_t QuadratureSpec::total_cells() const
{
  std::size_t n = 1;
  for (const auto &a : axes)
  {
    n *= static_cast<std::size_t>(a.cells);
  }
  return n;
}

QuadratureSpec QuadratureSpec::box(const Vec3 &lo, const Vec3 &hi, const std::array<int, 3> &cells,
                                   Rule rule)
{
  QuadratureSpec s;
  s.frame = Frame::cartesian;
  s.axes[0] = {lo.x, hi.x, cells[0], rule};
  s.axes[1] = {lo.y, hi.y, cells[1], rule};
  s.axes[2] = {lo.z, hi.z, cells[2], rule};
  return s;
}

QuadratureSpec QuadratureSpec::cylinder(double rho_max, double z_half, const std::array<int, 3> &cells,
                                        const std::array<Rule, 3> &rules)
{
  QuadratureSpec s;
  s.frame = Frame::cylindrical;
  s.axes[0] = {0.0, rho_max, cells[0], rules[0]};
  s.axes[1] = {-pi, pi, cells[1], rules[1]};
  s.axes[2] = {-z_half, z_half, cells[2], rules[2]};
  s.axes[2].unbounded = true;
  return s;
}

QuadratureSpec QuadratureSpec::sphere(const Vec3 &origin, double radial_scale,
                                      const std::array<int, 3> &cells, Rule rule)
{
  QuadratureSpec s;
  s.frame = Frame::spherical;
  s.origin = origin;
  s.axes[0] = {0.0, 1.0, cells[0], rule, Mapping::semi_infinite, 0.0, radial_scale};
  s.axes[1] = {0.0, pi, cells[1], rule};
  s.axes[2] = {-pi, pi, cells[2], rule};
  return s;
}

std::string to_string(Rule r)
{
  switch (r)
  {
    case Rule::midpoint:
      return "midpoint";
    case Rule::gauss2:
      return "gauss2";
    case Rule::gauss3:
      return "gauss3";
    case Rule::gauss4:
      return "gauss4";
  }
  return "midpoint";
}

std::string to_string(Mapping m)
{
  switch (m)
  {
    case Mapping::uniform:
      return "uniform";
    case Mapping::sinh:
      return "sinh";
    case Mapping::semi_infinite:
      return "semi_infinite";
  }
  return "uniform";
}

std::string to_string(Frame f)
{
  switch (f)
  {
    case Frame::cartesian:
      return "cartesian";
    case Frame::cylindrical:
      return "cylindrical";
    case Frame::spherical:
      return "spherical";
  }
  return "cartesian";
}

std::string to_string(SingularPolicy p)
{
  return p == SingularPolicy::skip_cell ? "skip_cell" : "shifted_centroid";
}

Rule rule_from_string(const std::string &s)
{
  for (Rule r : {Rule::midpoint, Rule::gauss2, Rule::gauss3, Rule::gauss4})
  {
    if (to_string(r) == s)
    {
      return r;
    }
  }
  throw std::invalid_argument("unknown quadrature rule '" + s + "'");
}

Mapping mapping_from_string(const std::string &s)
{
  for (Mapping m : {Mapping::uniform, Mapping::sinh, Mapping::semi_infinite})
  {
    if (to_string(m) == s)
    {
      return m;
    }
  }
  throw std::invalid_argument("unknown axis mapping '" + s + "'");
}

Frame frame_from_string(const std::string &s)
{
  for (Frame f : {Frame::cartesian, Frame::cylindrical, Frame::spherical})
  {
    if (to_string(f) == s)
    {
      return f;
    }
  }
  throw std::invalid_argument("unknown quadrature frame '" + s + "'");
}

SingularPolicy policy_from_string(const std::string &s)
{
  if (s == "skip_cell")
  {
    return SingularPolicy::skip_cell;
  }
  if (s == "shifted_centroid")
  {
    return SingularPolicy::shifted_centroid;
  }
  throw std::invalid_argument("unknown singular policy '" + s + "'");
}

AxisRule axis_rule(const AxisSpec &axis)
{
  AxisNodes n = build_axis(axis, Jacobian::none);
  return {std::move(n.x), std::move(n.w)};
}

Vec3 integrate_vec(const VecIntegrand &f, const QuadratureSpec &spec,
                   std::span<const Vec3> singular_points)
{
  return accumulate(spec, singular_points,
                    [&f](double, double, double, const Vec3 &p) { return f(p); });
}

Vec3 integrate_cyl(const CylIntegrand &f, const QuadratureSpec &spec,
                   std::span<const Vec3> singular_points)
{
  if (spec.frame != Frame::cylindrical)
  {
    throw std::invalid_argument("integrate_cyl needs a cylindrical QuadratureSpec");
  }
  const double off = spec.azimuth_offset;
  return accumulate(spec, singular_points,
                    [&f, off](double rho, double theta, double z, const Vec3 &)
                    { return f(CylPoint(rho, theta + off, z)); });
}

std::optional<double> ConvergenceTrace::estimated_order() const
{
  const std::size_t n = entries.size();
  if (n < 3)
  {
    return std::nullopt;
  }
  const double d1 = norm(entries[n - 2].value - entries[n - 3].value);
  const double d2 = norm(entries[n - 1].value - entries[n - 2].value);
  if (!(d2 > 0.0) || !(d1 > 0.0))
  {
    return std::nullopt;
  }
  return std::log2(d1 / d2);
}

RefineResult refine_until(const std::function<Vec3(const QuadratureSpec &)> &job,
                          const QuadratureSpec &base, double tolerance, int max_level)
{
  if (!(tolerance > 0.0))
  {
    throw std::invalid_argument("refine_until tolerance must be > 0");
  }
  if (max_level < 1)
  {
    throw std::invalid_argument("refine_until needs max_level >= 1");
  }
  RefineResult res;
  QuadratureSpec spec = base;
  Vec3 prev = job(spec);
  res.trace.entries.push_back({static_cast<double>(spec.axes[0].cells), prev});
  for (int level = 1; level <= max_level; ++level)
  {
    spec = spec.refined();
    const Vec3 v = job(spec);
    res.trace.entries.push_back({static_cast<double>(spec.axes[0].cells), v});
    res.levels = level;
    res.value = v;
    if (norm(v - prev) < tolerance)
    {
      res.converged = true;
      res.message = "converged at level " + std::to_string(level);
      return res;
    }
    prev = v;
  }
  std::ostringstream os;
  os.precision(6);
  os << "not converged after " << max_level << " refinements; last change "
     << norm(res.trace.entries.back().value - res.trace.entries[res.trace.entries.size() - 2].value)
     << " >= tolerance " << tolerance;
  res.message = os.str();
  return res;
}

} // namespace gaugefield
