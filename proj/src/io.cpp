#include "gaugefield/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace gaugefield
{

using nlohmann::json;

namespace
{

std::string join(const std::string &where, const std::string &key)
{
  return where.empty() ? key : where + "." + key;
}

// Typed, strict view of a JSON object. Every key read is recorded; finish()
// rejects the rest.
class Obj
{
public:
  Obj(const json &j, std::string where) : j_(j), where_(std::move(where))
  {
    if (!j.is_object())
    {
      throw ConfigError("'" + where_ + "' must be an object");
    }
  }

  bool has(const std::string &key) const { return j_.contains(key); }

  const json &at(const std::string &key)
  {
    if (!j_.contains(key))
    {
      throw ConfigError("missing key '" + join(where_, key) + "'");
    }
    used_.insert(key);
    return j_.at(key);
  }

  std::string path(const std::string &key) const { return join(where_, key); }
  const std::string &where() const { return where_; }

  double num(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_number())
    {
      throw ConfigError("'" + path(key) + "' must be a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d))
    {
      throw ConfigError("'" + path(key) + "' must be finite");
    }
    return d;
  }
  double num(const std::string &key, double fallback) { return has(key) ? num(key) : fallback; }

  int integer(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_number_integer())
    {
      throw ConfigError("'" + path(key) + "' must be an integer");
    }
    return v.get<int>();
  }
  int integer(const std::string &key, int fallback) { return has(key) ? integer(key) : fallback; }

  bool boolean(const std::string &key, bool fallback)
  {
    if (!has(key))
    {
      return fallback;
    }
    const json &v = at(key);
    if (!v.is_boolean())
    {
      throw ConfigError("'" + path(key) + "' must be true or false");
    }
    return v.get<bool>();
  }

  std::string str(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_string())
    {
      throw ConfigError("'" + path(key) + "' must be a string");
    }
    return v.get<std::string>();
  }
  std::string str(const std::string &key, const std::string &fallback) { return has(key) ? str(key) : fallback; }

  Vec3 vec(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_array() || v.size() != 3)
    {
      throw ConfigError("'" + path(key) + "' must be an array of 3 numbers");
    }
    Vec3 out{};
    double *dst[3] = {&out.x, &out.y, &out.z};
    for (std::size_t i = 0; i < 3; ++i)
    {
      if (!v[i].is_number() || !std::isfinite(v[i].get<double>()))
      {
        throw ConfigError("'" + path(key) + "' must be an array of 3 finite numbers");
      }
      *dst[i] = v[i].get<double>();
    }
    return out;
  }
  Vec3 vec(const std::string &key, const Vec3 &fallback) { return has(key) ? vec(key) : fallback; }

  std::vector<double> nums(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_array())
    {
      throw ConfigError("'" + path(key) + "' must be an array of numbers");
    }
    std::vector<double> out;
    for (const auto &e : v)
    {
      if (!e.is_number() || !std::isfinite(e.get<double>()))
      {
        throw ConfigError("'" + path(key) + "' must be an array of finite numbers");
      }
      out.push_back(e.get<double>());
    }
    return out;
  }

  std::vector<Vec3> vecs(const std::string &key)
  {
    const json &v = at(key);
    if (!v.is_array())
    {
      throw ConfigError("'" + path(key) + "' must be an array of [x, y, z] points");
    }
    std::vector<Vec3> out;
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      json wrap = json::object();
      wrap["p"] = v[i];
      Obj o(wrap, path(key) + "[" + std::to_string(i) + "]");
      Vec3 p = o.vec("p");
      out.push_back(p);
    }
    return out;
  }

  Obj sub(const std::string &key) { return Obj(at(key), path(key)); }

  void finish() const
  {
    for (auto it = j_.begin(); it != j_.end(); ++it)
    {
      if (!used_.count(it.key()))
      {
        throw ConfigError("unknown key '" + join(where_, it.key()) + "'");
      }
    }
  }

private:
  const json &j_;
  std::string where_;
  std::set<std::string> used_;
};

// Runs a constructor, turning its std::invalid_argument into a ConfigError
// that names the key.
template <class F>
auto checked(const std::string &where, F &&make)
{
  try
  {
    return make();
  }
  catch (const std::invalid_argument &e)
  {
    throw ConfigError("invalid '" + where + "': " + e.what());
  }
}

template <class E>
E enum_value(Obj &o, const std::string &key, E fallback, E (*from)(const std::string &))
{
  if (!o.has(key))
  {
    return fallback;
  }
  const std::string s = o.str(key);
  try
  {
    return from(s);
  }
  catch (const std::invalid_argument &)
  {
    throw ConfigError("invalid value '" + s + "' for '" + o.path(key) + "'");
  }
}

SourceSpec parse_source(Obj o)
{
  const std::string kind = o.str("kind");
  SourceSpec out = SolenoidParams(0.0, 1.0);
  if (kind == "solenoid")
  {
    const double flux = o.num("flux");
    const double radius = o.num("radius");
    out = checked(o.path("radius"), [&] { return SolenoidParams(flux, radius); });
  }
  else if (kind == "time_varying_solenoid")
  {
    const double radius = o.num("radius");
    Obj law = o.sub("law");
    const std::string type = law.str("type");
    FluxLaw fl;
    if (type == "linear")
    {
      fl = LinearFlux{law.num("phi0"), law.num("rate")};
    }
    else if (type == "sinusoidal")
    {
      fl = SinusoidalFlux{law.num("phi0"), law.num("omega")};
    }
    else
    {
      throw ConfigError("invalid value '" + type + "' for '" + law.path("type") +
                        "' (expected linear or sinusoidal)");
    }
    law.finish();
    out = checked(o.path("radius"), [&] { return TimeVaryingSolenoid(radius, fl); });
  }
  else if (kind == "point_charge")
  {
    const double q = o.num("q");
    const Vec3 pos = o.vec("position", {});
    out = checked(o.path("q"), [&] { return PointCharge(q, pos); });
  }
  else if (kind == "compact")
  {
    const double a = o.num("support_radius");
    const double amp = o.num("amplitude", 1.0);
    const Vec3 c = o.vec("center", {});
    out = checked(o.path("support_radius"), [&] { return CompactTestField(a, amp, c); });
  }
  else
  {
    throw ConfigError("invalid value '" + kind + "' for '" + o.path("kind") +
                      "' (expected solenoid, time_varying_solenoid, point_charge or compact)");
  }
  o.finish();
  return out;
}

double source_radius(const SourceSpec &s)
{
  if (const auto *p = std::get_if<SolenoidParams>(&s))
  {
    return p->radius();
  }
  if (const auto *p = std::get_if<TimeVaryingSolenoid>(&s))
  {
    return p->radius();
  }
  if (const auto *p = std::get_if<CompactTestField>(&s))
  {
    return p->support_radius();
  }
  return 1.0;
}

LoopSpec parse_loop(Obj o)
{
  LoopSpec l;
  l.center = o.vec("center", {});
  l.radius = o.num("radius");
  l.segments = o.integer("segments", 720);
  l.axis = o.vec("axis", {0.0, 0.0, 1.0});
  l.turns = o.integer("turns", 1);
  l.wobble = o.num("wobble", 0.1);
  l.reversed = o.boolean("reversed", false);
  o.finish();
  checked(o.path("radius"), [&] { return l.path(); });
  return l;
}

ProbeSet parse_probes(Obj o)
{
  static const char *kinds[] = {"points", "grid", "loop", "rho_sweep"};
  ProbeSet ps;
  int found = 0;
  for (const char *k : kinds)
  {
    if (o.has(k))
    {
      ++found;
      ps.kind = k;
    }
  }
  if (found != 1)
  {
    throw ConfigError("'" + o.where() + "' needs exactly one of points, grid, loop, rho_sweep");
  }
  if (ps.kind == "points")
  {
    ps.points = o.vecs("points");
  }
  else if (ps.kind == "grid")
  {
    Obj g = o.sub("grid");
    const Vec3 origin = g.vec("origin");
    const Vec3 spacing = g.vec("spacing");
    const json &d = g.at("dims");
    if (!d.is_array() || d.size() != 3 || !d[0].is_number_integer() || !d[1].is_number_integer() ||
        !d[2].is_number_integer())
    {
      throw ConfigError("'" + g.path("dims") + "' must be an array of 3 integers");
    }
    const std::array<int, 3> dims{d[0].get<int>(), d[1].get<int>(), d[2].get<int>()};
    g.finish();
    const GridSpec grid = checked(o.path("grid"), [&] { return GridSpec(origin, {spacing.x, spacing.y, spacing.z}, dims); });
    for (int i = 0; i < dims[0]; ++i)
    {
      for (int j = 0; j < dims[1]; ++j)
      {
        for (int k = 0; k < dims[2]; ++k)
        {
          ps.points.push_back(grid.node(i, j, k));
        }
      }
    }
  }
  else if (ps.kind == "loop")
  {
    ps.loop = parse_loop(o.sub("loop"));
    ps.points = ps.loop->path().vertices();
  }
  else
  {
    Obj s = o.sub("rho_sweep");
    const double from = s.num("from");
    const double to = s.num("to");
    const int count = s.integer("count");
    const double theta = s.num("theta", 0.0);
    const double z = s.num("z", 0.0);
    s.finish();
    if (!(from > 0.0) || !(to > from) || count < 2)
    {
      throw ConfigError("invalid '" + o.path("rho_sweep") + "': need 0 < from < to and count >= 2");
    }
    for (int i = 0; i < count; ++i)
    {
      const double rho = from + (to - from) * i / (count - 1);
      ps.points.push_back(cyl_to_cart(CylPoint(rho, theta, z)));
    }
  }
  o.finish();
  return ps;
}

AxisSpec parse_axis(Obj o)
{
  AxisSpec a;
  a.mapping = enum_value(o, "mapping", Mapping::uniform, &mapping_from_string);
  a.lo = o.num("lo");
  a.hi = a.mapping == Mapping::semi_infinite ? o.num("hi", a.lo + 1.0) : o.num("hi");
  a.cells = o.integer("cells");
  a.rule = enum_value(o, "rule", Rule::midpoint, &rule_from_string);
  a.map_center = o.num("map_center", 0.0);
  a.map_scale = o.num("map_scale", 1.0);
  a.unbounded = o.boolean("unbounded", false);
  o.finish();
  return a;
}

std::array<int, 3> int3(Obj &o, const std::string &key)
{
  const json &v = o.at(key);
  if (!v.is_array() || v.size() != 3)
  {
    throw ConfigError("'" + o.path(key) + "' must be an array of 3 integers");
  }
  std::array<int, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
  {
    if (!v[i].is_number_integer())
    {
      throw ConfigError("'" + o.path(key) + "' must be an array of 3 integers");
    }
    out[i] = v[i].get<int>();
  }
  return out;
}

std::array<Rule, 3> rule3(Obj &o, const std::string &key, std::array<Rule, 3> fallback)
{
  if (!o.has(key))
  {
    return fallback;
  }
  const json &v = o.at(key);
  if (!v.is_array() || v.size() != 3)
  {
    throw ConfigError("'" + o.path(key) + "' must be an array of 3 rule names");
  }
  std::array<Rule, 3> out{};
  for (std::size_t i = 0; i < 3; ++i)
  {
    if (!v[i].is_string())
    {
      throw ConfigError("'" + o.path(key) + "' must be an array of 3 rule names");
    }
    try
    {
      out[i] = rule_from_string(v[i].get<std::string>());
    }
    catch (const std::invalid_argument &)
    {
      throw ConfigError("invalid value '" + v[i].get<std::string>() + "' for '" + o.path(key) + "'");
    }
  }
  return out;
}

std::vector<std::pair<double, double>> pairs(Obj &o, const std::string &key)
{
  const json &v = o.at(key);
  std::vector<std::pair<double, double>> out;
  if (!v.is_array())
  {
    throw ConfigError("'" + o.path(key) + "' must be an array of [rho, rho'] pairs");
  }
  for (const auto &e : v)
  {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
    {
      throw ConfigError("'" + o.path(key) + "' must be an array of [rho, rho'] pairs");
    }
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

void parse_checks(Obj &o, RunConfig &cfg)
{
  const json &all = o.at("checks");
  if (!all.is_object())
  {
    throw ConfigError("'checks' must be an object keyed by check name");
  }
  static const std::set<std::string> known{"eq13", "decay", "angular_kernel", "radial_assembly",
                                           "coulomb_residual", "minimality"};
  for (auto it = all.begin(); it != all.end(); ++it)
  {
    if (!known.count(it.key()))
    {
      throw ConfigError("unknown check '" + it.key() +
                        "' (expected eq13, decay, angular_kernel, radial_assembly, coulomb_residual or minimality)");
    }
  }
  Obj c(all, "checks");
  VerifyPlan &plan = cfg.checks;
  if (c.has("angular_kernel"))
  {
    Obj a = c.sub("angular_kernel");
    AngularKernelCheck k;
    if (a.has("points"))
    {
      k.points = pairs(a, "points");
    }
    k.n_theta = a.integer("n_theta", k.n_theta);
    k.tolerance = a.num("tolerance", k.tolerance);
    a.finish();
    plan.angular_kernel = k;
  }
  if (c.has("radial_assembly"))
  {
    Obj a = c.sub("radial_assembly");
    RadialAssemblyCheck k;
    if (a.has("radii"))
    {
      k.radii = a.nums("radii");
    }
    k.n_rho = a.integer("n_rho", k.n_rho);
    k.tolerance = a.num("tolerance", k.tolerance);
    k.continuity_tolerance = a.num("continuity_tolerance", k.continuity_tolerance);
    a.finish();
    plan.radial_assembly = k;
  }
  if (c.has("eq13"))
  {
    Obj a = c.sub("eq13");
    Eq13Check k;
    if (a.has("probes"))
    {
      k.probes = a.vecs("probes");
    }
    k.t = a.num("t", 0.0);
    if (a.has("quadrature"))
    {
      k.quadrature = quadrature_from_json(a.at("quadrature"), a.path("quadrature"));
    }
    k.h = a.num("h", 0.0);
    k.order = a.integer("order", 2);
    k.dt = a.num("dt", k.dt);
    k.options.relative_tolerance = a.num("tolerance", k.options.relative_tolerance);
    k.options.absolute_tolerance = a.num("absolute_tolerance", k.options.absolute_tolerance);
    a.finish();
    plan.eq13 = k;
  }
  if (c.has("decay"))
  {
    Obj a = c.sub("decay");
    DecayCheck k;
    if (a.has("kinds"))
    {
      const json &v = a.at("kinds");
      if (!v.is_array())
      {
        throw ConfigError("'" + a.path("kinds") + "' must be an array of names");
      }
      k.kinds.clear();
      for (const auto &e : v)
      {
        const std::string name = e.is_string() ? e.get<std::string>() : e.dump();
        try
        {
          k.kinds.push_back(decay_kind_from_string(name));
        }
        catch (const std::invalid_argument &)
        {
          throw ConfigError("invalid value '" + name + "' in '" + a.path("kinds") + "'");
        }
      }
    }
    if (a.has("radii"))
    {
      k.radii = a.nums("radii");
    }
    k.field_point = a.vec("field_point", k.field_point);
    k.k = a.num("k", k.k);
    k.support = a.num("support", k.support);
    a.finish();
    plan.decay = k;
  }
  if (c.has("coulomb_residual"))
  {
    Obj a = c.sub("coulomb_residual");
    CoulombCheck k;
    if (a.has("probes"))
    {
      k.probes = a.vecs("probes");
    }
    if (a.has("quadrature"))
    {
      k.quadrature = quadrature_from_json(a.at("quadrature"), a.path("quadrature"));
    }
    k.h = a.num("h", 0.0);
    k.tolerance = a.num("tolerance", k.tolerance);
    a.finish();
    plan.coulomb_residual = k;
  }
  if (c.has("minimality"))
  {
    Obj a = c.sub("minimality");
    MinimalityOptions k;
    k.functions = a.integer("functions", k.functions);
    if (a.has("seed"))
    {
      const json &s = a.at("seed");
      if (!s.is_number_unsigned())
      {
        throw ConfigError("'" + a.path("seed") + "' must be a non-negative integer");
      }
      k.seed = s.get<std::uint64_t>();
    }
    k.half_extent = a.num("half_extent", k.half_extent);
    k.cells = a.integer("cells", k.cells);
    k.increase_tolerance = a.num("increase_tolerance", k.increase_tolerance);
    k.cross_tolerance = a.num("cross_tolerance", k.cross_tolerance);
    a.finish();
    if (k.functions < 1 || k.cells < 2 || !(k.half_extent > 0.0))
    {
      throw ConfigError("invalid 'checks.minimality': need functions >= 1, cells >= 2, half_extent > 0");
    }
    plan.minimality = k;
  }
  c.finish();
}

std::pair<std::size_t, std::size_t> line_col(const std::string &text, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
  {
    if (text[i] == '\n')
    {
      ++line;
      col = 1;
    }
    else
    {
      ++col;
    }
  }
  return {line, col};
}

} // namespace

std::string source_kind(const SourceSpec &s)
{
  switch (s.index())
  {
    case 0:
      return "solenoid";
    case 1:
      return "time_varying_solenoid";
    case 2:
      return "point_charge";
    default:
      return "compact";
  }
}

PolylinePath LoopSpec::path() const
{
  PolylinePath p = [&]
  {
    if (turns == 0)
    {
      throw std::invalid_argument("loop turns must be nonzero");
    }
    if (turns == 1 || turns == -1)
    {
      PolylinePath c = circle_loop(center, radius, axis, segments);
      return turns == 1 ? c : c.reversed();
    }
    return multi_turn_loop(radius, turns, segments, wobble).translated(center);
  }();
  return reversed ? p.reversed() : p;
}

QuadratureSpec default_quadrature(const SourceSpec &s)
{
  if (const auto *c = std::get_if<PointCharge>(&s))
  {
    QuadratureSpec q = QuadratureSpec::sphere(c->position(), 4.0, {64, 33, 65}, Rule::gauss4);
    q.anchor_to_probe = true;
    return q;
  }
  if (const auto *f = std::get_if<CompactTestField>(&s))
  {
    const double a = f->support_radius();
    QuadratureSpec q = QuadratureSpec::cylinder(a, a, {64, 128, 64}, {Rule::midpoint, Rule::midpoint, Rule::gauss4});
    q.origin = f->center();
    q.axes[2].unbounded = false;
    q.anchor_to_probe = true;
    return q;
  }
  const double R = source_radius(s);
  QuadratureSpec q =
    QuadratureSpec::cylinder(R, 100.0 * R, {64, 256, 256}, {Rule::midpoint, Rule::midpoint, Rule::gauss4});
  q.anchor_to_probe = true;
  return q;
}

QuadratureSpec quadrature_from_json(const json &j, const std::string &where)
{
  Obj o(j, where);
  QuadratureSpec q;
  const std::string preset = o.str("preset", "");
  if (preset == "cylinder")
  {
    const double rho_max = o.num("rho_max");
    const double z_half = o.num("z_half");
    const auto cells = int3(o, "cells");
    const auto rules = rule3(o, "rules", {Rule::midpoint, Rule::midpoint, Rule::gauss4});
    q = checked(where, [&] { return QuadratureSpec::cylinder(rho_max, z_half, cells, rules); });
    q.origin = o.vec("origin", {});
  }
  else if (preset == "sphere")
  {
    const Vec3 origin = o.vec("origin", {});
    const double scale = o.num("radial_scale");
    const auto cells = int3(o, "cells");
    const Rule rule = enum_value(o, "rule", Rule::gauss4, &rule_from_string);
    q = checked(where, [&] { return QuadratureSpec::sphere(origin, scale, cells, rule); });
  }
  else if (preset == "box")
  {
    const Vec3 lo = o.vec("lo");
    const Vec3 hi = o.vec("hi");
    const auto cells = int3(o, "cells");
    const Rule rule = enum_value(o, "rule", Rule::midpoint, &rule_from_string);
    q = checked(where, [&] { return QuadratureSpec::box(lo, hi, cells, rule); });
  }
  else if (preset.empty())
  {
    q.frame = enum_value(o, "frame", Frame::cartesian, &frame_from_string);
    q.origin = o.vec("origin", {});
    q.azimuth_offset = o.num("azimuth_offset", 0.0);
    const json &axes = o.at("axes");
    if (!axes.is_array() || axes.size() != 3)
    {
      throw ConfigError("'" + o.path("axes") + "' must be an array of 3 axis objects");
    }
    for (std::size_t i = 0; i < 3; ++i)
    {
      q.axes[i] = parse_axis(Obj(axes[i], o.path("axes") + "[" + std::to_string(i) + "]"));
    }
  }
  else
  {
    throw ConfigError("invalid value '" + preset + "' for '" + o.path("preset") +
                      "' (expected cylinder, sphere or box)");
  }
  q.policy = enum_value(o, "policy", SingularPolicy::skip_cell, &policy_from_string);
  q.epsilon = o.num("epsilon", 0.0);
  q.anchor_to_probe = o.boolean("anchor_to_probe", true);
  o.finish();
  checked(where, [&] { q.validate(); return 0; });
  return q;
}

json to_json(const QuadratureSpec &spec)
{
  json j = json::object();
  j["frame"] = to_string(spec.frame);
  j["origin"] = {spec.origin.x, spec.origin.y, spec.origin.z};
  j["azimuth_offset"] = spec.azimuth_offset;
  json axes = json::array();
  for (const auto &a : spec.axes)
  {
    json ax = json::object();
    ax["lo"] = a.lo;
    ax["hi"] = a.hi;
    ax["cells"] = a.cells;
    ax["rule"] = to_string(a.rule);
    ax["mapping"] = to_string(a.mapping);
    ax["map_center"] = a.map_center;
    ax["map_scale"] = a.map_scale;
    ax["unbounded"] = a.unbounded;
    axes.push_back(ax);
  }
  j["axes"] = axes;
  j["policy"] = to_string(spec.policy);
  j["epsilon"] = spec.epsilon;
  j["anchor_to_probe"] = spec.anchor_to_probe;
  return j;
}

RunConfig parse_config(const std::string &text)
{
  json doc;
  try
  {
    doc = json::parse(text);
  }
  catch (const json::parse_error &e)
  {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError("config parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  Obj o(doc, "");
  RunConfig cfg;
  cfg.echo = doc;
  if (o.has("version"))
  {
    if (o.integer("version") != 1)
    {
      throw ConfigError("unsupported config 'version' (expected 1)");
    }
  }
  if (o.has("source"))
  {
    cfg.source = parse_source(o.sub("source"));
  }
  cfg.quantity = o.str("quantity", "A");
  if (cfg.quantity != "A" && cfg.quantity != "V")
  {
    throw ConfigError("invalid value '" + cfg.quantity + "' for 'quantity' (expected A or V)");
  }
  cfg.time = o.num("time", 0.0);
  cfg.q = o.num("q", 1.0);
  cfg.potential = o.str("potential", "analytic");
  if (cfg.potential != "analytic" && cfg.potential != "numeric")
  {
    throw ConfigError("invalid value '" + cfg.potential + "' for 'potential' (expected analytic or numeric)");
  }
  if (o.has("quadrature"))
  {
    cfg.quadrature = quadrature_from_json(o.at("quadrature"), "quadrature");
  }
  if (o.has("probes"))
  {
    cfg.probes = parse_probes(o.sub("probes"));
  }
  if (o.has("output"))
  {
    Obj out = o.sub("output");
    cfg.output.path = out.str("path", "");
    cfg.output.format = out.str("format", "");
    out.finish();
  }
  if (o.has("checks"))
  {
    parse_checks(o, cfg);
  }
  o.finish();
  return cfg;
}

RunConfig load_config(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string format_double(double v)
{
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream &os, const FieldTable &table)
{
  std::string text = units_header;
  text += '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i)
  {
    text += (i ? "," : "") + table.columns[i];
  }
  text += '\n';
  for (const auto &row : table.rows)
  {
    if (row.size() != table.columns.size())
    {
      throw std::invalid_argument("field table row has " + std::to_string(row.size()) + " values, expected " +
                                  std::to_string(table.columns.size()));
    }
    for (std::size_t i = 0; i < row.size(); ++i)
    {
      if (!std::isfinite(row[i]))
      {
        throw std::domain_error("non-finite value in column '" + table.columns[i] + "'");
      }
      text += (i ? "," : "") + format_double(row[i]);
    }
    text += '\n';
  }
  os << text;
}

FieldTable read_csv(std::istream &is)
{
  FieldTable t;
  std::string line;
  if (!std::getline(is, line) || line != units_header)
  {
    throw std::invalid_argument("field table: missing units header");
  }
  if (!std::getline(is, line) || line.empty())
  {
    throw std::invalid_argument("field table: missing column names");
  }
  {
    std::stringstream ss(line);
    std::string name;
    while (std::getline(ss, name, ','))
    {
      t.columns.push_back(name);
    }
  }
  std::size_t lineno = 2;
  while (std::getline(is, line))
  {
    ++lineno;
    if (line.empty())
    {
      continue;
    }
    std::vector<double> row;
    std::size_t start = 0;
    while (start <= line.size())
    {
      const std::size_t end = std::min(line.find(',', start), line.size());
      double v = 0.0;
      const auto res = std::from_chars(line.data() + start, line.data() + end, v);
      if (res.ec != std::errc() || res.ptr != line.data() + end)
      {
        throw std::invalid_argument("field table: bad number on line " + std::to_string(lineno));
      }
      row.push_back(v);
      start = end + 1;
    }
    if (row.size() != t.columns.size())
    {
      throw std::invalid_argument("field table: wrong column count on line " + std::to_string(lineno));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

json report_to_json(const VerificationReport &report, const json &config_echo)
{
  json j = json::object();
  j["version"] = report_version;
  json checks = json::array();
  for (const auto &c : report.checks)
  {
    json e = json::object();
    e["name"] = c.name;
    e["value"] = c.value;
    e["tolerance"] = c.tolerance;
    e["pass"] = c.pass;
    if (!c.note.empty())
    {
      e["note"] = c.note;
    }
    checks.push_back(e);
  }
  j["checks"] = checks;
  json traces = json::array();
  for (const auto &t : report.traces)
  {
    json pts = json::array();
    for (const auto &[x, y] : t.points)
    {
      pts.push_back({x, y});
    }
    traces.push_back({{"name", t.name}, {"points", pts}});
  }
  j["traces"] = traces;
  json meta = json::object();
  for (const auto &[k, v] : report.metadata)
  {
    meta[k] = v;
  }
  j["metadata"] = meta;
  j["config_echo"] = config_echo;
  return j;
}

VerificationReport report_from_json(const json &j)
{
  if (!j.is_object() || !j.contains("version") || j.at("version") != report_version)
  {
    throw std::invalid_argument("report: missing or unsupported version");
  }
  VerificationReport r;
  for (const auto &e : j.at("checks"))
  {
    CheckResult c;
    c.name = e.at("name").get<std::string>();
    c.value = e.at("value").is_null() ? std::nan("") : e.at("value").get<double>();
    c.tolerance = e.at("tolerance").get<double>();
    c.pass = e.at("pass").get<bool>();
    if (e.contains("note"))
    {
      c.note = e.at("note").get<std::string>();
    }
    r.checks.push_back(c);
  }
  for (const auto &t : j.at("traces"))
  {
    NamedTrace nt{t.at("name").get<std::string>(), {}};
    for (const auto &p : t.at("points"))
    {
      nt.points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    r.traces.push_back(nt);
  }
  if (j.contains("metadata"))
  {
    for (auto it = j.at("metadata").begin(); it != j.at("metadata").end(); ++it)
    {
      r.metadata.emplace_back(it.key(), it.value().get<std::string>());
    }
  }
  return r;
}

std::string dump_json(const json &j) { return j.dump(2) + "\n"; }

} // namespace gaugefield
