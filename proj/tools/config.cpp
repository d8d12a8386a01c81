#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "dunkl/error.hpp"

namespace dunkl::cli {

Section::Section(const nlohmann::json& in, std::string path) : in_(in), path_(std::move(path)) {
  if (!in_.is_object()) throw SchemaError(path_ + ": expected an object");
}

const nlohmann::json* Section::find(const std::string& key) {
  used_.insert(key);
  auto it = in_.find(key);
  return it == in_.end() ? nullptr : &*it;
}

double Section::to_number(const nlohmann::json& v, const std::string& key) const {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    try {
      const double x = std::stod(s, &pos);
      if (pos == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw SchemaError(path_ + "." + key + ": expected a number or a decimal string");
}

double Section::num(const std::string& key) {
  const auto* v = find(key);
  if (!v) throw SchemaError(path_ + "." + key + ": required");
  const double x = to_number(*v, key);
  resolved[key] = x;
  return x;
}

double Section::num(const std::string& key, double def) {
  const auto* v = find(key);
  const double x = v ? to_number(*v, key) : def;
  resolved[key] = x;
  return x;
}

std::vector<double> Section::nums(const std::string& key, const std::vector<double>& def) {
  const auto* v = find(key);
  std::vector<double> out;
  if (!v) {
    out = def;
  } else if (v->is_array()) {
    for (const auto& e : *v) out.push_back(to_number(e, key));
  } else {
    out.push_back(to_number(*v, key));
  }
  resolved[key] = out;
  return out;
}

std::string Section::str(const std::string& key, const std::string& def) {
  const auto* v = find(key);
  if (v && !v->is_string()) throw SchemaError(path_ + "." + key + ": expected a string");
  auto s = v ? v->get<std::string>() : def;
  resolved[key] = s;
  return s;
}

bool Section::flag(const std::string& key, bool def) {
  const auto* v = find(key);
  if (v && !v->is_boolean()) throw SchemaError(path_ + "." + key + ": expected true/false");
  const bool b = v ? v->get<bool>() : def;
  resolved[key] = b;
  return b;
}

long Section::integer(const std::string& key, long def) {
  const auto* v = find(key);
  const double x = v ? to_number(*v, key) : static_cast<double>(def);
  if (x != std::floor(x)) throw SchemaError(path_ + "." + key + ": expected an integer");
  resolved[key] = static_cast<long>(x);
  return static_cast<long>(x);
}

Section Section::sub(const std::string& key) {
  const auto* v = find(key);
  return Section(v ? *v : nlohmann::json::object(), path_ + "." + key);
}

void Section::finish() const {
  for (const auto& [k, v] : in_.items()) {
    if (!used_.count(k)) throw SchemaError(path_ + "." + k + ": unknown key");
  }
}

std::vector<Section> Section::list(const std::string& key) {
  const auto* v = find(key);
  std::vector<Section> out;
  if (!v) return out;
  if (!v->is_array()) throw SchemaError(path_ + "." + key + ": expected an array");
  for (std::size_t i = 0; i < v->size(); ++i) out.emplace_back((*v)[i], path_ + "." + key + "[" + std::to_string(i) + "]");
  return out;
}

void Section::put(const std::string& key, const std::vector<Section>& children) {
  json arr = json::array();
  for (const auto& c : children) arr.push_back(c.resolved);
  resolved[key] = std::move(arr);
}

DunklParams resolve_params(Section& s) {
  auto d = s.sub("dunkl");
  DunklParams p;
  if (d.has("d") || d.has("orbits")) {
    RootSystemSpec spec;
    spec.dimension = static_cast<int>(d.integer("d", 1));
    if (spec.dimension < 1) throw SchemaError("config.dunkl.d: must be a positive integer");
    auto orbits = d.list("orbits");
    for (auto& o : orbits) {
      RootOrbit orbit;
      orbit.label = o.str("label", "");
      orbit.count = static_cast<int>(o.integer("count", 1));
      orbit.kappa = o.num("kappa");
      o.finish();
      spec.orbits.push_back(orbit);
    }
    d.put("orbits", orbits);
    if (d.has("lambda")) spec.lambda_override = d.num("lambda");
    p = params_from_rootsystem(spec);
  } else {
    p = params_from_lambda(d.num("lambda", 0.5));
  }
  d.finish();
  d.resolved["lambda_k"] = p.lambda_k;
  d.resolved["d_k"] = p.d_k;
  d.resolved["synthetic"] = p.synthetic;
  s.put("dunkl", d);
  return p;
}

GridPtr resolve_grid(Section& s) {
  auto g = s.sub("grid");
  const double rmin = g.num("rmin", RadialGrid::kDefaultRmin);
  const double rmax = g.num("rmax", RadialGrid::kDefaultRmax);
  const long n = g.integer("n", static_cast<long>(RadialGrid::kDefaultSize));
  g.finish();
  if (!(rmin > 0.0) || !(rmax > rmin) || n < 16) throw SchemaError("config.grid: need 0 < rmin < rmax and n >= 16");
  s.put("grid", g);
  return RadialGrid::log_spaced(rmin, rmax, static_cast<std::size_t>(n));
}

RadialFunction resolve_profile(Section& s, const GridPtr& grid) {
  auto f = s.sub("profile");
  const auto kind = f.str("kind", "gaussian");
  auto done = [&](RadialFunction fn) {
    f.finish();
    s.put("profile", f);
    return fn;
  };
  if (kind == "gaussian") {
    const double a = f.num("a", 0.5), amp = f.num("amp", 1.0);
    return done(RadialFunction::from_tag(grid, GaussianTag{a, amp}));
  }
  if (kind == "indicator") {
    const double R = f.num("R", 1.0), amp = f.num("amp", 1.0);
    return done(RadialFunction::from_tag(grid, IndicatorTag{R, amp}));
  }
  if (kind == "log_indicator") {
    const double lo = f.num("lo", 1.0), hi = f.num("hi", std::exp(1.0));
    const double amp = f.num("amp", 1.0), power = f.num("power", 0.0);
    return done(RadialFunction::from_tag(grid, LogIndicatorTag{lo, hi, amp, power}));
  }
  if (kind == "power") {
    const double e = f.num("s", 0.0), amp = f.num("amp", 1.0);
    return done(RadialFunction::from_tag(grid, PowerTag{e, amp}));
  }
  if (kind == "csv") {
    const auto path = f.str("path", "");
    std::ifstream is(path);
    if (!is) throw SchemaError("config.profile.path: cannot open '" + path + "'");
    CsvTable t;
    try {
      t = read_csv(is);
    } catch (const DataError& e) {
      throw SchemaError(std::string("config.profile.path: ") + e.what());
    }
    return done(function_from_table(t));
  }
  throw SchemaError("config.profile.kind: unknown kind '" + kind + "'");
}

}  // namespace dunkl::cli
