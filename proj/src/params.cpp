#include "dpf/params.hpp"

#include <cmath>
#include <limits>

namespace dpf {

ParamReader::ParamReader(const Json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
  if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
}

std::string ParamReader::field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

bool ParamReader::has(const std::string& key) const { return obj_.contains(key) && !obj_.at(key).is_null(); }

const Json& ParamReader::lookup(const std::string& key) const { return obj_.at(key); }

double ParamReader::number(const std::string& key, std::optional<double> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required number is missing");
  }
  const Json& v = lookup(key);
  if (!v.is_number()) throw ConfigError(field(key) + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(field(key) + ": must be finite");
  return x;
}

std::int64_t ParamReader::integer(const std::string& key, std::optional<std::int64_t> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required integer is missing");
  }
  const Json& v = lookup(key);
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (x == std::floor(x) && std::fabs(x) < 9.0e15) return static_cast<std::int64_t>(x);
  }
  throw ConfigError(field(key) + ": expected an integer");
}

std::uint64_t ParamReader::seed(const std::string& key, std::optional<std::uint64_t> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required seed is missing");
  }
  const Json& v = lookup(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  throw ConfigError(field(key) + ": expected a nonnegative 64-bit integer");
}

std::string ParamReader::string(const std::string& key, std::optional<std::string> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required string is missing");
  }
  const Json& v = lookup(key);
  if (!v.is_string()) throw ConfigError(field(key) + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> ParamReader::numbers(const std::string& key, std::optional<std::vector<double>> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required list is missing");
  }
  const Json& v = lookup(key);
  if (!v.is_array()) throw ConfigError(field(key) + ": expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
      throw ConfigError(field(key) + "[" + std::to_string(i) + "]: expected a finite number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

Json ParamReader::raw(const std::string& key, std::optional<Json> fallback) {
  seen_.insert(key);
  if (!has(key)) {
    if (fallback) return *fallback;
    throw ConfigError(field(key) + ": required value is missing");
  }
  return lookup(key);
}

void ParamReader::require(bool ok, const std::string& key, const std::string& condition) const {
  if (!ok) throw ConfigError(field(key) + ": requires " + condition);
}

void ParamReader::finish() const {
  for (const auto& [key, value] : obj_.items()) {
    if (!seen_.count(key)) throw ConfigError(field(key) + ": unknown field");
  }
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Atom> atoms_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected a list of [location, prob] pairs");
  std::vector<Atom> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& a = j[i];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ConfigError(path + "[" + std::to_string(i) + "]: expected [location, prob]");
    }
    out.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return out;
}

DiffusePart diffuse_from_reader(ParamReader& r, const std::string& family) {
  if (family == "uniform") {
    const double lo = r.number("lo");
    const double hi = r.number("hi");
    r.require(lo < hi, "hi", "lo < hi");
    return {DiffuseFamily::uniform, lo, hi};
  }
  if (family == "beta") {
    const double a = r.number("a");
    const double b = r.number("b");
    r.require(a > 0.0, "a", "a > 0");
    r.require(b > 0.0, "b", "b > 0");
    return {DiffuseFamily::beta, a, b};
  }
  if (family == "arcsine") return {DiffuseFamily::beta, 0.5, 0.5};
  throw ConfigError(r.field("family") + ": unknown diffuse family '" + family + "' (uniform, beta, arcsine)");
}

template <class F>
auto wrap(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

BaseMeasure base_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "arcsine") return BaseMeasure::arcsine();
    if (s == "uniform") return BaseMeasure::uniform(0.0, 1.0);
    throw ConfigError(path + ": unknown base measure shorthand '" + s + "' (arcsine, uniform)");
  }
  ParamReader r(j, path);
  const std::string family = r.string("family");
  BaseMeasure out = wrap(path, [&]() -> BaseMeasure {
    if (family == "uniform" || family == "beta" || family == "arcsine") {
      return BaseMeasure(diffuse_from_reader(r, family), 1.0, {});
    }
    if (family == "dirac") return BaseMeasure::dirac(r.number("at"));
    if (family == "discrete") return BaseMeasure::discrete(atoms_from_json(r.raw("atoms"), r.field("atoms")));
    if (family == "mixture") {
      const Json d = r.raw("diffuse");
      ParamReader dr(d, r.field("diffuse"));
      const DiffusePart part = diffuse_from_reader(dr, dr.string("family"));
      dr.finish();
      const double w = r.number("weight");
      return BaseMeasure(part, w, atoms_from_json(r.raw("atoms", Json::array()), r.field("atoms")));
    }
    throw ConfigError(r.field("family") + ": unknown family '" + family +
                      "' (uniform, beta, arcsine, dirac, discrete, mixture)");
  });
  r.finish();
  return out;
}

namespace {

Json diffuse_to_json(const DiffusePart& d) {
  if (d.family == DiffuseFamily::uniform) return {{"family", "uniform"}, {"lo", d.a}, {"hi", d.b}};
  if (d.a == 0.5 && d.b == 0.5) return {{"family", "arcsine"}};
  return {{"family", "beta"}, {"a", d.a}, {"b", d.b}};
}

}  // namespace

Json base_to_json(const BaseMeasure& h) {
  Json atoms = Json::array();
  for (const Atom& a : h.atoms()) atoms.push_back({a.location, a.prob});
  if (!h.diffuse()) {
    if (h.atoms().size() == 1) return {{"family", "dirac"}, {"at", h.atoms()[0].location}};
    return {{"family", "discrete"}, {"atoms", atoms}};
  }
  if (h.nonatomic()) return diffuse_to_json(*h.diffuse());
  return {{"family", "mixture"}, {"diffuse", diffuse_to_json(*h.diffuse())}, {"weight", h.diffuse_weight()},
          {"atoms", atoms}};
}

Functional functional_from_json(const Json& j, const std::string& path) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "identity" || s == "id") return Functional::identity();
    throw ConfigError(path + ": unknown functional shorthand '" + s + "' (identity)");
  }
  ParamReader r(j, path);
  const std::string kind = r.string("kind");
  Functional g = wrap(path, [&]() -> Functional {
    if (kind == "identity") return Functional::identity();
    if (kind == "indicator") return Functional::indicator(r.number("lo"), r.number("hi"));
    if (kind == "affine") return Functional::affine(r.number("slope"), r.number("intercept"));
    if (kind == "constant") return Functional::constant(r.number("value"));
    if (kind == "polynomial") return Functional::polynomial(r.numbers("coeffs"));
    if (kind == "table") return Functional::table(r.numbers("breakpoints"), r.numbers("values"));
    if (kind == "combination") {
      const Json terms = r.raw("terms");
      if (!terms.is_array()) throw ConfigError(r.field("terms") + ": expected a list");
      std::vector<Functional::Term> out;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string tp = r.field("terms") + "[" + std::to_string(i) + "]";
        ParamReader tr(terms[i], tp);
        const double coef = tr.number("coef");
        out.push_back({coef, functional_from_json(tr.raw("g"), tr.field("g"))});
        tr.finish();
      }
      return Functional::combination(std::move(out));
    }
    throw ConfigError(r.field("kind") + ": unknown kind '" + kind +
                      "' (identity, indicator, affine, constant, polynomial, table, combination)");
  });
  if (r.has("range")) {
    const auto range = r.numbers("range");
    r.require(range.size() == 2 && range[0] <= range[1], "range", "[lo, hi] with lo <= hi");
    g = g.with_range(range[0], range[1]);
  }
  r.finish();
  return g;
}

Json functional_to_json(const Functional& g) {
  Json out;
  const auto& p = g.params();
  switch (g.kind()) {
    case Functional::Kind::identity:
      out = {{"kind", "identity"}};
      break;
    case Functional::Kind::indicator:
      out = {{"kind", "indicator"}, {"lo", p[0]}, {"hi", p[1]}};
      break;
    case Functional::Kind::affine:
      if (p[0] == 0.0) {
        out = {{"kind", "constant"}, {"value", p[1]}};
      } else {
        out = {{"kind", "affine"}, {"slope", p[0]}, {"intercept", p[1]}};
      }
      break;
    case Functional::Kind::polynomial:
      out = {{"kind", "polynomial"}, {"coeffs", p}};
      break;
    case Functional::Kind::table:
      out = {{"kind", "table"}, {"breakpoints", p}, {"values", g.values()}};
      break;
    case Functional::Kind::combination: {
      Json terms = Json::array();
      for (const auto& t : g.terms()) terms.push_back({{"coef", t.coef}, {"g", functional_to_json(t.g)}});
      out = {{"kind", "combination"}, {"terms", terms}};
      break;
    }
  }
  if (g.declared_range()) out["range"] = {g.declared_range()->lo, g.declared_range()->hi};
  return out;
}

}  // namespace dpf
