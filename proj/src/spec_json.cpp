#include "besselorbit/spec_json.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace besselorbit {

namespace {

using nlohmann::json;

[[noreturn]] void fail(std::size_t index, const std::string& what) {
  throw SpecParseError("component " + std::to_string(index) + ": " + what);
}

double require_number(const json& obj, const char* key, std::size_t index) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    fail(index, std::string("missing or non-numeric field \"") + key + "\"");
  }
  return obj[key].get<double>();
}

DensityExpr parse_density(const json& obj, std::size_t index,
                          std::vector<std::string> vars) {
  if (!obj.contains("density") || !obj["density"].is_string()) {
    fail(index, "missing or non-string field \"density\"");
  }
  try {
    return DensityExpr::parse(obj["density"].get<std::string>(),
                              std::move(vars));
  } catch (const ParseError& e) {
    fail(index, std::string("density: ") + e.what());
  }
}

MeasureComponent parse_component(const json& obj, std::size_t index) {
  if (!obj.is_object()) {
    fail(index, "expected a JSON object");
  }
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    fail(index, "missing or non-string field \"kind\"");
  }
  const std::string kind = obj["kind"].get<std::string>();
  if (kind == "atoms") {
    if (!obj.contains("atoms") || !obj["atoms"].is_array()) {
      fail(index, "missing or non-array field \"atoms\"");
    }
    AtomicComponent comp;
    for (const auto& entry : obj["atoms"]) {
      Atom atom;
      atom.location = Complex(require_number(entry, "re", index),
                              entry.contains("im")
                                  ? require_number(entry, "im", index)
                                  : 0.0);
      atom.mass = require_number(entry, "mass", index);
      if (atom.mass < 0) fail(index, "negative atom mass");
      comp.atoms.push_back(atom);
    }
    return comp;
  }
  if (kind == "circle") {
    CircleDensityComponent comp{parse_density(obj, index, {"theta"}), {}};
    if (obj.contains("sup")) {
      comp.declared_sup = require_number(obj, "sup", index);
    }
    return comp;
  }
  if (kind == "interval") {
    IntervalDensityComponent comp;
    comp.lower = require_number(obj, "lower", index);
    comp.upper = require_number(obj, "upper", index);
    if (!(comp.lower < comp.upper)) {
      fail(index, "interval requires lower < upper");
    }
    comp.density = parse_density(obj, index, {"t"});
    comp.singular_lower = obj.value("singular_lower", false);
    comp.singular_upper = obj.value("singular_upper", false);
    return comp;
  }
  if (kind == "disk") {
    return DiskDensityComponent{parse_density(obj, index, {"r", "theta"})};
  }
  fail(index, "unknown kind \"" + kind + "\"");
}

}  // namespace

SpectralMeasureSpec parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError(std::string("invalid JSON: ") + e.what());
  }
  const json* components = &doc;
  if (doc.is_object()) {
    if (!doc.contains("components") || !doc["components"].is_array()) {
      throw SpecParseError(
          "expected a top-level array or an object with a \"components\" "
          "array");
    }
    components = &doc["components"];
  } else if (!doc.is_array()) {
    throw SpecParseError("expected a top-level array of components");
  }
  SpectralMeasureSpec spec;
  for (std::size_t i = 0; i < components->size(); ++i) {
    spec.components.push_back(parse_component((*components)[i], i));
  }
  validate(spec);
  return spec;
}

SpectralMeasureSpec parse_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw SpecParseError("cannot open spec file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec_json(buf.str());
}

std::string spec_to_json(const SpectralMeasureSpec& spec) {
  json components = json::array();
  for (const auto& comp : spec.components) {
    json obj;
    if (const auto* atoms = std::get_if<AtomicComponent>(&comp)) {
      obj["kind"] = "atoms";
      obj["atoms"] = json::array();
      for (const auto& a : atoms->atoms) {
        obj["atoms"].push_back({{"re", a.location.real()},
                                {"im", a.location.imag()},
                                {"mass", a.mass}});
      }
    } else if (const auto* c = std::get_if<CircleDensityComponent>(&comp)) {
      obj["kind"] = "circle";
      obj["density"] = c->density.source();
      if (c->declared_sup) obj["sup"] = *c->declared_sup;
    } else if (const auto* iv = std::get_if<IntervalDensityComponent>(&comp)) {
      obj["kind"] = "interval";
      obj["lower"] = iv->lower;
      obj["upper"] = iv->upper;
      obj["density"] = iv->density.source();
      if (iv->singular_lower) obj["singular_lower"] = true;
      if (iv->singular_upper) obj["singular_upper"] = true;
    } else if (const auto* d = std::get_if<DiskDensityComponent>(&comp)) {
      obj["kind"] = "disk";
      obj["density"] = d->density.source();
    }
    components.push_back(obj);
  }
  return components.dump(2);
}

}  // namespace besselorbit
