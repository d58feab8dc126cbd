#include "cavity/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cavity {
namespace {

using json = nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw Error(ErrorKind::schema, path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorKind::schema, "missing field " + path + "." + key);
  return *it;
}

double number(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number()) throw Error(ErrorKind::schema, path + "." + key + ": expected a number");
  return v.get<double>();
}

int integer(const json& obj, const char* key, const std::string& path) {
  const json& v = field(obj, key, path);
  if (!v.is_number_integer())
    throw Error(ErrorKind::schema, path + "." + key + ": expected an integer");
  return v.get<int>();
}

int integer_or(const json& obj, const char* key, const std::string& path, int fallback) {
  return obj.contains(key) ? integer(obj, key, path) : fallback;
}

Complex complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  throw Error(ErrorKind::schema, path + ": expected a number or [re, im]");
}

Polarization polarization(const json& v, const std::string& path) {
  if (v == "TM") return Polarization::tm;
  if (v == "TE") return Polarization::te;
  throw Error(ErrorKind::schema, path + ": expected \"TM\" or \"TE\"");
}

}  // namespace

std::string to_string(Polarization p) { return p == Polarization::tm ? "TM" : "TE"; }

ProblemSpec parse_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::parse, e.what());
  }
  const std::string root = "$";
  const int schema = integer(doc, "schema", root);
  if (schema != kSchemaVersion)
    throw Error(ErrorKind::schema, "unsupported schema version " + std::to_string(schema));

  ProblemSpec spec;
  spec.polarization = polarization(field(doc, "polarization", root), root + ".polarization");
  spec.wave.kappa0 = number(doc, "kappa0", root);
  spec.wave.theta = number(doc, "theta", root);
  spec.N = integer(doc, "N", root);
  if (doc.contains("quadrature")) {
    const json& q = doc["quadrature"];
    const std::string qp = root + ".quadrature";
    spec.quad.panels = integer_or(q, "panels", qp, spec.quad.panels);
    spec.quad.points_per_panel = integer_or(q, "points_per_panel", qp, spec.quad.points_per_panel);
    spec.quad.bessel_K = integer_or(q, "bessel_K", qp, spec.quad.bessel_K);
    spec.quad.lift_threshold = integer_or(q, "lift_threshold", qp, spec.quad.lift_threshold);
  }
  const json& cavities = field(doc, "cavities", root);
  if (!cavities.is_array()) throw Error(ErrorKind::schema, "$.cavities: expected an array");
  for (std::size_t k = 0; k < cavities.size(); ++k) {
    const std::string cp = root + ".cavities[" + std::to_string(k) + "]";
    Cavity c;
    c.a = number(cavities[k], "a", cp);
    c.b = number(cavities[k], "b", cp);
    const json& layers = field(cavities[k], "layers", cp);
    if (!layers.is_array()) throw Error(ErrorKind::schema, cp + ".layers: expected an array");
    double top = 0.0;
    for (std::size_t l = 0; l < layers.size(); ++l) {
      const std::string lp = cp + ".layers[" + std::to_string(l) + "]";
      Layer layer;
      layer.y_top = top;
      layer.y_bottom = number(layers[l], "y_bottom", lp);
      layer.kappa = complex_value(field(layers[l], "kappa", lp), lp + ".kappa");
      top = layer.y_bottom;
      c.layers.push_back(layer);
    }
    spec.cavities.push_back(std::move(c));
  }
  return validate(std::move(spec));
}

ProblemSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_spec(buf.str());
  } catch (const Error& e) {
    throw Error(e.kind(), path.string() + ": " + e.message());
  }
}

std::string dump_spec(const ProblemSpec& spec) {
  json doc;
  doc["schema"] = kSchemaVersion;
  doc["polarization"] = to_string(spec.polarization);
  doc["kappa0"] = spec.wave.kappa0;
  doc["theta"] = spec.wave.theta;
  doc["N"] = spec.N;
  doc["quadrature"] = {{"panels", spec.quad.panels},
                       {"points_per_panel", spec.quad.points_per_panel},
                       {"bessel_K", spec.quad.bessel_K},
                       {"lift_threshold", spec.quad.lift_threshold}};
  json cavities = json::array();
  for (const auto& c : spec.cavities) {
    json layers = json::array();
    for (const auto& l : c.layers)
      layers.push_back({{"y_bottom", l.y_bottom}, {"kappa", {l.kappa.real(), l.kappa.imag()}}});
    cavities.push_back({{"a", c.a}, {"b", c.b}, {"layers", layers}});
  }
  doc["cavities"] = cavities;
  return doc.dump(2) + "\n";
}

void save_spec(const ProblemSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out << dump_spec(spec);
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

}  // namespace cavity
