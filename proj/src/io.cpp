#include "visco/io.hpp"

#include <fstream>
#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "visco/errors.hpp"
#include "visco/trajectory.hpp"

namespace visco {

namespace {

using json = nlohmann::json;

json parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("JSON configuration must be an object");
  return j;
}

void check_keys(const json& j, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) throw ParseError("unknown key '" + key + "'", 0, key);
  }
}

double number(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError("missing key '" + key + "'", 0, key);
  if (!it->is_number()) throw ParseError("key '" + key + "' must be a number", 0, key);
  return it->get<double>();
}

double number_or(const json& j, const std::string& key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

template <class Params>
Params parse_two_element(const std::string& text) {
  const json j = parse_object(text);
  check_keys(j, {"m", "k", "b", "v0", "g"});
  Params p;
  p.m = number(j, "m");
  p.k = number(j, "k");
  p.b = number(j, "b");
  p.v0 = number(j, "v0");
  p.g = number_or(j, "g", 0.0);
  return p;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KelvinVoigtParams parse_kv_params(const std::string& json_text) {
  return parse_two_element<KelvinVoigtParams>(json_text);
}

MaxwellParams parse_maxwell_params(const std::string& json_text) {
  return parse_two_element<MaxwellParams>(json_text);
}

StandardSolidParams parse_sls_params(const std::string& json_text) {
  const json j = parse_object(json_text);
  check_keys(j, {"m", "k1", "k2", "b", "kappa1", "kappa2", "beta", "v0"});
  const bool kv_form = j.contains("k1") || j.contains("k2") || j.contains("b");
  const bool mx_form = j.contains("kappa1") || j.contains("kappa2") || j.contains("beta");
  if (kv_form == mx_form) {
    throw ParseError("give either k1, k2, b or kappa1, kappa2, beta");
  }
  StandardSolidParams p;
  if (kv_form) {
    p.k1 = number(j, "k1");
    p.k2 = number(j, "k2");
    p.b = number(j, "b");
  } else {
    StandardSolidMaxwellForm f;
    f.kappa1 = number(j, "kappa1");
    f.kappa2 = number(j, "kappa2");
    f.beta_dashpot = number(j, "beta");
    p = convert_configurations(f);
  }
  p.m = number(j, "m");
  p.v0 = number(j, "v0");
  return p;
}

RelaxationKernel parse_kernel(const std::string& json_text) {
  const json j = parse_object(json_text);
  const auto type_it = j.find("type");
  if (type_it == j.end() || !type_it->is_string()) {
    throw ParseError("kernel needs a string 'type'", 0, "type");
  }
  const std::string type = type_it->get<std::string>();
  if (type == "elastic") {
    check_keys(j, {"type", "k0", "tau_R"});
    return RelaxationKernel::elastic(number(j, "k0"), number_or(j, "tau_R", 1.0));
  }
  if (type == "maxwell") {
    check_keys(j, {"type", "k", "b"});
    return RelaxationKernel::maxwell(number(j, "k"), number(j, "b"));
  }
  if (type == "kv_limit") {
    check_keys(j, {"type", "k", "b"});
    return RelaxationKernel::kv_limit(number(j, "k"), number(j, "b"));
  }
  if (type == "sls") {
    check_keys(j, {"type", "k0", "k_inf", "tau_R"});
    return RelaxationKernel::standard_solid(number(j, "k0"), number(j, "k_inf"),
                                            number(j, "tau_R"));
  }
  if (type == "table") {
    check_keys(j, {"type", "k0", "tau_R", "points"});
    const auto pts = j.find("points");
    if (pts == j.end() || !pts->is_array()) {
      throw ParseError("table kernel needs a 'points' array", 0, "points");
    }
    std::vector<std::pair<double, double>> points;
    for (const auto& pt : *pts) {
      if (!pt.is_array() || pt.size() != 2 || !pt[0].is_number() || !pt[1].is_number()) {
        throw ParseError("table points must be [tau, psi] number pairs", 0, "points");
      }
      points.emplace_back(pt[0].get<double>(), pt[1].get<double>());
    }
    return RelaxationKernel::table(number(j, "k0"), number(j, "tau_R"), std::move(points));
  }
  throw ParseError("unknown kernel type '" + type + "'", 0, "type");
}

BiphasicLayer parse_layer(const std::string& json_text) {
  const json j = parse_object(json_text);
  check_keys(j, {"mu_s", "lambda_s", "kappa", "h", "a"});
  return BiphasicLayer(number(j, "mu_s"), number(j, "lambda_s"), number(j, "kappa"),
                       number(j, "h"), number(j, "a"));
}

DisplacementHistory read_history_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("displacement history is empty", 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "t,delta0") throw ParseError("expected header 't,delta0'", 1);
  DisplacementHistory h;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw ParseError("expected two fields", row);
    }
    try {
      h.t.push_back(parse_double(line.substr(0, comma)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row, "t");
    }
    try {
      h.delta0.push_back(parse_double(line.substr(comma + 1)));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), row, "delta0");
    }
  }
  if (h.t.empty()) throw ParseError("displacement history has no rows", row);
  return h;
}

}  // namespace visco
