#include <algorithm>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "oscillab/cli.hpp"

namespace oscillab::cli {

namespace {

using nlohmann::json;

template <class T>
void take(const json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

template <class T>
void take(const json& j, const char* key, std::optional<T>& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

std::vector<double> lambdas_from(const json& j) {
  if (j.is_string()) return parse_lambdas(j.get<std::string>());
  if (j.is_number()) return {j.get<double>()};
  return j.get<std::vector<double>>();
}

}  // namespace

std::vector<double> parse_lambdas(const std::string& text) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw ConfigError("bad lambda value '" + s + "'");
    return v;
  };
  std::vector<double> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const double lo = number(text.substr(0, dots)), hi = number(text.substr(dots + 2));
    if (!(lo > 0.0) || hi < lo) throw ConfigError("bad lambda range '" + text + "'");
    for (double l = lo; l <= hi * (1 + 1e-12); l *= 2) out.push_back(l);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    out.push_back(number(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

Phase RunConfig::phase() const {
  if (kind == "monomial") return Phase::monomial(degree.value_or(ell));
  if (kind == "cosine" || kind == "cos") return Phase::cosine();
  throw ConfigError("unknown phase kind '" + kind + "'");
}

FiniteTypeSpec RunConfig::spec() const {
  FiniteTypeSpec s;
  const bool cosine = kind == "cosine" || kind == "cos";
  s.x0 = x0.value_or(cosine && ell == 3 ? std::numbers::pi / 2 : 0.0);
  s.ell = ell;
  s.epsilon = epsilon;
  s.u = u;
  return s;
}

void RunConfig::validate() const {
  if (!experiment.empty() && std::find(kExperiments.begin(), kExperiments.end(), experiment) == kExperiments.end()) {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  if (ell < 2) throw ConfigError("ell must be >= 2");
  if (degree && *degree < 1) throw ConfigError("degree must be >= 1");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (u && !(*u > 0.0)) throw ConfigError("u must be positive");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  for (double l : lambdas) {
    if (!(l >= 1.0)) throw ConfigError("lambda must be >= 1");
  }
  if (step && !(*step > 0.0)) throw ConfigError("step must be positive");
  if (q && !(*q >= 1.0)) throw ConfigError("q must be >= 1");
  if (N < 0) throw ConfigError("N must be >= 0");
  for (int c : {weights, per_weight, random, count, per_kind}) {
    if (c < 0) throw ConfigError("corpus sizes must be >= 0");
  }
  if (kmin > kmax) throw ConfigError("kmin must not exceed kmax");
  for (double L : spacings) {
    if (!(L > 0.0)) throw ConfigError("spacing L must be positive");
  }
  if (kind != "monomial" && kind != "cosine" && kind != "cos") throw ConfigError("unknown phase kind '" + kind + "'");
}

RunConfig config_from_json(const std::string& text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    take(j, "experiment", c.experiment);
    if (j.contains("phase")) {
      const auto& p = j.at("phase");
      take(p, "kind", c.kind);
      take(p, "ell", c.ell);
      take(p, "degree", c.degree);
      take(p, "x0", c.x0);
      take(p, "epsilon", c.epsilon);
      take(p, "u", c.u);
      take(p, "tol", c.tol);
    }
    take(j, "ell", c.ell);
    if (j.contains("lambda")) c.lambdas = lambdas_from(j.at("lambda"));
    if (j.contains("lambdas")) c.lambdas = lambdas_from(j.at("lambdas"));
    if (j.contains("grid")) take(j.at("grid"), "step", c.step);
    take(j, "op", c.op);
    take(j, "weight", c.weight);
    take(j, "input", c.input);
    take(j, "q", c.q);
    take(j, "N", c.N);
    if (j.contains("corpus")) {
      const auto& k = j.at("corpus");
      take(k, "weights", c.weights);
      take(k, "per_weight", c.per_weight);
      take(k, "random", c.random);
      take(k, "count", c.count);
      take(k, "per_kind", c.per_kind);
      take(k, "kinds", c.kinds);
      take(k, "seed", c.seed);
    }
    if (j.contains("dyadic")) {
      take(j.at("dyadic"), "kmin", c.kmin);
      take(j.at("dyadic"), "kmax", c.kmax);
    }
    if (j.contains("spaced")) {
      const auto& L = j.at("spaced").at("L");
      c.spacings = L.is_number() ? std::vector<double>{L.get<double>()} : L.get<std::vector<double>>();
    }
    take(j, "seed", c.seed);
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    take(j, "emit_plots", c.emit_plots);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

}  // namespace oscillab::cli
