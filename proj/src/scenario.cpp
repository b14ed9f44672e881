#include "redsys/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace redsys {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.contains(it.key()))
      throw std::invalid_argument("unknown field \"" + it.key() + "\" in " +
                                  where);
}

CoherentStructure structure_from_json(const json& j) {
  if (!j.is_object())
    throw std::invalid_argument("structure must be an object");
  reject_unknown(j, {"k_of_n", "path_sets", "n"}, "structure");
  if (j.contains("k_of_n")) {
    const auto kn = j.at("k_of_n").get<std::vector<int>>();
    if (kn.size() != 2)
      throw std::invalid_argument("k_of_n takes exactly [k, n]");
    return CoherentStructure::k_out_of_n(kn[0], kn[1]);
  }
  if (j.contains("path_sets")) {
    auto paths = j.at("path_sets").get<std::vector<std::vector<int>>>();
    int n = 0;
    if (j.contains("n"))
      n = j.at("n").get<int>();
    else
      for (const auto& p : paths)
        for (int c : p) n = std::max(n, c);
    return CoherentStructure::from_path_sets(n, std::move(paths));
  }
  throw std::invalid_argument("structure needs k_of_n or path_sets");
}

json structure_to_json(const CoherentStructure& s) {
  return json{{"n", s.n}, {"path_sets", s.min_path_sets}};
}

Scenario::SystemSpec system_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("system must be an object");
  reject_unknown(j, {"theta", "thetas", "b"}, "systems[]");
  Scenario::SystemSpec out;
  if (j.contains("theta") == j.contains("thetas"))
    throw std::invalid_argument("system needs exactly one of theta/thetas");
  if (j.contains("theta"))
    out.thetas = {j.at("theta").get<double>()};
  else
    out.thetas = j.at("thetas").get<std::vector<double>>();
  out.b = j.at("b").get<std::vector<double>>();
  return out;
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario JSON parse error: ") +
                                e.what());
  }
  reject_unknown(j,
                 {"schema", "level", "family", "alpha", "structure", "copula",
                  "systems", "grid", "theta_range", "theorem", "order",
                  "pool"},
                 "scenario");
  Scenario s;
  s.schema = j.at("schema").get<int>();
  if (s.schema != 1)
    throw std::invalid_argument("unsupported scenario schema version");
  const std::string level = j.at("level").get<std::string>();
  if (level == "component")
    s.level = Level::component;
  else if (level == "system")
    s.level = Level::system;
  else
    throw std::invalid_argument("level must be component or system");
  s.family = family_from_token(j.at("family").get<std::string>());
  if (j.contains("alpha")) s.alpha = j.at("alpha").get<double>();
  s.structure = structure_from_json(j.at("structure"));
  s.copula = copula_from_token(j.at("copula").get<std::string>());
  for (const auto& sys : j.at("systems"))
    s.systems.push_back(system_from_json(sys));
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    reject_unknown(g, {"points", "y_min", "y_max"}, "grid");
    if (g.contains("points")) s.grid.points = g.at("points").get<std::size_t>();
    if (g.contains("y_min")) s.grid.y_min = g.at("y_min").get<double>();
    if (g.contains("y_max")) s.grid.y_max = g.at("y_max").get<double>();
  }
  if (j.contains("theta_range")) {
    const auto r = j.at("theta_range").get<std::vector<double>>();
    if (r.size() != 2)
      throw std::invalid_argument("theta_range takes exactly [lo, hi]");
    s.theta_range = {r[0], r[1]};
  }
  if (j.contains("theorem"))
    s.theorem = theorem_from_token(j.at("theorem").get<std::string>());
  if (j.contains("order"))
    s.order = order_from_token(j.at("order").get<std::string>());
  if (j.contains("pool")) {
    const json& p = j.at("pool");
    reject_unknown(p, {"candidates", "slots"}, "pool");
    PoolSpec pool;
    pool.candidates = p.at("candidates").get<std::vector<double>>();
    pool.slots = p.at("slots").get<int>();
    s.pool = pool;
  }
  s.validate();
  return s;
}

Scenario Scenario::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string Scenario::to_json_text() const {
  json j;
  j["schema"] = schema;
  j["level"] = level == Level::component ? "component" : "system";
  j["family"] = std::string(family_token(family));
  j["alpha"] = alpha;
  j["structure"] = structure_to_json(structure);
  j["copula"] = std::string(copula_token(copula));
  j["systems"] = json::array();
  for (const auto& sys : systems) {
    json js;
    if (sys.thetas.size() == 1 && level == Level::component)
      js["theta"] = sys.thetas[0];
    else
      js["thetas"] = sys.thetas;
    js["b"] = sys.b;
    j["systems"].push_back(js);
  }
  j["grid"] = {{"points", grid.points},
               {"y_min", grid.y_min},
               {"y_max", grid.y_max}};
  if (theta_range)
    j["theta_range"] = std::vector<double>{(*theta_range)[0],
                                           (*theta_range)[1]};
  if (theorem) j["theorem"] = std::string(theorem_token(*theorem));
  if (order) j["order"] = std::string(order_token(*order));
  if (pool) j["pool"] = {{"candidates", pool->candidates},
                         {"slots", pool->slots}};
  return j.dump(2);
}

void Scenario::validate() const {
  if (systems.empty() || systems.size() > 2)
    throw std::invalid_argument("scenario needs 1 or 2 systems");
  structure.validate();
  for (const auto& sys : systems) {
    if (level == Level::component && sys.thetas.size() != 1)
      throw std::invalid_argument(
          "component-level systems take a single theta");
    if (level == Level::system && sys.thetas.size() != sys.b.size())
      throw std::invalid_argument(
          "system-level systems need one theta per parameter");
    if (sys.b.empty())
      throw std::invalid_argument("parameter vector b must be nonempty");
    for (double th : sys.thetas)
      CopulaSpec{copula, th, std::max(structure.n, 2)}.validate();
    for (double b : sys.b) LifetimeModel(family, b, alpha);  // validates
  }
  if (systems.size() == 2 &&
      systems[0].b.size() != systems[1].b.size())
    throw std::invalid_argument("compared systems need equal redundancy m");
  Grid::make(grid);  // validates the grid spec
  if (pool) {
    if (pool->slots < 1 ||
        pool->candidates.size() < static_cast<std::size_t>(pool->slots))
      throw std::invalid_argument("pool needs at least `slots` candidates");
    for (double c : pool->candidates) LifetimeModel(family, c, alpha);
  }
  // distortion monotonicity invariant at each theta in play
  for (const auto& sys : systems)
    for (double th : sys.thetas) {
      const Distortion d = Distortion::make(
          structure, CopulaSpec{copula, th, std::max(structure.n, 2)});
      if (d.monotonicity_defect(2000) > 1e-9)
        throw std::invalid_argument(
            "distortion fails the monotonicity invariant");
    }
}

AnySystem Scenario::build(std::size_t index) const {
  const SystemSpec& sys = systems.at(index);
  if (level == Level::component)
    return ComponentLevelSystem(structure, copula, sys.thetas.at(0), family,
                                sys.b, alpha);
  return SystemLevelSystem(structure, copula, sys.thetas, family, sys.b,
                           alpha);
}

ComparisonSetup Scenario::comparison() const {
  ComparisonSetup c;
  c.level = level;
  c.family = family;
  c.alpha = alpha;
  c.structure = structure;
  c.copula = copula;
  c.thetas_a = systems.at(0).thetas;
  c.b_a = systems.at(0).b;
  if (systems.size() > 1) {
    c.thetas_b = systems.at(1).thetas;
    c.b_b = systems.at(1).b;
  }
  c.grid = grid;
  if (theta_range) {
    c.theta_range = *theta_range;
  } else {
    double lo = c.thetas_a.front(), hi = c.thetas_a.front();
    for (const auto* vec : {&c.thetas_a, &c.thetas_b})
      for (double th : *vec) {
        lo = std::min(lo, th);
        hi = std::max(hi, th);
      }
    c.theta_range = {lo, hi};
  }
  return c;
}

}  // namespace redsys
