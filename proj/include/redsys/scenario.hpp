#ifndef REDSYS_SCENARIO_HPP
#define REDSYS_SCENARIO_HPP

#include <optional>
#include <string>

#include "redsys/allocate.hpp"
#include "redsys/conditions.hpp"

namespace redsys {

// Declarative description of one or two systems plus optional command
// payloads (theorem to verify, order to compare, spare pool to allocate).
// Parsed from versioned JSON; unknown fields are rejected.
struct Scenario {
  int schema = 1;
  Level level = Level::component;
  Family family = Family::lomax;
  double alpha = 1.5;
  CoherentStructure structure;
  CopulaFamily copula = CopulaFamily::clayton;

  struct SystemSpec {
    std::vector<double> thetas;  // 1 entry for component level
    std::vector<double> b;
  };
  std::vector<SystemSpec> systems;  // 1 or 2

  GridSpec grid{};
  std::optional<std::array<double, 2>> theta_range;
  std::optional<TheoremId> theorem;
  std::optional<OrderKind> order;

  struct PoolSpec {
    std::vector<double> candidates;
    int slots = 1;
  };
  std::optional<PoolSpec> pool;

  static Scenario from_json_text(const std::string& text);
  static Scenario load(const std::string& path);
  std::string to_json_text() const;

  // Cross-module invariant checks (constructs every object once).
  void validate() const;

  AnySystem build(std::size_t index) const;
  ComparisonSetup comparison() const;  // needs two systems for pair theorems
};

}  // namespace redsys

#endif  // REDSYS_SCENARIO_HPP
