#include "redsys/presets.hpp"

#include <cmath>
#include <stdexcept>

namespace redsys {

namespace {

Scenario base_scenario(Level level, Family family, CopulaFamily copula,
                       CoherentStructure structure,
                       std::vector<Scenario::SystemSpec> systems) {
  Scenario s;
  s.level = level;
  s.family = family;
  s.copula = copula;
  s.structure = std::move(structure);
  s.systems = std::move(systems);
  return s;
}

ExamplePreset make_preset(const std::string& id) {
  const auto p34 = CoherentStructure::k_out_of_n(3, 4);
  const auto p23 = CoherentStructure::k_out_of_n(2, 3);
  const auto series_parallel =
      CoherentStructure::from_path_sets(4, {{1}, {2, 3, 4}});

  ExamplePreset e;
  e.id = id;
  if (id == "ex3.1") {
    e.scenario = base_scenario(Level::component, Family::lomax,
                               CopulaFamily::gumbel, p34,
                               {{{20.0}, {1.2, 0.5, 0.4, 0.2}},
                                {{25.0}, {1.0, 0.5, 0.3, 0.2}}});
    e.scenario.theta_range = {{20.0, 25.0}};
    e.quantity = PresetQuantity::sf_diff;
    e.claim = PresetClaim::nonnegative;
    e.theorem = TheoremId::T3_1;
  } else if (id == "ex3.2") {
    e.scenario = base_scenario(Level::component,
                               Family::generalized_exponential,
                               CopulaFamily::clayton, series_parallel,
                               {{{3.0}, {1.2, 0.5, 0.4, 0.2}},
                                {{4.0}, {1.0, 0.5, 0.3, 0.2}}});
    e.scenario.theta_range = {{3.0, 4.0}};
    e.quantity = PresetQuantity::sf_diff;
    e.claim = PresetClaim::nonpositive;
    e.theorem = TheoremId::T3_2;
  } else if (id == "ex3.3") {
    e.scenario = base_scenario(Level::component, Family::inverted_exponential,
                               CopulaFamily::gumbel, p34,
                               {{{6.0}, {0.05, 0.05, 0.04, 0.02}},
                                {{7.0}, {0.06, 0.05, 0.03, 0.02}}});
    e.scenario.theta_range = {{6.0, 7.0}};
    e.quantity = PresetQuantity::sf_ratio;
    e.claim = PresetClaim::nondecreasing_t;
    e.theorem = TheoremId::T3_3;
  } else if (id == "ex3.4") {
    e.scenario = base_scenario(Level::component, Family::inverted_exponential,
                               CopulaFamily::gumbel, p34,
                               {{{10.0}, {0.05, 0.05, 0.04, 0.02}},
                                {{7.0}, {0.06, 0.05, 0.03, 0.02}}});
    e.scenario.theta_range = {{7.0, 10.0}};
    e.quantity = PresetQuantity::sf_ratio;
    e.claim = PresetClaim::nonincreasing_t;
    e.theorem = TheoremId::T3_4;
  } else if (id == "ex3.5") {
    e.scenario = base_scenario(Level::component, Family::pareto1,
                               CopulaFamily::gumbel, p34,
                               {{{20.0}, {0.5, 0.5, 0.4, 0.2}},
                                {{25.0}, {0.6, 0.5, 0.3, 0.2}}});
    e.scenario.alpha = 1.5;
    e.scenario.theta_range = {{20.0, 25.0}};
    e.quantity = PresetQuantity::cdf_ratio;
    e.claim = PresetClaim::nondecreasing_t;
    e.theorem = TheoremId::T3_5;
  } else if (id == "ex3.6") {
    e.scenario = base_scenario(Level::component,
                               Family::generalized_exponential,
                               CopulaFamily::gumbel, p34,
                               {{{20.0}, {0.5, 0.5, 0.4, 0.2}},
                                {{15.0}, {0.6, 0.5, 0.3, 0.2}}});
    e.scenario.theta_range = {{15.0, 20.0}};
    e.quantity = PresetQuantity::cdf_ratio;
    e.claim = PresetClaim::nonincreasing_t;
    e.theorem = TheoremId::T3_6;
  } else if (id == "ex3.7") {
    e.scenario = base_scenario(Level::component, Family::inverted_exponential,
                               CopulaFamily::clayton, series_parallel,
                               {{{7.0}, {0.05, 0.05, 0.04, 0.02}},
                                {{6.0}, {0.06, 0.05, 0.03, 0.02}}});
    e.scenario.theta_range = {{6.0, 7.0}};
    e.quantity = PresetQuantity::pdf_ratio_ab;
    e.claim = PresetClaim::nonincreasing_t;
    e.theorem = TheoremId::T3_7;
  } else if (id == "ex3.8") {
    e.scenario = base_scenario(Level::component, Family::weibull,
                               CopulaFamily::clayton, p23,
                               {{{15.0}, {1.6, 0.5, 0.3, 0.2}}});
    e.quantity = PresetQuantity::rev_hazard;
    e.claim = PresetClaim::nonincreasing_t;
    e.theorem = TheoremId::T3_8;
  } else if (id == "ex4.1") {
    // matching spare (m = 1): the BP gap changes sign under dependence
    e.scenario = base_scenario(Level::component, Family::rayleigh,
                               CopulaFamily::clayton, p34,
                               {{{8.5}, {1.5, 1.5}}});
    e.quantity = PresetQuantity::bp_gap;
    e.claim = PresetClaim::both_signs;
    e.has_theorem = false;
    e.theorem = TheoremId::T3_1;  // unused
  } else if (id == "ex4.2") {
    e.scenario = base_scenario(Level::system, Family::lomax,
                               CopulaFamily::gumbel, p34,
                               {{{20.0, 21.0, 22.0, 23.0},
                                 {0.9, 0.4, 0.1, 0.08}},
                                {{20.0, 21.0, 22.0, 23.0},
                                 {0.9, 0.5, 0.05, 0.03}}});
    e.scenario.theta_range = {{20.0, 23.0}};
    e.quantity = PresetQuantity::sf_diff;
    e.claim = PresetClaim::nonnegative;
    e.theorem = TheoremId::T4_1;
  } else if (id == "ex4.3") {
    e.scenario = base_scenario(Level::system, Family::shifted_exponential,
                               CopulaFamily::clayton, p23,
                               {{{2.0, 2.0, 2.0, 2.0}, {0.5, 0.5, 0.5, 0.4}},
                                {{2.0, 2.0, 2.0, 2.0}, {0.9, 0.5, 0.3, 0.2}}});
    e.scenario.theta_range = {{2.0, 2.0}};
    e.quantity = PresetQuantity::cdf_ratio;
    e.claim = PresetClaim::nondecreasing_t;
    e.theorem = TheoremId::T4_3;
  } else if (id == "ex4.4") {
    // the source keeps alpha and the parameter vectors symbolic here; these
    // values satisfy both hypotheses on the whole grid
    e.scenario = base_scenario(Level::system, Family::pareto1,
                               CopulaFamily::clayton, p34,
                               {{{2.0, 3.0, 4.0, 5.0}, {0.5, 0.4, 0.3, 0.2}}});
    e.scenario.alpha = 1.5;
    e.scenario.theta_range = {{2.0, 5.0}};
    e.quantity = PresetQuantity::rev_hazard;
    e.claim = PresetClaim::nonincreasing_t;
    e.theorem = TheoremId::T4_4;
  } else {
    throw std::invalid_argument("unknown example id: " + id);
  }
  e.scenario.validate();
  return e;
}

}  // namespace

const std::vector<std::string>& example_ids() {
  static const std::vector<std::string> ids = {
      "ex3.1", "ex3.2", "ex3.3", "ex3.4", "ex3.5", "ex3.6",
      "ex3.7", "ex3.8", "ex4.1", "ex4.2", "ex4.3", "ex4.4"};
  return ids;
}

ExamplePreset example_preset(const std::string& id) { return make_preset(id); }

PresetCurve evaluate_preset(const ExamplePreset& preset,
                            std::size_t grid_points) {
  GridSpec gs = preset.scenario.grid;
  if (grid_points > 0) gs.points = grid_points;
  const Grid grid = Grid::make(gs);

  const AnySystem a = preset.scenario.build(0);
  std::optional<AnySystem> b;
  if (preset.scenario.systems.size() > 1) b = preset.scenario.build(1);

  // the BP comparison evaluates the same spec composed at both levels
  std::optional<AnySystem> bp;
  if (preset.quantity == PresetQuantity::bp_gap) {
    const auto& sys = preset.scenario.systems.at(0);
    bp = SystemLevelSystem(
        preset.scenario.structure, preset.scenario.copula,
        std::vector<double>(sys.b.size(), sys.thetas.at(0)),
        preset.scenario.family, sys.b, preset.scenario.alpha);
  }

  const double lo_support =
      std::max(support_start(a),
               b ? support_start(*b) : (bp ? support_start(*bp) : 0.0));

  PresetCurve out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.x[i];
    double v;
    switch (preset.quantity) {
      case PresetQuantity::sf_diff:
        v = sf(*b, t) - sf(a, t);
        break;
      case PresetQuantity::sf_ratio: {
        const double den = sf(a, t);
        if (!(den > 1e-300)) continue;
        v = sf(*b, t) / den;
        break;
      }
      case PresetQuantity::cdf_ratio: {
        const double den = cdf(a, t);
        const double num = cdf(*b, t);
        if (!(den > 1e-300) || !(num > 1e-300)) continue;
        v = num / den;
        break;
      }
      case PresetQuantity::pdf_ratio_ab: {
        if (t <= lo_support) continue;
        const double den = pdf(*b, t);
        const double num = pdf(a, t);
        if (!(den > 1e-300) || !(num > 1e-300)) continue;
        v = num / den;
        break;
      }
      case PresetQuantity::rev_hazard: {
        if (t <= lo_support) continue;
        const double c = cdf(a, t);
        if (!(c > 1e-300)) continue;
        v = rev_hazard(a, t);
        break;
      }
      case PresetQuantity::bp_gap:
        v = sf(a, t) - sf(*bp, t);
        break;
      default:
        throw std::logic_error("unreachable");
    }
    out.y.push_back(grid.y[i]);
    out.x.push_back(t);
    out.value.push_back(v);
  }
  return out;
}

}  // namespace redsys
