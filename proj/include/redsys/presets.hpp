#ifndef REDSYS_PRESETS_HPP
#define REDSYS_PRESETS_HPP

#include "redsys/scenario.hpp"

namespace redsys {

// What an example preset plots over the y-grid, and the sign/monotonicity
// property the source claims for it. Ratios are taken as B over A except for
// the density ratio, which the source plots as A over B.
enum class PresetQuantity {
  sf_diff,        // sf_B - sf_A
  sf_ratio,       // sf_B / sf_A
  cdf_ratio,      // cdf_B / cdf_A
  pdf_ratio_ab,   // pdf_A / pdf_B
  rev_hazard,     // reversed hazard of system A
  bp_gap,         // sf(component level) - sf(system level), same spec
};

enum class PresetClaim {
  nonnegative,
  nonpositive,
  nondecreasing_t,
  nonincreasing_t,
  both_signs,
};

struct ExamplePreset {
  std::string id;
  Scenario scenario;
  PresetQuantity quantity;
  PresetClaim claim;
  TheoremId theorem;     // the result the example illustrates
  bool has_theorem = true;
};

const std::vector<std::string>& example_ids();
ExamplePreset example_preset(const std::string& id);

struct PresetCurve {
  std::vector<double> y, x, value;
};

// Evaluates the preset's plotted quantity; rows where the quantity is
// undefined (outside supports, underflowed denominators) are dropped.
PresetCurve evaluate_preset(const ExamplePreset& preset,
                            std::size_t grid_points = 0);

}  // namespace redsys

#endif  // REDSYS_PRESETS_HPP
