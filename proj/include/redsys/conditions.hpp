#ifndef REDSYS_CONDITIONS_HPP
#define REDSYS_CONDITIONS_HPP

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "redsys/orders.hpp"
#include "redsys/system.hpp"

namespace redsys {

enum class TheoremId {
  T3_1, T3_2, T3_3, T3_4, T3_5, T3_6, T3_7, T3_8,
  T4_1, T4_2, T4_3, T4_4,
};

std::string_view theorem_token(TheoremId id);
TheoremId theorem_from_token(std::string_view token);

enum class RatioKind { R1, R2, R3, R4 };

// The scalar distortion ratios the sufficient conditions quantify over:
//   R1 = (1-u) q'/q      R2 = (1-u) q'/(1-q)
//   R3 = (1-u) q''/q' -1 R4 = u q'/(1-q)
double ratio_q(RatioKind kind, const Distortion& d, double u);

struct ConditionReport {
  std::string id;
  std::string description;
  bool pass = false;
  // positive amount by which the condition is violated; pass iff <= tol
  double worst_margin = 0.0;
  std::array<double, 2> worst_point{0.0, 0.0};
};

// Shape-in-b conditions checked by sign tests of first/second differences
// along b at each t on the grid.
enum class BShape {
  F_increasing,
  F_decreasing,
  F_log_concave,
  F_log_convex,
  rh_concave,
  rh_convex,
  rh_prime_convex,
  h_increasing,
  h_convex,
  t43_increasing,  // sf(t;b) q'(sf)/(1-q(sf)) increasing in b
  t43_convex,
};

ConditionReport check_b_shape(Family family, double alpha, BShape shape,
                              std::span<const double> t_grid,
                              std::span<const double> b_grid,
                              const Distortion* distortion = nullptr,
                              double tol = 1e-9);

// Pass iff the evaluator is nonincreasing over t_grid within tolerance.
ConditionReport check_drhr(const std::function<double(double)>& rev_hazard_fn,
                           std::span<const double> t_grid, double tol = 1e-9);

// One or two systems sharing family and structure; thetas has one entry per
// side for component-level setups and m+1 entries for system-level ones.
struct ComparisonSetup {
  Level level = Level::component;
  Family family = Family::lomax;
  double alpha = 1.5;
  CoherentStructure structure;
  CopulaFamily copula = CopulaFamily::clayton;
  std::vector<double> thetas_a, thetas_b;
  std::vector<double> b_a, b_b;
  std::array<double, 2> theta_range{0.0, 0.0};
  GridSpec grid{};

  AnySystem build_a() const;
  AnySystem build_b() const;
};

struct CheckOptions {
  std::size_t u_points = 400;
  double u_lo = 0.01, u_hi = 0.99;
  std::size_t theta_points = 20;
  std::size_t b_points = 12;
  std::size_t t_points = 200;
  std::size_t verify_points = 0;  // 0: use the scenario grid size
  enum class Variant { automatic, primary, bracketed } variant =
      Variant::automatic;
  double tol = 1e-9;
};

struct ImpliedConclusion {
  bool drhr = false;
  OrderKind kind = OrderKind::st;
  Relation direction = Relation::A_below_B;
  std::string text;
};

struct TheoremCertificate {
  TheoremId id = TheoremId::T3_1;
  bool bracketed_variant = false;
  std::vector<ConditionReport> reports;
  bool all_pass = false;
  ImpliedConclusion implied;
  std::optional<OrderVerdict> verified;          // comparison theorems
  std::optional<ConditionReport> verified_drhr;  // aging theorems
  // true when the independent verification agrees with the implied claim
  bool conclusion_consistent = false;

  void write_json(std::ostream& os) const;
};

// Checks every sufficient condition of the theorem numerically on its grids,
// then verifies the implied conclusion independently via check_order /
// check_drhr. Theorems with bracketed (dual) conditions try the primary
// checklist first and fall back to the bracketed one under
// Variant::automatic.
TheoremCertificate check_theorem(TheoremId id, const ComparisonSetup& setup,
                                 const CheckOptions& opts = {});

}  // namespace redsys

#endif  // REDSYS_CONDITIONS_HPP
