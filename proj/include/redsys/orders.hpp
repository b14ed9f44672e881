#ifndef REDSYS_ORDERS_HPP
#define REDSYS_ORDERS_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "redsys/system.hpp"

namespace redsys {

// x majorizes y: ascending partial sums of x stay below those of y and the
// totals agree (tolerance 1e-12).
bool majorize(std::span<const double> x, std::span<const double> y);
// x weakly supermajorizes y: ascending partial sums of x stay below those of
// y for every j, totals included.
bool weak_supermajorize(std::span<const double> x, std::span<const double> y);

enum class OrderKind { st, hr, rh, lr };
enum class Relation { A_below_B, B_below_A, crossing, indistinguishable };

std::string_view order_token(OrderKind k);
OrderKind order_from_token(std::string_view token);
std::string_view relation_token(Relation r);

struct OrderVerdict {
  OrderKind kind = OrderKind::st;
  Relation relation = Relation::indistinguishable;
  double max_violation = 0.0;
  std::vector<double> crossing_points;  // times
  // evaluation window actually used (ratios are formed only where the
  // denominators stay above 1e-300 and, for lr, inside both supports)
  std::size_t points_used = 0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  // {kind, relation, max_violation, crossings:[x...]}
  void write_json(std::ostream& os) const;
};

// Grid-based order check between two systems. st compares the survival
// functions pointwise; hr/rh/lr judge monotonicity (relative tolerance 1e-9)
// of the sf / cdf / pdf ratio of B over A along increasing t.
OrderVerdict check_order(OrderKind kind, const AnySystem& a, const AnySystem& b,
                         const Grid& grid);

enum class SchurClass { schur_convex, schur_concave, indeterminate, neither };

struct SchurReport {
  SchurClass classification = SchurClass::indeterminate;
  double worst_convex_violation = 0.0;
  double worst_concave_violation = 0.0;
  std::optional<std::pair<std::vector<double>, std::vector<double>>>
      counterexample;  // (x, y) with x majorized by y
};

// Random pairs linked by single T-transforms probe the sign of f(x) - f(y)
// under x majorized-by y.
SchurReport schur_probe(
    const std::function<double(std::span<const double>)>& fn, int dim,
    double lo, double hi, int trials, std::uint64_t seed);

}  // namespace redsys

#endif  // REDSYS_ORDERS_HPP
