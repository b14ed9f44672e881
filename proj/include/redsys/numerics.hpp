#ifndef REDSYS_NUMERICS_HPP
#define REDSYS_NUMERICS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace redsys {

// Relative slack used by monotonicity judgements throughout: a sequence counts
// as monotone when no step violates the direction by more than this times the
// local scale.
inline constexpr double kMonotoneRelTol = 1e-9;

// Central difference with one Richardson step, h = max(1e-6, |x|*1e-6).
template <typename F>
double central_derivative(F&& f, double x) {
  const double h = std::max(1e-6, std::abs(x) * 1e-6);
  const double d1 = (f(x + h) - f(x - h)) / (2 * h);
  const double d2 = (f(x + h / 2) - f(x - h / 2)) / h;
  return (4 * d2 - d1) / 3;
}

template <typename F>
double central_second_derivative(F&& f, double x) {
  const double h = std::max(1e-5, std::abs(x) * 1e-5);
  return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

struct MonotoneReport {
  bool nondecreasing = true;
  bool nonincreasing = true;
  double worst_drop = 0.0;    // largest relative decrease between neighbours
  double worst_rise = 0.0;    // largest relative increase between neighbours
  std::size_t worst_drop_index = 0;
  std::size_t worst_rise_index = 0;
};

// Classifies a sequence as nondecreasing / nonincreasing within the relative
// tolerance. Scale for step i is max(|v_i|, |v_{i+1}|, tiny).
MonotoneReport check_monotone(std::span<const double> v,
                              double rel_tol = kMonotoneRelTol);

// Sign pattern of second differences along a grid (curvature probe).
enum class Curvature { concave, convex, linear, mixed };

struct CurvatureReport {
  Curvature shape = Curvature::linear;
  double worst_concave_violation = 0.0;  // most positive second difference
  double worst_convex_violation = 0.0;   // most negative second difference
};

CurvatureReport classify_curvature(std::span<const double> values,
                                   std::span<const double> grid,
                                   double tol = 1e-9);

// Adaptive Simpson quadrature; plain and sufficient for the smooth survival
// curves integrated here.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-6, int max_depth = 48);

std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace redsys

#endif  // REDSYS_NUMERICS_HPP
