#include "redsys/numerics.hpp"

#include <stdexcept>

namespace redsys {

MonotoneReport check_monotone(std::span<const double> v, double rel_tol) {
  MonotoneReport r;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double scale =
        std::max({std::abs(v[i]), std::abs(v[i + 1]), 1e-300});
    const double step = (v[i + 1] - v[i]) / scale;
    if (-step > r.worst_drop) {
      r.worst_drop = -step;
      r.worst_drop_index = i;
    }
    if (step > r.worst_rise) {
      r.worst_rise = step;
      r.worst_rise_index = i;
    }
  }
  r.nondecreasing = r.worst_drop <= rel_tol;
  r.nonincreasing = r.worst_rise <= rel_tol;
  return r;
}

CurvatureReport classify_curvature(std::span<const double> values,
                                   std::span<const double> grid, double tol) {
  if (values.size() != grid.size() || values.size() < 3)
    throw std::invalid_argument("curvature probe needs >= 3 grid points");
  CurvatureReport r;
  double scale = tol;
  for (double v : values) scale = std::max(scale, std::abs(v));
  for (std::size_t i = 1; i + 1 < values.size(); ++i) {
    // non-uniform second difference
    const double h1 = grid[i] - grid[i - 1];
    const double h2 = grid[i + 1] - grid[i];
    const double d2 = 2 * (values[i - 1] / (h1 * (h1 + h2)) -
                           values[i] / (h1 * h2) +
                           values[i + 1] / (h2 * (h1 + h2)));
    const double rel = d2 * h1 * h2 / scale;
    r.worst_concave_violation = std::max(r.worst_concave_violation, rel);
    r.worst_convex_violation = std::max(r.worst_convex_violation, -rel);
  }
  const bool concave_ok = r.worst_concave_violation <= tol;
  const bool convex_ok = r.worst_convex_violation <= tol;
  if (concave_ok && convex_ok)
    r.shape = Curvature::linear;
  else if (concave_ok)
    r.shape = Curvature::concave;
  else if (convex_ok)
    r.shape = Curvature::convex;
  else
    r.shape = Curvature::mixed;
  return r;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa,
             double b, double fb, double m, double fm, double whole,
             double tol, int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15 * tol)
    return left + right + delta / 15.0;
  return adapt(f, a, fa, m, fm, lm, flm, left, tol / 2, depth - 1) +
         adapt(f, m, fm, b, fb, rm, frm, right, tol / 2, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  const double tol = std::max(std::abs(whole), 1.0) * rel_tol;
  return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  if (n == 0) return {};
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  return out;
}

}  // namespace redsys
