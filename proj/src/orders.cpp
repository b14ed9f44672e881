#include "redsys/orders.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "redsys/sampling.hpp"

namespace redsys {

namespace {

constexpr double kMajorizeTol = 1e-12;
constexpr double kDenominatorFloor = 1e-300;
constexpr double kStTol = 1e-9;

std::vector<double> ascending_partials(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) s[i] += s[i - 1];
  return s;
}

}  // namespace

bool majorize(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("majorize: length mismatch");
  const auto px = ascending_partials(x);
  const auto py = ascending_partials(y);
  const std::size_t n = px.size();
  double scale = 1.0;
  for (double v : px) scale = std::max(scale, std::abs(v));
  const double tol = kMajorizeTol * scale;
  for (std::size_t j = 0; j + 1 < n; ++j)
    if (px[j] > py[j] + tol) return false;
  return std::abs(px[n - 1] - py[n - 1]) <= tol;
}

bool weak_supermajorize(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw std::invalid_argument("weak_supermajorize: length mismatch");
  const auto px = ascending_partials(x);
  const auto py = ascending_partials(y);
  double scale = 1.0;
  for (double v : px) scale = std::max(scale, std::abs(v));
  const double tol = kMajorizeTol * scale;
  for (std::size_t j = 0; j < px.size(); ++j)
    if (px[j] > py[j] + tol) return false;
  return true;
}

std::string_view order_token(OrderKind k) {
  switch (k) {
    case OrderKind::st: return "st";
    case OrderKind::hr: return "hr";
    case OrderKind::rh: return "rh";
    case OrderKind::lr: return "lr";
  }
  throw std::invalid_argument("unknown order kind");
}

OrderKind order_from_token(std::string_view token) {
  for (OrderKind k :
       {OrderKind::st, OrderKind::hr, OrderKind::rh, OrderKind::lr})
    if (order_token(k) == token) return k;
  throw std::invalid_argument("unknown order token: " + std::string(token));
}

std::string_view relation_token(Relation r) {
  switch (r) {
    case Relation::A_below_B: return "A_below_B";
    case Relation::B_below_A: return "B_below_A";
    case Relation::crossing: return "crossing";
    case Relation::indistinguishable: return "indistinguishable";
  }
  throw std::invalid_argument("unknown relation");
}

void OrderVerdict::write_json(std::ostream& os) const {
  nlohmann::json j;
  j["kind"] = std::string(order_token(kind));
  j["relation"] = std::string(relation_token(relation));
  j["max_violation"] = max_violation;
  j["crossings"] = crossing_points;
  os << j.dump(2) << '\n';
}

namespace {

// bisection on a sign change of f over [y_lo, y_hi] to 1e-8 in y
double bisect_y(const std::function<double(double)>& f, double y_lo,
                double y_hi, double f_lo) {
  for (int it = 0; it < 200 && y_hi - y_lo > 1e-8; ++it) {
    const double mid = 0.5 * (y_lo + y_hi);
    const double fm = f(mid);
    if ((fm > 0) == (f_lo > 0)) {
      y_lo = mid;
      f_lo = fm;
    } else {
      y_hi = mid;
    }
  }
  return 0.5 * (y_lo + y_hi);
}

OrderVerdict check_st(const AnySystem& a, const AnySystem& b,
                      const Grid& grid) {
  OrderVerdict v;
  v.kind = OrderKind::st;
  const std::size_t n = grid.size();
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i)
    d[i] = sf(a, grid.x[i]) - sf(b, grid.x[i]);
  const double dmax = *std::max_element(d.begin(), d.end());
  const double dmin = *std::min_element(d.begin(), d.end());
  v.points_used = n;
  v.t_lo = grid.x.front();
  v.t_hi = grid.x.back();
  const bool a_le_b = dmax <= kStTol;
  const bool b_le_a = dmin >= -kStTol;
  if (a_le_b && b_le_a) {
    v.relation = Relation::indistinguishable;
    v.max_violation = std::max(dmax, -dmin);
  } else if (a_le_b) {
    v.relation = Relation::A_below_B;
    v.max_violation = std::max(0.0, dmax);
  } else if (b_le_a) {
    v.relation = Relation::B_below_A;
    v.max_violation = std::max(0.0, -dmin);
  } else {
    v.relation = Relation::crossing;
    v.max_violation = std::min(dmax, -dmin);
    auto diff_at_y = [&](double y) {
      const double t = -std::log(y);
      return sf(a, t) - sf(b, t);
    };
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) <= kStTol || std::abs(d[i + 1]) <= kStTol) continue;
      if ((d[i] > 0) == (d[i + 1] > 0)) continue;
      // grid.x ascends, grid.y descends
      const double y =
          bisect_y(diff_at_y, grid.y[i + 1], grid.y[i], d[i + 1]);
      v.crossing_points.push_back(-std::log(y));
    }
    std::sort(v.crossing_points.begin(), v.crossing_points.end());
  }
  return v;
}

}  // namespace

OrderVerdict check_order(OrderKind kind, const AnySystem& a, const AnySystem& b,
                         const Grid& grid) {
  if (grid.size() < 3)
    throw std::invalid_argument("order check needs >= 3 grid points");
  if (kind == OrderKind::st) return check_st(a, b, grid);

  OrderVerdict v;
  v.kind = kind;
  const double lo_support = std::max(support_start(a), support_start(b));
  auto value = [&](const AnySystem& s, double t) {
    switch (kind) {
      case OrderKind::hr: return sf(s, t);
      case OrderKind::rh: return cdf(s, t);
      default: return pdf(s, t);
    }
  };
  std::vector<double> ratio, ts, ys;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.x[i];
    if (kind == OrderKind::lr && t <= lo_support) continue;
    const double den = value(a, t);
    if (!(den > kDenominatorFloor)) continue;
    const double num = value(b, t);
    if (!(num > kDenominatorFloor)) continue;
    ratio.push_back(num / den);
    ts.push_back(t);
    ys.push_back(grid.y[i]);
  }
  if (ratio.size() < 3) {
    v.relation = Relation::indistinguishable;
    return v;
  }
  v.points_used = ratio.size();
  v.t_lo = ts.front();
  v.t_hi = ts.back();

  const MonotoneReport mono = check_monotone(ratio, kMonotoneRelTol);
  if (mono.nondecreasing && mono.nonincreasing) {
    v.relation = Relation::indistinguishable;
    v.max_violation = std::max(mono.worst_drop, mono.worst_rise);
  } else if (mono.nondecreasing) {
    v.relation = Relation::A_below_B;
    v.max_violation = mono.worst_drop;
  } else if (mono.nonincreasing) {
    v.relation = Relation::B_below_A;
    v.max_violation = mono.worst_rise;
  } else {
    v.relation = Relation::crossing;
    v.max_violation = std::min(mono.worst_drop, mono.worst_rise);
    // slope sign changes of the ratio, refined in y
    auto slope_at_y = [&](double y) {
      const double h = std::min(1e-6, y * 0.5);
      const double t1 = -std::log(y + h), t2 = -std::log(y - h);
      if (kind == OrderKind::lr && t1 <= lo_support) return 0.0;
      const double d1 = value(a, t1), d2 = value(a, t2);
      if (!(d1 > kDenominatorFloor) || !(d2 > kDenominatorFloor)) return 0.0;
      return value(b, t2) / d2 - value(b, t1) / d1;  // slope along t
    };
    const double sig = kMonotoneRelTol;
    for (std::size_t i = 0; i + 2 < ratio.size(); ++i) {
      const double scale = std::max({std::abs(ratio[i]), std::abs(ratio[i + 1]),
                                     std::abs(ratio[i + 2]), 1e-300});
      const double s0 = (ratio[i + 1] - ratio[i]) / scale;
      const double s1 = (ratio[i + 2] - ratio[i + 1]) / scale;
      if ((s0 > sig && s1 < -sig) || (s0 < -sig && s1 > sig)) {
        const double y =
            bisect_y(slope_at_y, ys[i + 2], ys[i], slope_at_y(ys[i + 2]));
        v.crossing_points.push_back(-std::log(y));
      }
    }
    std::sort(v.crossing_points.begin(), v.crossing_points.end());
  }
  return v;
}

SchurReport schur_probe(
    const std::function<double(std::span<const double>)>& fn, int dim,
    double lo, double hi, int trials, std::uint64_t seed) {
  if (trials < 100)
    throw std::invalid_argument("schur_probe needs at least 100 trials");
  if (dim < 2) throw std::invalid_argument("schur_probe needs dim >= 2");
  Rng rng(seed);
  SchurReport rep;
  for (int t = 0; t < trials; ++t) {
    std::vector<double> y(dim);
    for (auto& v : y) v = lo + (hi - lo) * rng.uniform();
    std::vector<double> x = y;
    const int i = static_cast<int>(rng.uniform() * dim) % dim;
    int k = static_cast<int>(rng.uniform() * (dim - 1)) % (dim - 1);
    if (k >= i) ++k;
    const double lam = rng.uniform();
    x[i] = lam * y[i] + (1.0 - lam) * y[k];
    x[k] = lam * y[k] + (1.0 - lam) * y[i];
    const double fx = fn(x), fy = fn(y);
    const double tol =
        1e-12 * std::max({1.0, std::abs(fx), std::abs(fy)});
    const double d = fx - fy;  // x majorized by y
    if (d > tol) {
      // violates Schur-convexity (would need fx <= fy)
      rep.worst_convex_violation = std::max(rep.worst_convex_violation, d);
      if (!rep.counterexample && rep.worst_concave_violation > 0.0)
        rep.counterexample = {x, y};
    } else if (d < -tol) {
      rep.worst_concave_violation = std::max(rep.worst_concave_violation, -d);
      if (!rep.counterexample && rep.worst_convex_violation > 0.0)
        rep.counterexample = {x, y};
    }
  }
  const bool convex_ok = rep.worst_convex_violation == 0.0;
  const bool concave_ok = rep.worst_concave_violation == 0.0;
  if (convex_ok && concave_ok)
    rep.classification = SchurClass::indeterminate;
  else if (convex_ok)
    rep.classification = SchurClass::schur_convex;
  else if (concave_ok)
    rep.classification = SchurClass::schur_concave;
  else
    rep.classification = SchurClass::neither;
  return rep;
}

}  // namespace redsys
