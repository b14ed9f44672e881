#include "redsys/conditions.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace redsys {

std::string_view theorem_token(TheoremId id) {
  switch (id) {
    case TheoremId::T3_1: return "T3_1";
    case TheoremId::T3_2: return "T3_2";
    case TheoremId::T3_3: return "T3_3";
    case TheoremId::T3_4: return "T3_4";
    case TheoremId::T3_5: return "T3_5";
    case TheoremId::T3_6: return "T3_6";
    case TheoremId::T3_7: return "T3_7";
    case TheoremId::T3_8: return "T3_8";
    case TheoremId::T4_1: return "T4_1";
    case TheoremId::T4_2: return "T4_2";
    case TheoremId::T4_3: return "T4_3";
    case TheoremId::T4_4: return "T4_4";
  }
  throw std::invalid_argument("unknown theorem id");
}

TheoremId theorem_from_token(std::string_view token) {
  for (TheoremId id :
       {TheoremId::T3_1, TheoremId::T3_2, TheoremId::T3_3, TheoremId::T3_4,
        TheoremId::T3_5, TheoremId::T3_6, TheoremId::T3_7, TheoremId::T3_8,
        TheoremId::T4_1, TheoremId::T4_2, TheoremId::T4_3, TheoremId::T4_4})
    if (theorem_token(id) == token) return id;
  throw std::invalid_argument("unknown theorem token: " + std::string(token));
}

double ratio_q(RatioKind kind, const Distortion& d, double u) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("ratio_q requires u in (0,1)");
  const double w = 1.0 - u;
  switch (kind) {
    case RatioKind::R1: {
      const double q = d.q2(u, w);
      if (q <= 0.0) throw std::domain_error("R1 pole: q(u) = 0");
      return w * d.q_prime2(u, w) / q;
    }
    case RatioKind::R2: {
      const double qb = d.q_bar2(u, w);
      if (qb <= 0.0) throw std::domain_error("R2 pole: q(u) = 1");
      return w * d.q_prime2(u, w) / qb;
    }
    case RatioKind::R3: {
      const double qp = d.q_prime2(u, w);
      if (qp <= 0.0) throw std::domain_error("R3 pole: q'(u) = 0");
      return w * d.q_second2(u, w) / qp - 1.0;
    }
    case RatioKind::R4: {
      const double qb = d.q_bar2(u, w);
      if (qb <= 0.0) throw std::domain_error("R4 pole: q(u) = 1");
      return u * d.q_prime2(u, w) / qb;
    }
  }
  throw std::logic_error("unreachable");
}

AnySystem ComparisonSetup::build_a() const {
  if (level == Level::component)
    return ComponentLevelSystem(structure, copula, thetas_a.at(0), family,
                                b_a, alpha);
  return SystemLevelSystem(structure, copula, thetas_a, family, b_a, alpha);
}

AnySystem ComparisonSetup::build_b() const {
  if (level == Level::component)
    return ComponentLevelSystem(structure, copula, thetas_b.at(0), family,
                                b_b, alpha);
  return SystemLevelSystem(structure, copula, thetas_b, family, b_b, alpha);
}

namespace {

constexpr double kVecTol = 1e-12;

bool family_support_depends_on_b(Family f) {
  return f == Family::pareto1 || f == Family::shifted_exponential;
}

double shape_value(Family family, double alpha, BShape shape,
                   const Distortion* d, double t, double b) {
  LifetimeModel m(family, b, alpha);
  switch (shape) {
    case BShape::F_increasing:
    case BShape::F_decreasing:
      return m.cdf(t);
    case BShape::F_log_concave:
    case BShape::F_log_convex:
      if (t <= m.support_start())
        throw std::domain_error("log F shape check: t outside support");
      return m.log_cdf(t);
    case BShape::rh_concave:
    case BShape::rh_convex:
      return m.rev_hazard(t);
    case BShape::rh_prime_convex:
      return m.rev_hazard_prime(t);
    case BShape::h_increasing:
    case BShape::h_convex:
      return m.hazard(t);
    case BShape::t43_increasing:
    case BShape::t43_convex: {
      if (!d) throw std::invalid_argument("t43 shape needs a distortion");
      if (t <= m.support_start())
        throw std::domain_error("t43 shape check: t outside support");
      const double S = m.sf(t), F = m.cdf(t);
      const double qb = d->q_bar2(S, F);
      if (qb <= 0.0) throw std::domain_error("t43 pole: q(sf) = 1");
      return S * d->q_prime2(S, F) / qb;
    }
  }
  throw std::logic_error("unreachable");
}

const char* shape_id(BShape s) {
  switch (s) {
    case BShape::F_increasing: return "F_increasing_b";
    case BShape::F_decreasing: return "F_decreasing_b";
    case BShape::F_log_concave: return "F_log_concave_b";
    case BShape::F_log_convex: return "F_log_convex_b";
    case BShape::rh_concave: return "rev_hazard_concave_b";
    case BShape::rh_convex: return "rev_hazard_convex_b";
    case BShape::rh_prime_convex: return "rev_hazard_prime_convex_b";
    case BShape::h_increasing: return "hazard_increasing_b";
    case BShape::h_convex: return "hazard_convex_b";
    case BShape::t43_increasing: return "sf_ratio_term_increasing_b";
    case BShape::t43_convex: return "sf_ratio_term_convex_b";
  }
  return "?";
}

}  // namespace

ConditionReport check_b_shape(Family family, double alpha, BShape shape,
                              std::span<const double> t_grid,
                              std::span<const double> b_grid,
                              const Distortion* distortion, double tol) {
  if (b_grid.size() < 3 || t_grid.empty())
    throw std::invalid_argument("b-shape check needs >= 3 b points");
  ConditionReport rep;
  rep.id = shape_id(shape);
  rep.description = "parameter-shape condition along b";
  rep.pass = true;
  std::vector<double> vals(b_grid.size());
  for (double t : t_grid) {
    for (std::size_t i = 0; i < b_grid.size(); ++i)
      vals[i] = shape_value(family, alpha, shape, distortion, t, b_grid[i]);
    double margin = 0.0;
    double where = b_grid[0];
    switch (shape) {
      case BShape::F_increasing:
      case BShape::h_increasing:
      case BShape::t43_increasing: {
        const auto m = check_monotone(vals, tol);
        margin = m.worst_drop;
        where = b_grid[m.worst_drop_index];
        break;
      }
      case BShape::F_decreasing: {
        const auto m = check_monotone(vals, tol);
        margin = m.worst_rise;
        where = b_grid[m.worst_rise_index];
        break;
      }
      case BShape::F_log_concave:
      case BShape::rh_concave: {
        const auto c = classify_curvature(vals, b_grid, tol);
        margin = c.worst_concave_violation;
        break;
      }
      case BShape::F_log_convex:
      case BShape::rh_convex:
      case BShape::rh_prime_convex:
      case BShape::h_convex:
      case BShape::t43_convex: {
        const auto c = classify_curvature(vals, b_grid, tol);
        margin = c.worst_convex_violation;
        break;
      }
    }
    if (margin > rep.worst_margin) {
      rep.worst_margin = margin;
      rep.worst_point = {t, where};
    }
  }
  rep.pass = rep.worst_margin <= tol;
  return rep;
}

ConditionReport check_drhr(const std::function<double(double)>& rev_hazard_fn,
                           std::span<const double> t_grid, double tol) {
  if (t_grid.size() < 3)
    throw std::invalid_argument("DRHR check needs >= 3 grid points");
  ConditionReport rep;
  rep.id = "rev_hazard_nonincreasing_t";
  rep.description = "reversed hazard rate nonincreasing in t";
  std::vector<double> vals(t_grid.size());
  for (std::size_t i = 0; i < t_grid.size(); ++i)
    vals[i] = rev_hazard_fn(t_grid[i]);
  const auto m = check_monotone(vals, tol);
  rep.worst_margin = m.worst_rise;
  rep.worst_point = {t_grid[std::min(m.worst_rise_index, t_grid.size() - 1)],
                     0.0};
  rep.pass = m.nonincreasing;
  return rep;
}

namespace {

// Everything check_theorem needs, with the grids built once.
struct Ctx {
  const ComparisonSetup& s;
  const CheckOptions& o;
  std::vector<double> u_grid, theta_grid, b_grid, t_shape, t_all;

  Ctx(const ComparisonSetup& setup, const CheckOptions& opts)
      : s(setup), o(opts) {
    u_grid = linspace(o.u_lo, o.u_hi, o.u_points);
    std::array<double, 2> range = s.theta_range;
    if (range[0] == 0.0 && range[1] == 0.0) {
      range = {s.thetas_a.front(), s.thetas_a.front()};
      for (const auto* vec : {&s.thetas_a, &s.thetas_b})
        for (double th : *vec) {
          range[0] = std::min(range[0], th);
          range[1] = std::max(range[1], th);
        }
    }
    if (std::abs(range[1] - range[0]) < 1e-15)
      theta_grid = {range[0]};
    else
      theta_grid = linspace(range[0], range[1], o.theta_points);
    double b_lo = s.b_a.front(), b_hi = s.b_a.front();
    for (const auto* vec : {&s.b_a, &s.b_b})
      for (double b : *vec) {
        b_lo = std::min(b_lo, b);
        b_hi = std::max(b_hi, b);
      }
    b_grid = linspace(0.85 * b_lo, 1.15 * b_hi, o.b_points);

    const Grid full = Grid::make(s.grid);
    const double x_hi = full.x.back();
    double x_lo = full.x.front();
    t_all = linspace(x_lo, x_hi, o.t_points);
    if (family_support_depends_on_b(s.family))
      x_lo = std::max(x_lo, b_grid.back() * 1.05);
    if (!(x_lo < x_hi))
      throw std::domain_error(
          "b-shape t-grid empty: supports exceed the evaluation window");
    t_shape = linspace(x_lo * (1.0 + 1e-9) + 1e-12, x_hi, o.t_points);
  }

  Distortion dist(double theta) const {
    return Distortion::make(s.structure,
                            CopulaSpec{s.copula, theta, s.structure.n});
  }

  ConditionReport theta_direction(bool need_le) const {
    ConditionReport r;
    r.id = need_le ? "theta1_le_theta2" : "theta1_ge_theta2";
    r.description = "dependence parameter direction";
    const double t1 = s.thetas_a.at(0), t2 = s.thetas_b.at(0);
    r.worst_point = {t1, t2};
    const double gap = need_le ? t1 - t2 : t2 - t1;
    r.worst_margin = std::max(0.0, gap);
    r.pass = gap <= kVecTol;
    return r;
  }

  ConditionReport thetas_shared() const {
    ConditionReport r;
    r.id = "theta_vectors_equal";
    r.description = "both systems use the same dependence vector";
    r.pass = s.thetas_a.size() == s.thetas_b.size();
    if (r.pass)
      for (std::size_t i = 0; i < s.thetas_a.size(); ++i)
        if (std::abs(s.thetas_a[i] - s.thetas_b[i]) > kVecTol) {
          r.pass = false;
          r.worst_margin = std::abs(s.thetas_a[i] - s.thetas_b[i]);
          r.worst_point = {static_cast<double>(i), 0.0};
        }
    return r;
  }

  ConditionReport majorization(bool weak) const {
    ConditionReport r;
    r.id = weak ? "b_weakly_supermajorized_by_bstar" : "b_majorized_by_bstar";
    r.description = weak ? "b precedes b* in weak supermajorization"
                         : "b precedes b* in majorization";
    r.pass = weak ? weak_supermajorize(s.b_b, s.b_a) : majorize(s.b_b, s.b_a);
    return r;
  }

  ConditionReport sorted_vec(std::span<const double> v, bool descending,
                             const char* id) const {
    ConditionReport r;
    r.id = id;
    r.description = descending ? "vector lies in D+ (nonincreasing entries)"
                               : "vector lies in E+ (nondecreasing entries)";
    r.pass = true;
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      const double gap = descending ? v[i + 1] - v[i] : v[i] - v[i + 1];
      if (gap > kVecTol) {
        r.pass = false;
        r.worst_margin = std::max(r.worst_margin, gap);
        r.worst_point = {static_cast<double>(i), 0.0};
      }
    }
    return r;
  }

  ConditionReport q_monotone_theta(bool increasing) const {
    ConditionReport r;
    r.id = increasing ? "q_increasing_theta" : "q_decreasing_theta";
    r.description = "distortion monotone in theta pointwise in u";
    r.pass = true;
    if (theta_grid.size() < 2) return r;
    std::vector<Distortion> ds;
    for (double th : theta_grid) ds.push_back(dist(th));
    std::vector<double> vals(theta_grid.size());
    for (double u : u_grid) {
      for (std::size_t k = 0; k < ds.size(); ++k) vals[k] = ds[k].q(u);
      const auto m = check_monotone(vals, o.tol);
      const double margin = increasing ? m.worst_drop : m.worst_rise;
      if (margin > r.worst_margin) {
        r.worst_margin = margin;
        r.worst_point = {
            u, theta_grid[increasing ? m.worst_drop_index : m.worst_rise_index]};
      }
    }
    r.pass = r.worst_margin <= o.tol;
    return r;
  }

  ConditionReport ratio_monotone_u(RatioKind kind, bool increasing,
                                   std::span<const double> thetas) const {
    ConditionReport r;
    r.id = std::string(ratio_name(kind)) +
           (increasing ? "_increasing_u" : "_decreasing_u");
    r.description = "distortion ratio monotone in u for each theta";
    std::vector<double> vals(u_grid.size());
    for (double th : thetas) {
      const Distortion d = dist(th);
      for (std::size_t i = 0; i < u_grid.size(); ++i)
        vals[i] = ratio_q(kind, d, u_grid[i]);
      const auto m = check_monotone(vals, o.tol);
      const double margin = increasing ? m.worst_drop : m.worst_rise;
      if (margin > r.worst_margin) {
        r.worst_margin = margin;
        r.worst_point = {
            u_grid[increasing ? m.worst_drop_index : m.worst_rise_index], th};
      }
    }
    r.pass = r.worst_margin <= o.tol;
    return r;
  }

  ConditionReport ratio_monotone_theta(RatioKind kind, bool increasing) const {
    ConditionReport r;
    r.id = std::string(ratio_name(kind)) +
           (increasing ? "_increasing_theta" : "_decreasing_theta");
    r.description = "distortion ratio monotone in theta pointwise in u";
    r.pass = true;
    if (theta_grid.size() < 2) return r;
    std::vector<Distortion> ds;
    for (double th : theta_grid) ds.push_back(dist(th));
    std::vector<double> vals(theta_grid.size());
    for (double u : u_grid) {
      for (std::size_t k = 0; k < ds.size(); ++k)
        vals[k] = ratio_q(kind, ds[k], u);
      const auto m = check_monotone(vals, o.tol);
      const double margin = increasing ? m.worst_drop : m.worst_rise;
      if (margin > r.worst_margin) {
        r.worst_margin = margin;
        r.worst_point = {
            u, theta_grid[increasing ? m.worst_drop_index : m.worst_rise_index]};
      }
    }
    r.pass = r.worst_margin <= o.tol;
    return r;
  }

  ConditionReport ratio_nonpositive(RatioKind kind,
                                    std::span<const double> thetas) const {
    ConditionReport r;
    r.id = std::string(ratio_name(kind)) + "_nonpositive";
    r.description = "distortion ratio bounded above by 0";
    for (double th : thetas) {
      const Distortion d = dist(th);
      for (double u : u_grid) {
        const double v = ratio_q(kind, d, u);
        if (v > r.worst_margin) {
          r.worst_margin = v;
          r.worst_point = {u, th};
        }
      }
    }
    r.pass = r.worst_margin <= o.tol;
    return r;
  }

  ConditionReport b_shape(BShape shape, const Distortion* d = nullptr) const {
    return check_b_shape(s.family, s.alpha, shape, t_shape, b_grid, d, o.tol);
  }

  ConditionReport sum_rh_decreasing(std::span<const double> b) const {
    ConditionReport r;
    r.id = "sum_rev_hazard_decreasing_t";
    r.description = "sum of member reversed hazards nonincreasing in t";
    std::vector<LifetimeModel> ms;
    for (double bj : b) ms.emplace_back(s.family, bj, s.alpha);
    double lo = t_all.front();
    for (const auto& m : ms)
      lo = std::max(lo, m.support_start() * (1.0 + 1e-9) + 1e-12);
    const auto ts = linspace(lo, t_all.back(), o.t_points);
    std::vector<double> vals(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      double acc = 0.0;
      for (const auto& m : ms) acc += m.rev_hazard(ts[i]);
      vals[i] = acc;
    }
    const auto m = check_monotone(vals, o.tol);
    r.worst_margin = m.worst_rise;
    r.worst_point = {ts[m.worst_rise_index], 0.0};
    r.pass = m.nonincreasing;
    return r;
  }

  ConditionReport marginal_drhr() const {
    ConditionReport r;
    r.id = "F_drhr_each_b";
    r.description = "each member lifetime is DRHR";
    r.pass = true;
    for (const auto* vec : {&s.b_a, &s.b_b})
      for (double bj : *vec) {
        LifetimeModel m(s.family, bj, s.alpha);
        const double lo = std::max(t_all.front(),
                                   m.support_start() * (1.0 + 1e-9) + 1e-12);
        const auto ts = linspace(lo, t_all.back(), o.t_points);
        std::vector<double> vals(ts.size());
        for (std::size_t i = 0; i < ts.size(); ++i)
          vals[i] = m.rev_hazard(ts[i]);
        const auto mono = check_monotone(vals, o.tol);
        if (mono.worst_rise > r.worst_margin) {
          r.worst_margin = mono.worst_rise;
          r.worst_point = {ts[mono.worst_rise_index], bj};
        }
      }
    r.pass = r.worst_margin <= o.tol;
    return r;
  }

  static std::string_view ratio_name(RatioKind k) {
    switch (k) {
      case RatioKind::R1: return "R1";
      case RatioKind::R2: return "R2";
      case RatioKind::R3: return "R3";
      case RatioKind::R4: return "R4";
    }
    return "?";
  }
};

struct Checklist {
  std::vector<ConditionReport> reports;
  ImpliedConclusion implied;
};

ImpliedConclusion order_conclusion(Level level, OrderKind kind,
                                   Relation direction) {
  ImpliedConclusion c;
  c.kind = kind;
  c.direction = direction;
  const char* sym = level == Level::component ? "X_c" : "X_s";
  const bool below = direction == Relation::A_below_B;
  c.text = std::string(sym) + (below ? " <=_" : " >=_") +
           std::string(order_token(kind)) + " " + sym + "*";
  return c;
}

ImpliedConclusion drhr_conclusion(Level level) {
  ImpliedConclusion c;
  c.drhr = true;
  c.text = std::string(level == Level::component ? "X_c" : "X_s") +
           " in DRHR aging class";
  return c;
}

Checklist build_checklist(TheoremId id, const Ctx& ctx, bool bracketed) {
  const ComparisonSetup& s = ctx.s;
  Checklist cl;
  auto add = [&](ConditionReport r) { cl.reports.push_back(std::move(r)); };
  const std::span<const double> th_a1(s.thetas_a.data(),
                                      std::min<std::size_t>(
                                          s.thetas_a.size(), 1));
  switch (id) {
    case TheoremId::T3_1:
      add(ctx.theta_direction(true));
      add(ctx.q_monotone_theta(true));
      add(ctx.b_shape(BShape::F_increasing));
      add(ctx.b_shape(BShape::F_log_concave));
      add(ctx.majorization(true));
      cl.implied = order_conclusion(s.level, OrderKind::st,
                                    Relation::A_below_B);
      break;
    case TheoremId::T3_2:
      add(ctx.theta_direction(true));
      add(ctx.q_monotone_theta(false));
      add(ctx.b_shape(BShape::F_decreasing));
      add(ctx.b_shape(BShape::F_log_convex));
      add(ctx.majorization(true));
      cl.implied = order_conclusion(s.level, OrderKind::st,
                                    Relation::B_below_A);
      break;
    case TheoremId::T3_3:
      add(ctx.theta_direction(true));
      add(ctx.b_shape(BShape::F_log_concave));
      add(ctx.b_shape(bracketed ? BShape::rh_convex : BShape::rh_concave));
      add(ctx.ratio_monotone_u(RatioKind::R1, bracketed, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R1, bracketed));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(
          s.level, OrderKind::hr,
          bracketed ? Relation::B_below_A : Relation::A_below_B);
      break;
    case TheoremId::T3_4:
      add(ctx.theta_direction(false));
      add(ctx.b_shape(BShape::F_log_convex));
      add(ctx.b_shape(bracketed ? BShape::rh_concave : BShape::rh_convex));
      add(ctx.ratio_monotone_u(RatioKind::R1, bracketed, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R1, bracketed));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(
          s.level, OrderKind::hr,
          bracketed ? Relation::A_below_B : Relation::B_below_A);
      break;
    case TheoremId::T3_5:
      add(ctx.theta_direction(true));
      add(ctx.b_shape(BShape::F_log_concave));
      add(ctx.b_shape(bracketed ? BShape::rh_concave : BShape::rh_convex));
      add(ctx.ratio_monotone_u(RatioKind::R2, !bracketed, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R2, !bracketed));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(
          s.level, OrderKind::rh,
          bracketed ? Relation::B_below_A : Relation::A_below_B);
      break;
    case TheoremId::T3_6:
      add(ctx.theta_direction(false));
      add(ctx.b_shape(BShape::F_log_convex));
      add(ctx.b_shape(bracketed ? BShape::rh_convex : BShape::rh_concave));
      add(ctx.ratio_monotone_u(RatioKind::R2, !bracketed, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R2, !bracketed));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(
          s.level, OrderKind::rh,
          bracketed ? Relation::A_below_B : Relation::B_below_A);
      break;
    case TheoremId::T3_7:
      add(ctx.theta_direction(bracketed));
      add(ctx.b_shape(BShape::F_log_concave));
      add(ctx.marginal_drhr());
      add(ctx.b_shape(BShape::rh_convex));
      add(ctx.b_shape(BShape::rh_prime_convex));
      add(ctx.ratio_nonpositive(RatioKind::R3, ctx.theta_grid));
      add(ctx.ratio_monotone_u(RatioKind::R3, false, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R3, !bracketed));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(s.level, OrderKind::lr,
                                    Relation::A_below_B);
      break;
    case TheoremId::T3_8:
      add(ctx.ratio_monotone_u(RatioKind::R2, true, th_a1));
      add(ctx.sum_rh_decreasing(s.b_a));
      cl.implied = drhr_conclusion(s.level);
      break;
    case TheoremId::T4_1:
      add(ctx.thetas_shared());
      add(ctx.b_shape(BShape::F_increasing));
      add(ctx.b_shape(BShape::F_log_concave));
      add(ctx.ratio_monotone_u(RatioKind::R2, true, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R2, true));
      add(ctx.sorted_vec(s.b_a, true, "b_in_D_plus"));
      add(ctx.sorted_vec(s.b_b, true, "bstar_in_D_plus"));
      add(ctx.sorted_vec(s.thetas_a, false, "theta_in_E_plus"));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(s.level, OrderKind::st,
                                    Relation::A_below_B);
      break;
    case TheoremId::T4_2:
      add(ctx.thetas_shared());
      add(ctx.b_shape(BShape::F_decreasing));
      add(ctx.b_shape(BShape::F_log_convex));
      add(ctx.ratio_monotone_u(RatioKind::R2, false, ctx.theta_grid));
      add(ctx.ratio_monotone_theta(RatioKind::R2, false));
      add(ctx.sorted_vec(s.b_a, true, "b_in_D_plus"));
      add(ctx.sorted_vec(s.b_b, true, "bstar_in_D_plus"));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(s.level, OrderKind::st,
                                    Relation::B_below_A);
      break;
    case TheoremId::T4_3: {
      add(ctx.thetas_shared());
      const Distortion d = ctx.dist(s.thetas_a.at(0));
      add(ctx.b_shape(BShape::h_increasing));
      add(ctx.b_shape(BShape::h_convex));
      add(ctx.b_shape(BShape::t43_increasing, &d));
      add(ctx.b_shape(BShape::t43_convex, &d));
      add(ctx.majorization(false));
      cl.implied = order_conclusion(s.level, OrderKind::rh,
                                    Relation::A_below_B);
      break;
    }
    case TheoremId::T4_4:
      add(ctx.ratio_monotone_u(RatioKind::R4, true, s.thetas_a));
      add(ctx.marginal_drhr());
      cl.implied = drhr_conclusion(s.level);
      break;
  }
  return cl;
}

bool theorem_has_bracket(TheoremId id) {
  switch (id) {
    case TheoremId::T3_3:
    case TheoremId::T3_4:
    case TheoremId::T3_5:
    case TheoremId::T3_6:
    case TheoremId::T3_7:
      return true;
    default:
      return false;
  }
}

bool is_system_level_theorem(TheoremId id) {
  switch (id) {
    case TheoremId::T4_1:
    case TheoremId::T4_2:
    case TheoremId::T4_3:
    case TheoremId::T4_4:
      return true;
    default:
      return false;
  }
}

bool is_single_system_theorem(TheoremId id) {
  return id == TheoremId::T3_8 || id == TheoremId::T4_4;
}

}  // namespace

TheoremCertificate check_theorem(TheoremId id, const ComparisonSetup& setup,
                                 const CheckOptions& opts) {
  if (is_system_level_theorem(id) != (setup.level == Level::system))
    throw std::invalid_argument(
        "scenario level does not match the theorem's shape");
  if (!is_single_system_theorem(id) &&
      (setup.b_b.empty() || setup.b_a.size() != setup.b_b.size()))
    throw std::invalid_argument(
        "comparison theorems need two parameter vectors of equal length");

  const Ctx ctx(setup, opts);

  auto evaluate = [&](bool bracketed) {
    TheoremCertificate cert;
    cert.id = id;
    cert.bracketed_variant = bracketed;
    Checklist cl = build_checklist(id, ctx, bracketed);
    cert.reports = std::move(cl.reports);
    cert.implied = std::move(cl.implied);
    cert.all_pass = true;
    for (const auto& r : cert.reports) cert.all_pass &= r.pass;
    return cert;
  };

  TheoremCertificate cert = evaluate(false);
  if (!cert.all_pass && theorem_has_bracket(id) &&
      opts.variant == CheckOptions::Variant::automatic) {
    TheoremCertificate alt = evaluate(true);
    if (alt.all_pass) cert = std::move(alt);
  } else if (opts.variant == CheckOptions::Variant::bracketed) {
    if (!theorem_has_bracket(id))
      throw std::invalid_argument("theorem has no bracketed variant");
    cert = evaluate(true);
  }

  // independent verification of the conclusion
  GridSpec vg = setup.grid;
  if (opts.verify_points > 0) vg.points = opts.verify_points;
  const Grid grid = Grid::make(vg);
  if (cert.implied.drhr) {
    const AnySystem sys = setup.build_a();
    const double lo = support_start(sys) * (1.0 + 1e-9) + 1e-12;
    std::vector<double> ts;
    for (double t : grid.x)
      if (t > lo) ts.push_back(t);
    cert.verified_drhr =
        check_drhr([&](double t) { return rev_hazard(sys, t); }, ts, opts.tol);
    cert.conclusion_consistent = cert.verified_drhr->pass;
  } else {
    const AnySystem a = setup.build_a();
    const AnySystem b = setup.build_b();
    cert.verified = check_order(cert.implied.kind, a, b, grid);
    cert.conclusion_consistent =
        cert.verified->relation == cert.implied.direction ||
        cert.verified->relation == Relation::indistinguishable;
  }
  return cert;
}

void TheoremCertificate::write_json(std::ostream& os) const {
  nlohmann::json j;
  j["theorem"] = std::string(theorem_token(id));
  j["bracketed_variant"] = bracketed_variant;
  j["conditions"] = nlohmann::json::array();
  for (const auto& r : reports) {
    j["conditions"].push_back({{"id", r.id},
                               {"pass", r.pass},
                               {"worst_point", r.worst_point},
                               {"margin", r.worst_margin}});
  }
  j["all_pass"] = all_pass;
  j["implied"] = implied.text;
  if (verified) {
    j["verified"] = {{"kind", std::string(order_token(verified->kind))},
                     {"relation", std::string(relation_token(verified->relation))},
                     {"max_violation", verified->max_violation},
                     {"crossings", verified->crossing_points}};
  } else if (verified_drhr) {
    j["verified"] = {{"id", verified_drhr->id},
                     {"pass", verified_drhr->pass},
                     {"worst_point", verified_drhr->worst_point},
                     {"margin", verified_drhr->worst_margin}};
  }
  j["conclusion_consistent"] = conclusion_consistent;
  os << j.dump(2) << '\n';
}

}  // namespace redsys
