#include "redsys/system.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

namespace redsys {

Grid Grid::make(const GridSpec& spec) {
  if (spec.points < 2) throw std::invalid_argument("grid needs >= 2 points");
  if (!(spec.y_min > 0.0) || !(spec.y_max < 1.0) || !(spec.y_min < spec.y_max))
    throw std::invalid_argument("grid requires 0 < y_min < y_max < 1");
  Grid g;
  g.y.resize(spec.points);
  g.x.resize(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i) {
    // y descending so that x = -ln y ascends
    const double f = static_cast<double>(i) / (spec.points - 1);
    g.y[i] = spec.y_max + (spec.y_min - spec.y_max) * f;
    g.x[i] = -std::log(g.y[i]);
  }
  return g;
}

namespace {

std::vector<LifetimeModel> build_members(Family family,
                                         const std::vector<double>& b,
                                         double alpha) {
  if (b.empty()) throw std::invalid_argument("parameter vector b is empty");
  std::vector<LifetimeModel> ms;
  ms.reserve(b.size());
  for (double bj : b) ms.emplace_back(family, bj, alpha);
  return ms;
}

double max_support_start(const std::vector<LifetimeModel>& ms) {
  double s = 0.0;
  for (const auto& m : ms) s = std::max(s, m.support_start());
  return s;
}

}  // namespace

ComponentLevelSystem::ComponentLevelSystem(const CoherentStructure& structure,
                                           CopulaFamily copula, double theta,
                                           Family family,
                                           std::vector<double> b, double alpha)
    : distortion_(Distortion::make(
          structure, CopulaSpec{copula, theta, std::max(structure.n, 2)})),
      structure_(structure),
      members_(build_members(family, b, alpha)),
      support_start_(max_support_start(members_)) {}

ComponentLevelSystem::ComponentLevelSystem(Distortion distortion,
                                           Family family,
                                           std::vector<double> b, double alpha)
    : distortion_(std::move(distortion)),
      members_(build_members(family, b, alpha)),
      support_start_(max_support_start(members_)) {}

ComponentLevelSystem::Block ComponentLevelSystem::block(double t) const {
  Block bl{};
  if (t <= support_start_) {
    bl.w = 0.0;
    bl.v = 1.0;
    bl.wprime = 0.0;
    return bl;
  }
  double log_sum = 0.0;
  for (const auto& m : members_) log_sum += m.log_cdf(t);
  bl.w = std::exp(log_sum);
  bl.v = -std::expm1(log_sum);
  // product rule, each term as pdf_i * prod_{k != i} F_k
  double acc = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    double term = members_[i].pdf(t);
    for (std::size_t k = 0; k < members_.size(); ++k)
      if (k != i) term *= members_[k].cdf(t);
    acc += term;
  }
  bl.wprime = acc;
  return bl;
}

double ComponentLevelSystem::sf(double t) const {
  if (t <= support_start_) return 1.0;
  const Block bl = block(t);
  return distortion_.q2(bl.v, bl.w);
}

double ComponentLevelSystem::cdf(double t) const {
  if (t <= support_start_) return 0.0;
  const Block bl = block(t);
  return distortion_.q_bar2(bl.v, bl.w);
}

double ComponentLevelSystem::pdf(double t) const {
  if (t <= support_start_)
    throw std::domain_error("pdf needs t inside every member support");
  const Block bl = block(t);
  return distortion_.q_prime2(bl.v, bl.w) * bl.wprime;
}

double ComponentLevelSystem::hazard(double t) const {
  const double s = sf(t);
  if (s <= 0.0) throw std::domain_error("hazard pole: system sf(t) = 0");
  return pdf(t) / s;
}

double ComponentLevelSystem::rev_hazard(double t) const {
  if (t <= support_start_)
    throw std::domain_error("reversed hazard needs t inside the support");
  const Block bl = block(t);
  const double c = distortion_.q_bar2(bl.v, bl.w);
  if (c <= 0.0) throw std::domain_error("reversed hazard pole: cdf(t) = 0");
  return distortion_.q_prime2(bl.v, bl.w) * bl.wprime / c;
}

SystemLevelSystem::SystemLevelSystem(const CoherentStructure& structure,
                                     CopulaFamily copula,
                                     std::vector<double> thetas, Family family,
                                     std::vector<double> b, double alpha)
    : structure_(structure),
      members_(build_members(family, b, alpha)),
      support_start_(max_support_start(members_)) {
  if (thetas.size() != b.size())
    throw std::invalid_argument("thetas and b must have equal length");
  distortions_.reserve(thetas.size());
  for (double th : thetas)
    distortions_.push_back(Distortion::make(
        structure_, CopulaSpec{copula, th, std::max(structure_.n, 2)}));
}

double SystemLevelSystem::cdf(double t) const {
  if (t <= support_start_) return 0.0;
  double log_sum = 0.0;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const double F = members_[j].cdf(t);
    const double S = members_[j].sf(t);
    const double factor = distortions_[j].q_bar2(S, F);
    if (factor <= 0.0) return 0.0;
    log_sum += std::log(factor);
  }
  return std::exp(log_sum);
}

double SystemLevelSystem::sf(double t) const {
  if (t <= support_start_) return 1.0;
  double log_sum = 0.0;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const double F = members_[j].cdf(t);
    const double S = members_[j].sf(t);
    const double qj = distortions_[j].q2(S, F);
    if (qj >= 1.0) return 1.0;
    log_sum += std::log1p(-qj);
  }
  return -std::expm1(log_sum);
}

double SystemLevelSystem::pdf(double t) const {
  if (t <= support_start_)
    throw std::domain_error("pdf needs t inside every subsystem support");
  // product rule over the subsystem cdf factors 1 - q_j(sf_j)
  std::vector<double> factor(members_.size());
  std::vector<double> deriv(members_.size());
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const double F = members_[j].cdf(t);
    const double S = members_[j].sf(t);
    factor[j] = distortions_[j].q_bar2(S, F);
    deriv[j] = distortions_[j].q_prime2(S, F) * members_[j].pdf(t);
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    double term = deriv[j];
    for (std::size_t k = 0; k < members_.size(); ++k)
      if (k != j) term *= factor[k];
    acc += term;
  }
  return acc;
}

double SystemLevelSystem::hazard(double t) const {
  const double s = sf(t);
  if (s <= 0.0) throw std::domain_error("hazard pole: system sf(t) = 0");
  return pdf(t) / s;
}

double SystemLevelSystem::rev_hazard(double t) const {
  if (t <= support_start_)
    throw std::domain_error("reversed hazard needs t inside the support");
  // sum_j q'_j(1-F_j) f_j / (1 - q_j(1-F_j))
  double acc = 0.0;
  for (std::size_t j = 0; j < members_.size(); ++j) {
    const double F = members_[j].cdf(t);
    const double S = members_[j].sf(t);
    const double factor = distortions_[j].q_bar2(S, F);
    if (factor <= 0.0)
      throw std::domain_error("reversed hazard pole: subsystem cdf(t) = 0");
    acc += distortions_[j].q_prime2(S, F) * members_[j].pdf(t) / factor;
  }
  return acc;
}

double sf(const AnySystem& s, double t) {
  return std::visit([&](const auto& sys) { return sys.sf(t); }, s);
}
double cdf(const AnySystem& s, double t) {
  return std::visit([&](const auto& sys) { return sys.cdf(t); }, s);
}
double pdf(const AnySystem& s, double t) {
  return std::visit([&](const auto& sys) { return sys.pdf(t); }, s);
}
double hazard(const AnySystem& s, double t) {
  return std::visit([&](const auto& sys) { return sys.hazard(t); }, s);
}
double rev_hazard(const AnySystem& s, double t) {
  return std::visit([&](const auto& sys) { return sys.rev_hazard(t); }, s);
}
double support_start(const AnySystem& s) {
  return std::visit([&](const auto& sys) { return sys.support_start(); }, s);
}

void SurvivalCurve::write_csv(std::ostream& os) const {
  const bool with_se = !stderrs.empty();
  os << (with_se ? "y,x,value,stderr\n" : "y,x,value\n");
  os.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << grid.y[i] << ',' << grid.x[i] << ',' << values[i];
    if (with_se) os << ',' << stderrs[i];
    os << '\n';
  }
}

void SurvivalCurve::write_json(std::ostream& os) const {
  os.precision(17);
  auto dump = [&](const char* name, const std::vector<double>& v, bool tail) {
    os << '"' << name << "\":[";
    for (std::size_t i = 0; i < v.size(); ++i)
      os << v[i] << (i + 1 < v.size() ? "," : "");
    os << ']' << (tail ? "," : "");
  };
  os << '{';
  dump("y", grid.y, true);
  dump("x", grid.x, true);
  dump("value", values, !stderrs.empty());
  if (!stderrs.empty()) dump("stderr", stderrs, false);
  os << "}\n";
}

SurvivalCurve evaluate_curve(const AnySystem& s, const Grid& grid, Quantity q,
                             Exec exec) {
  SurvivalCurve curve;
  curve.grid = grid;
  curve.values.resize(grid.size());
  auto eval = [&](double t) {
    switch (q) {
      case Quantity::sf: return sf(s, t);
      case Quantity::cdf: return cdf(s, t);
      case Quantity::pdf: return pdf(s, t);
      case Quantity::hazard: return hazard(s, t);
      case Quantity::rev_hazard: return rev_hazard(s, t);
    }
    throw std::logic_error("unreachable");
  };
  const std::int64_t n = static_cast<std::int64_t>(grid.size());
  if (exec == Exec::parallel) {
    // exceptions must not unwind out of the parallel region
    std::exception_ptr err;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      try {
        curve.values[i] = eval(grid.x[i]);
      } catch (...) {
#pragma omp critical
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
  } else {
    for (std::int64_t i = 0; i < n; ++i) curve.values[i] = eval(grid.x[i]);
  }
  return curve;
}

}  // namespace redsys
