#include "redsys/lifetime.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace redsys {

namespace {

[[noreturn]] void pole(const char* what) { throw std::domain_error(what); }

}  // namespace

std::string_view family_token(Family f) {
  switch (f) {
    case Family::lomax: return "lomax";
    case Family::generalized_exponential: return "generalized_exponential";
    case Family::inverted_exponential: return "inverted_exponential";
    case Family::pareto1: return "pareto1";
    case Family::weibull: return "weibull";
    case Family::rayleigh: return "rayleigh";
    case Family::shifted_exponential: return "shifted_exponential";
  }
  throw std::invalid_argument("unknown family tag");
}

Family family_from_token(std::string_view token) {
  for (Family f : {Family::lomax, Family::generalized_exponential,
                   Family::inverted_exponential, Family::pareto1,
                   Family::weibull, Family::rayleigh,
                   Family::shifted_exponential}) {
    if (family_token(f) == token) return f;
  }
  throw std::invalid_argument("unknown family token: " + std::string(token));
}

LifetimeModel::LifetimeModel(Family family, double b, double alpha)
    : family_(family), b_(b), alpha_(alpha) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw std::invalid_argument("lifetime parameter b must be > 0");
  if (family == Family::pareto1 && (!(alpha > 0.0) || !std::isfinite(alpha)))
    throw std::invalid_argument("pareto1 shape alpha must be > 0");
}

double LifetimeModel::support_start() const {
  switch (family_) {
    case Family::pareto1:
    case Family::shifted_exponential:
      return b_;
    default:
      return 0.0;
  }
}

double LifetimeModel::sf(double t) const {
  // the small side is computed directly, so both tails keep full relative
  // precision and sf + cdf == 1 holds exactly
  const auto [c, s] = cdf_sf(t);
  (void)c;
  return s;
}

double LifetimeModel::cdf(double t) const { return cdf_sf(t).first; }

std::pair<double, double> LifetimeModel::cdf_sf(double t) const {
  if (!std::isfinite(t)) throw std::invalid_argument("t must be finite");
  // cdf is 0 at the lower support end for every family (right-continuous)
  if (t <= support_start()) return {0.0, 1.0};
  double sf_direct;
  switch (family_) {
    case Family::lomax:
      sf_direct = std::exp(-b_ * std::log1p(t));
      break;
    case Family::generalized_exponential: {
      // here the cdf has the closed form, the sf is the complement
      const double lc = std::sqrt(b_) * std::log(-std::expm1(-t));
      const double c = std::exp(lc);
      if (c < 0.5) return {c, 1.0 - c};
      const double s = -std::expm1(lc);
      return {1.0 - s, s};
    }
    case Family::inverted_exponential: {
      const double c = std::exp(-b_ / t);
      if (c < 0.5) return {c, 1.0 - c};
      const double s = -std::expm1(-b_ / t);
      return {1.0 - s, s};
    }
    case Family::pareto1:
      sf_direct = std::exp(alpha_ * (std::log(b_) - std::log(t)));
      break;
    case Family::weibull:
      sf_direct = std::exp(-std::pow(t, b_));
      break;
    case Family::rayleigh:
      sf_direct = std::exp(-b_ * t * t);
      break;
    case Family::shifted_exponential:
      sf_direct = std::exp(-(t - b_));
      break;
    default:
      throw std::logic_error("unreachable");
  }
  if (sf_direct < 0.5) return {1.0 - sf_direct, sf_direct};
  // sf close to 1: recover the cdf from the exponent via expm1
  double c;
  switch (family_) {
    case Family::lomax:
      c = -std::expm1(-b_ * std::log1p(t));
      break;
    case Family::pareto1:
      c = -std::expm1(alpha_ * (std::log(b_) - std::log(t)));
      break;
    case Family::weibull:
      c = -std::expm1(-std::pow(t, b_));
      break;
    case Family::rayleigh:
      c = -std::expm1(-b_ * t * t);
      break;
    case Family::shifted_exponential:
      c = -std::expm1(-(t - b_));
      break;
    default:
      throw std::logic_error("unreachable");
  }
  return {c, 1.0 - c};
}

double LifetimeModel::log_cdf(double t) const {
  if (t <= support_start())
    return -std::numeric_limits<double>::infinity();
  switch (family_) {
    case Family::inverted_exponential:
      return -b_ / t;
    default: {
      const double s = sf(t);
      if (s > 0.5) return std::log1p(-s);
      return std::log(cdf(t));
    }
  }
}

double LifetimeModel::pdf(double t) const {
  if (!(t > support_start())) pole("pdf evaluated outside open support");
  switch (family_) {
    case Family::lomax:
      return b_ * std::exp(-(b_ + 1.0) * std::log1p(t));
    case Family::generalized_exponential: {
      const double sb = std::sqrt(b_);
      const double g = -std::expm1(-t);  // 1 - e^-t
      return sb * std::pow(g, sb - 1.0) * std::exp(-t);
    }
    case Family::inverted_exponential:
      return b_ / (t * t) * std::exp(-b_ / t);
    case Family::pareto1:
      return alpha_ * std::exp(alpha_ * std::log(b_) -
                               (alpha_ + 1.0) * std::log(t));
    case Family::weibull:
      return b_ * std::pow(t, b_ - 1.0) * std::exp(-std::pow(t, b_));
    case Family::rayleigh:
      return 2.0 * b_ * t * std::exp(-b_ * t * t);
    case Family::shifted_exponential:
      return std::exp(-(t - b_));
  }
  throw std::logic_error("unreachable");
}

double LifetimeModel::pdf_prime(double t) const {
  if (!(t > support_start())) pole("pdf' evaluated outside open support");
  switch (family_) {
    case Family::lomax:
      return -b_ * (b_ + 1.0) * std::exp(-(b_ + 2.0) * std::log1p(t));
    case Family::generalized_exponential: {
      const double sb = std::sqrt(b_);
      const double g = -std::expm1(-t);
      const double e = std::exp(-t);
      return sb * e * std::pow(g, sb - 2.0) * ((sb - 1.0) * e - g);
    }
    case Family::inverted_exponential:
      return std::exp(-b_ / t) * (b_ / (t * t * t)) * (b_ / t - 2.0);
    case Family::pareto1:
      return -(alpha_ + 1.0) * alpha_ *
             std::exp(alpha_ * std::log(b_) - (alpha_ + 2.0) * std::log(t));
    case Family::weibull: {
      const double tb = std::pow(t, b_);
      return b_ * std::exp(-tb) * std::pow(t, b_ - 2.0) *
             ((b_ - 1.0) - b_ * tb);
    }
    case Family::rayleigh:
      return 2.0 * b_ * std::exp(-b_ * t * t) * (1.0 - 2.0 * b_ * t * t);
    case Family::shifted_exponential:
      return -std::exp(-(t - b_));
  }
  throw std::logic_error("unreachable");
}

double LifetimeModel::hazard(double t) const {
  const double s = sf(t);
  if (s <= 0.0) pole("hazard pole: sf(t) = 0");
  return pdf(t) / s;
}

double LifetimeModel::rev_hazard(double t) const {
  const double c = cdf(t);
  if (c <= 0.0) pole("reversed hazard pole: cdf(t) = 0");
  return pdf(t) / c;
}

double LifetimeModel::rev_hazard_prime(double t) const {
  const double c = cdf(t);
  if (c <= 0.0) pole("reversed hazard pole: cdf(t) = 0");
  const double f = pdf(t);
  // d/dt (f/F) = f'/F - (f/F)^2
  return pdf_prime(t) / c - (f / c) * (f / c);
}

double LifetimeModel::cdf_db(double t) const {
  if (t <= support_start()) return 0.0;
  switch (family_) {
    case Family::lomax:
      return std::exp(-b_ * std::log1p(t)) * std::log1p(t);
    case Family::generalized_exponential: {
      const double lg = std::log(-std::expm1(-t));
      const double sb = std::sqrt(b_);
      return std::exp(sb * lg) * lg / (2.0 * sb);
    }
    case Family::inverted_exponential:
      return -std::exp(-b_ / t) / t;
    case Family::pareto1:
      return -alpha_ * std::exp((alpha_ - 1.0) * std::log(b_) -
                                alpha_ * std::log(t));
    case Family::weibull:
      // the shape is the free parameter here
      return std::exp(-std::pow(t, b_)) * std::pow(t, b_) * std::log(t);
    case Family::rayleigh:
      return t * t * std::exp(-b_ * t * t);
    case Family::shifted_exponential:
      return -std::exp(-(t - b_));
  }
  throw std::logic_error("unreachable");
}

double LifetimeModel::sf_inverse(double u) const {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("sf_inverse requires u in (0,1)");
  switch (family_) {
    case Family::lomax:
      return std::expm1(-std::log(u) / b_);
    case Family::generalized_exponential:
      // F = 1-u  =>  t = -ln(1 - (1-u)^(1/sqrt b))
      return -std::log1p(-std::exp(std::log1p(-u) / std::sqrt(b_)));
    case Family::inverted_exponential:
      return -b_ / std::log1p(-u);
    case Family::pareto1:
      return b_ * std::pow(u, -1.0 / alpha_);
    case Family::weibull:
      return std::pow(-std::log(u), 1.0 / b_);
    case Family::rayleigh:
      return std::sqrt(-std::log(u) / b_);
    case Family::shifted_exponential:
      return b_ - std::log(u);
  }
  throw std::logic_error("unreachable");
}

double cdf_db_numeric(Family family, double b, double t, double alpha) {
  return central_derivative(
      [&](double bb) { return LifetimeModel(family, bb, alpha).cdf(t); }, b);
}

CurvatureReport log_cdf_b_curvature(Family family, double t,
                                    std::span<const double> b_grid,
                                    double alpha) {
  if (b_grid.size() < 3)
    throw std::invalid_argument("b_grid needs at least 3 points");
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    if (!(b_grid[i] > 0.0))
      throw std::domain_error("b_grid touches the parameter domain boundary");
    if (i > 0 && !(b_grid[i] > b_grid[i - 1]))
      throw std::invalid_argument("b_grid must be strictly increasing");
  }
  std::vector<double> lf(b_grid.size());
  for (std::size_t i = 0; i < b_grid.size(); ++i) {
    LifetimeModel m(family, b_grid[i], alpha);
    if (t <= m.support_start())
      throw std::domain_error("t must lie inside the support for every b");
    lf[i] = m.log_cdf(t);
  }
  return classify_curvature(lf, b_grid);
}

}  // namespace redsys
