#ifndef REDSYS_LIFETIME_HPP
#define REDSYS_LIFETIME_HPP

#include <span>
#include <utility>
#include <string>
#include <string_view>

#include "redsys/numerics.hpp"

namespace redsys {

// Parametric lifetime families. Each tag fixes one cdf formula; the single
// free parameter is b (the Rayleigh rate is stored in b as well). ParetoI
// additionally carries a fixed shape exponent alpha.
enum class Family {
  lomax,                    // F = 1 - (1+t)^-b,            t >= 0
  generalized_exponential,  // F = (1 - e^-t)^sqrt(b),      t >= 0
  inverted_exponential,     // F = e^(-b/t),                t > 0
  pareto1,                  // F = 1 - (b/t)^alpha,         t >= b
  weibull,                  // F = 1 - exp(-t^b),           t > 0
  rayleigh,                 // F = 1 - exp(-b t^2),         t >= 0
  shifted_exponential,      // F = 1 - e^-(t-b),            t > b
};

std::string_view family_token(Family f);
Family family_from_token(std::string_view token);

class LifetimeModel {
 public:
  LifetimeModel(Family family, double b, double alpha = 1.5);

  Family family() const { return family_; }
  double b() const { return b_; }
  double alpha() const { return alpha_; }

  // Lower end of the support (0, or b for ParetoI / shifted exponential).
  double support_start() const;

  // cdf is 0 below the support and right-continuous; sf + cdf == 1 exactly
  // (the naturally small side is computed in full relative precision and the
  // other obtained by subtraction).
  double cdf(double t) const;
  double sf(double t) const;
  std::pair<double, double> cdf_sf(double t) const;
  // log F(t); -inf below support.
  double log_cdf(double t) const;

  // Density and hazards are defined on the open interior of the support;
  // outside it, or at poles (cdf == 0 for the reversed hazard, sf == 0 for
  // the hazard), a std::domain_error is thrown.
  double pdf(double t) const;
  double pdf_prime(double t) const;
  double hazard(double t) const;
  double rev_hazard(double t) const;
  double rev_hazard_prime(double t) const;

  // Analytic partial derivative of F with respect to b at fixed t.
  double cdf_db(double t) const;

  // Decreasing inverse of the survival function: sf(t) = u, u in (0,1).
  double sf_inverse(double u) const;

 private:
  Family family_;
  double b_;
  double alpha_;
};

// Numerical dF/db (central difference + one Richardson step); used as a
// cross-check of the analytic derivative.
double cdf_db_numeric(Family family, double b, double t, double alpha = 1.5);

// Sign pattern of the second differences of ln F(t; b) along b_grid at fixed
// t. b_grid must be strictly increasing, have at least 3 points, and stay
// strictly inside the parameter domain.
CurvatureReport log_cdf_b_curvature(Family family, double t,
                                    std::span<const double> b_grid,
                                    double alpha = 1.5);

}  // namespace redsys

#endif  // REDSYS_LIFETIME_HPP
