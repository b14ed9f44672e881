#include "redsys/copula.hpp"

#include <cmath>
#include <stdexcept>

#include "redsys/sampling.hpp"

namespace redsys {

namespace {

// ln u (<= 0) from whichever side of the pair (u, w = 1-u) is exact.
double log_u(double u, double w) {
  return u > 0.5 ? std::log1p(-w) : std::log(u);
}

// ln(j*u^-theta - (j-1)) for theta > 0 via L = -ln u >= 0; no overflow and
// no cancellation anywhere on (0,1].
double clayton_lns(int j, double L, double theta) {
  const double t = theta * L;
  if (t < 30.0) return std::log1p(j * std::expm1(t));
  return std::log(static_cast<double>(j)) + t +
         std::log1p(-((j - 1.0) / j) * std::exp(-t));
}

// Clayton theta < 0: direct evaluation; the grounded region is an error.
double clayton_neg_s(int j, double u, double theta) {
  const double s = j * std::pow(u, -theta) - (j - 1.0);
  if (s <= 0.0)
    throw std::domain_error(
        "Clayton partial diagonal hit the grounded region (theta < 0)");
  return s;
}

}  // namespace

std::string_view copula_token(CopulaFamily f) {
  switch (f) {
    case CopulaFamily::clayton: return "clayton";
    case CopulaFamily::gumbel: return "gumbel";
    case CopulaFamily::fgm: return "fgm";
  }
  throw std::invalid_argument("unknown copula tag");
}

CopulaFamily copula_from_token(std::string_view token) {
  for (CopulaFamily f :
       {CopulaFamily::clayton, CopulaFamily::gumbel, CopulaFamily::fgm}) {
    if (copula_token(f) == token) return f;
  }
  throw std::invalid_argument("unknown copula token: " + std::string(token));
}

void CopulaSpec::validate() const {
  if (dim < 2) throw std::invalid_argument("copula dimension must be >= 2");
  if (!std::isfinite(theta))
    throw std::invalid_argument("copula theta must be finite");
  switch (family) {
    case CopulaFamily::clayton:
      if (theta < -1.0 || theta == 0.0)
        throw std::invalid_argument(
            "Clayton theta must lie in [-1,inf) excluding 0");
      return;
    case CopulaFamily::gumbel:
      if (theta < 1.0)
        throw std::invalid_argument("Gumbel theta must lie in [1,inf)");
      return;
    case CopulaFamily::fgm:
      if (theta < -1.0 || theta > 1.0)
        throw std::invalid_argument("FGM theta must lie in [-1,1]");
      return;
  }
  throw std::invalid_argument("unknown copula family");
}

double partial_diagonal2(const CopulaSpec& spec, int j, double u, double w) {
  if (j == 0) return 1.0;
  if (u <= 0.0 || w >= 1.0) return 0.0;
  if (u >= 1.0 || w <= 0.0) return 1.0;
  const double lnu = log_u(u, w);
  switch (spec.family) {
    case CopulaFamily::clayton: {
      if (spec.theta > 0.0)
        return std::exp(-clayton_lns(j, -lnu, spec.theta) / spec.theta);
      const double s = clayton_neg_s(j, u, spec.theta);
      return std::pow(s, -1.0 / spec.theta);
    }
    case CopulaFamily::gumbel:
      return std::exp(std::pow(j, 1.0 / spec.theta) * lnu);
    case CopulaFamily::fgm: {
      if (j < spec.dim) return std::exp(j * lnu);
      return std::exp(spec.dim * lnu) *
             (1.0 + spec.theta * std::pow(w, spec.dim));
    }
  }
  throw std::logic_error("unreachable");
}

double partial_diagonal_complement2(const CopulaSpec& spec, int j, double u,
                                    double w) {
  if (j == 0) return 0.0;
  if (u <= 0.0 || w >= 1.0) return 1.0;
  if (u >= 1.0 || w <= 0.0) return 0.0;
  const double lnu = log_u(u, w);
  switch (spec.family) {
    case CopulaFamily::clayton: {
      if (spec.theta > 0.0)
        return -std::expm1(-clayton_lns(j, -lnu, spec.theta) / spec.theta);
      const double s = clayton_neg_s(j, u, spec.theta);
      return -std::expm1(-std::log(s) / spec.theta);
    }
    case CopulaFamily::gumbel:
      return -std::expm1(std::pow(j, 1.0 / spec.theta) * lnu);
    case CopulaFamily::fgm: {
      const int n = spec.dim;
      if (j < n) return -std::expm1(j * lnu);
      const double corr = spec.theta * std::pow(w, n);
      if (corr <= -1.0) return 1.0;  // theta = -1, u = 0 corner
      return -std::expm1(n * lnu + std::log1p(corr));
    }
  }
  throw std::logic_error("unreachable");
}

double diagonal_slope_at_one(const CopulaSpec& spec, int j) {
  if (j == 0) return 0.0;
  switch (spec.family) {
    case CopulaFamily::clayton:
    case CopulaFamily::fgm:
      return static_cast<double>(j);
    case CopulaFamily::gumbel:
      return std::pow(j, 1.0 / spec.theta);
  }
  throw std::logic_error("unreachable");
}

double diagonal_curvature_at_one(const CopulaSpec& spec, int j) {
  if (j == 0) return 0.0;
  switch (spec.family) {
    case CopulaFamily::clayton:
      return j * (j - 1.0) * (spec.theta + 1.0);
    case CopulaFamily::gumbel: {
      const double c = std::pow(j, 1.0 / spec.theta);
      return c * (c - 1.0);
    }
    case CopulaFamily::fgm:
      if (j == spec.dim && spec.dim == 2) return 2.0 + 2.0 * spec.theta;
      return j * (j - 1.0);
  }
  throw std::logic_error("unreachable");
}

double partial_diagonal_d1_rel(const CopulaSpec& spec, int j, double u,
                               double w) {
  const double lnu = w <= 0.0 ? 0.0 : log_u(u, w);
  switch (spec.family) {
    case CopulaFamily::clayton: {
      const double theta = spec.theta;
      if (theta < 0.0)
        throw std::invalid_argument("relative form needs Clayton theta > 0");
      const double L = -lnu;
      const double t = theta * L;
      double g;
      if (t < 30.0) {
        g = (theta + 1.0) * L -
            (1.0 + 1.0 / theta) * std::log1p(j * std::expm1(t));
      } else {
        // (theta+1)L - (1+1/theta)(ln j + theta L + c) = -(1+1/theta)(ln j + c)
        const double c = std::log1p(-((j - 1.0) / j) * std::exp(-t));
        g = -(1.0 + 1.0 / theta) * (std::log(static_cast<double>(j)) + c);
      }
      return std::expm1(g);
    }
    case CopulaFamily::gumbel: {
      const double c = std::pow(j, 1.0 / spec.theta);
      if (c == 1.0) return 0.0;
      return std::expm1((c - 1.0) * lnu);
    }
    case CopulaFamily::fgm:
      throw std::invalid_argument("relative form not available for FGM");
  }
  throw std::logic_error("unreachable");
}

double partial_diagonal_d2_rel(const CopulaSpec& spec, int j, double u,
                               double w) {
  const double lnu = w <= 0.0 ? 0.0 : log_u(u, w);
  switch (spec.family) {
    case CopulaFamily::clayton: {
      const double theta = spec.theta;
      if (theta < 0.0)
        throw std::invalid_argument("relative form needs Clayton theta > 0");
      const double L = -lnu;
      const double t = theta * L;
      double h;
      if (t < 30.0) {
        h = (theta + 2.0) * L -
            (2.0 + 1.0 / theta) * std::log1p(j * std::expm1(t));
      } else {
        const double c = std::log1p(-((j - 1.0) / j) * std::exp(-t));
        h = (1.0 - theta) * L -
            (2.0 + 1.0 / theta) * (std::log(static_cast<double>(j)) + c);
      }
      return std::expm1(h);
    }
    case CopulaFamily::gumbel: {
      const double c = std::pow(j, 1.0 / spec.theta);
      if (c == 2.0) return 0.0;
      return std::expm1((c - 2.0) * lnu);
    }
    case CopulaFamily::fgm:
      throw std::invalid_argument("relative form not available for FGM");
  }
  throw std::logic_error("unreachable");
}

namespace {

double fgm_d1(const CopulaSpec& spec, int j, double u, double w) {
  const int n = spec.dim;
  const double lnu = w <= 0.0 ? 0.0 : log_u(u, w);
  const double uj1 = (j == 1) ? 1.0 : std::exp((j - 1.0) * lnu);
  if (j < n) return j * uj1;
  return n * uj1 * (1.0 + spec.theta * std::pow(w, n - 1) * (1.0 - 2.0 * u));
}

double fgm_d2(const CopulaSpec& spec, int j, double u, double w) {
  const int n = spec.dim;
  if (j == 1) return 0.0;
  const double lnu = w <= 0.0 ? 0.0 : log_u(u, w);
  const double un2 = (j == 2) ? 1.0 : std::exp((j - 2.0) * lnu);
  if (j < n) return j * (j - 1.0) * un2;
  const double un1 = std::exp((n - 1.0) * lnu);
  const double wn1 = std::pow(w, n - 1);
  const double wn2 = std::pow(w, n - 2);
  return n * (n - 1.0) * un2 +
         spec.theta * n *
             ((n - 1.0) * un2 * wn1 * (1.0 - 2.0 * u) -
              un1 * ((n - 1.0) * wn2 * (1.0 - 2.0 * u) + 2.0 * wn1));
}

}  // namespace

double partial_diagonal_d1(const CopulaSpec& spec, int j, double u, double w) {
  if (j == 0) return 0.0;
  if (spec.family == CopulaFamily::fgm) return fgm_d1(spec, j, u, w);
  if (spec.family == CopulaFamily::clayton && spec.theta < 0.0) {
    const double s = clayton_neg_s(j, u, spec.theta);
    return j * std::pow(u, -spec.theta - 1.0) *
           std::pow(s, -1.0 / spec.theta - 1.0);
  }
  const double k = diagonal_slope_at_one(spec, j);
  return k * (1.0 + partial_diagonal_d1_rel(spec, j, u, w));
}

double partial_diagonal_d2(const CopulaSpec& spec, int j, double u, double w) {
  if (j == 0) return 0.0;
  if (spec.family == CopulaFamily::fgm) return fgm_d2(spec, j, u, w);
  if (spec.family == CopulaFamily::clayton && spec.theta < 0.0) {
    const double s = clayton_neg_s(j, u, spec.theta);
    return j * (j - 1.0) * (spec.theta + 1.0) *
           std::pow(u, -spec.theta - 2.0) *
           std::pow(s, -1.0 / spec.theta - 2.0);
  }
  const double kap = diagonal_curvature_at_one(spec, j);
  if (kap == 0.0) return 0.0;
  return kap * (1.0 + partial_diagonal_d2_rel(spec, j, u, w));
}

double partial_diagonal(const CopulaSpec& spec, int j, double u) {
  spec.validate();
  if (j < 0 || j > spec.dim)
    throw std::domain_error("diagonal count j outside [0, dim]");
  if (!(u >= 0.0) || !(u <= 1.0)) throw std::domain_error("u outside [0,1]");
  return partial_diagonal2(spec, j, u, 1.0 - u);
}

void sample_copula_row(const CopulaSpec& spec, Rng& rng, double* out) {
  const int n = spec.dim;
  switch (spec.family) {
    case CopulaFamily::clayton: {
      const double v = rng.gamma(1.0 / spec.theta);
      for (int i = 0; i < n; ++i)
        out[i] = std::pow(1.0 + rng.exponential() / v, -1.0 / spec.theta);
      return;
    }
    case CopulaFamily::gumbel: {
      if (spec.theta == 1.0) {
        for (int i = 0; i < n; ++i) out[i] = rng.uniform();
        return;
      }
      const double alpha = 1.0 / spec.theta;
      const double v = rng.positive_stable(alpha);
      for (int i = 0; i < n; ++i)
        out[i] = std::exp(-std::pow(rng.exponential() / v, alpha));
      return;
    }
    case CopulaFamily::fgm: {
      const double bound = 1.0 + std::abs(spec.theta);
      for (;;) {
        double prod = 1.0;
        for (int i = 0; i < n; ++i) {
          out[i] = rng.uniform();
          prod *= 1.0 - 2.0 * out[i];
        }
        if (rng.uniform() * bound <= 1.0 + spec.theta * prod) return;
      }
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<double> sample_copula(const CopulaSpec& spec, std::size_t count,
                                  std::uint64_t seed) {
  spec.validate();
  if (spec.family == CopulaFamily::clayton && spec.theta < 0.0)
    throw std::invalid_argument(
        "sampling is not supported for Clayton with theta < 0");
  std::vector<double> rows(count * spec.dim);
  Rng rng(seed);
  for (std::size_t r = 0; r < count; ++r)
    sample_copula_row(spec, rng, rows.data() + r * spec.dim);
  return rows;
}

}  // namespace redsys
