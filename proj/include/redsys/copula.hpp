#ifndef REDSYS_COPULA_HPP
#define REDSYS_COPULA_HPP

#include <cstdint>
#include <string_view>
#include <vector>

namespace redsys {

enum class CopulaFamily { clayton, gumbel, fgm };

std::string_view copula_token(CopulaFamily f);
CopulaFamily copula_from_token(std::string_view token);

struct CopulaSpec {
  CopulaFamily family;
  double theta;
  int dim;

  // Parameter ranges: Clayton theta in [-1,inf) \ {0}; Gumbel theta in
  // [1,inf); FGM theta in [-1,1]; dim >= 2.
  void validate() const;
};

// C(u,...,u,1,...,1) with j arguments at u. j = 0 gives 1. Values at
// u in {0,1} are the continuous limits. Clayton with theta < 0 throws
// std::domain_error in the grounded region j*u^-theta - (j-1) <= 0.
double partial_diagonal(const CopulaSpec& spec, int j, double u);

// The same evaluations with the complement of u supplied explicitly, so
// compositions can pass w = 1-u computed without cancellation. All four keep
// full relative precision at both ends of [0,1].
double partial_diagonal2(const CopulaSpec& spec, int j, double u, double w);
// 1 - C(u,..,u,1,..,1), stable for u near 1.
double partial_diagonal_complement2(const CopulaSpec& spec, int j, double u,
                                    double w);
double partial_diagonal_d1(const CopulaSpec& spec, int j, double u, double w);
double partial_diagonal_d2(const CopulaSpec& spec, int j, double u, double w);

// D'_j/D'_j(1) - 1 and D''_j/D''_j(1) - 1 with full relative precision at
// both ends of [0,1]; the anchored derivative sums in Distortion rely on
// these to avoid the structural cancellation at u -> 1. Only Clayton with
// theta > 0 and Gumbel support the relative forms.
double partial_diagonal_d1_rel(const CopulaSpec& spec, int j, double u,
                               double w);
double partial_diagonal_d2_rel(const CopulaSpec& spec, int j, double u,
                               double w);

// Slope of the j-diagonal at u = 1 (from below); the anchor used by the
// cancellation-free derivative sums in Distortion.
double diagonal_slope_at_one(const CopulaSpec& spec, int j);
double diagonal_curvature_at_one(const CopulaSpec& spec, int j);

// Exact iid draws from the copula, row-major count x dim. Clayton requires
// theta > 0 (Gamma frailty), Gumbel theta >= 1 (positive-stable frailty),
// FGM any theta in [-1,1] (rejection against the uniform density bound
// 1 + |theta|, which is valid in every dimension since |prod(1-2u_i)| <= 1).
// Deterministic for a fixed seed.
std::vector<double> sample_copula(const CopulaSpec& spec, std::size_t count,
                                  std::uint64_t seed);

// Draws one row into out[0..dim); used by the Monte Carlo kernels.
class Rng;
void sample_copula_row(const CopulaSpec& spec, Rng& rng, double* out);

}  // namespace redsys

#endif  // REDSYS_COPULA_HPP
