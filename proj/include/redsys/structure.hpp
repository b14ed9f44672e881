#ifndef REDSYS_STRUCTURE_HPP
#define REDSYS_STRUCTURE_HPP

#include <map>
#include <span>
#include <vector>

#include "redsys/copula.hpp"

namespace redsys {

// A coherent structure given by its minimal path sets (1-based component
// ids). Path sets must be pairwise non-nested and jointly cover every
// component (all components relevant).
struct CoherentStructure {
  int n = 0;
  std::vector<std::vector<int>> min_path_sets;

  static CoherentStructure k_out_of_n(int k, int n);
  static CoherentStructure from_path_sets(int n,
                                          std::vector<std::vector<int>> paths);
  static CoherentStructure series(int n);

  void validate() const;
};

// Maximum number of path sets accepted by the inclusion-exclusion expansion.
inline constexpr std::size_t kMaxPathSets = 25;

// Inclusion-exclusion over all nonempty sub-collections of path sets:
// a_{|union|} += (-1)^(|collection|+1). The result satisfies sum a_j = 1.
std::map<int, long long> distortion_coefficients(const CoherentStructure& s);

// q_theta(u) = sum_j a_j C(u,..,u,1,..,1 ; j at u) for an exchangeable
// copula; the system reliability is q(component reliability).
class Distortion {
 public:
  static Distortion make(const CoherentStructure& s, const CopulaSpec& copula);
  static Distortion from_coefficients(std::map<int, long long> coeffs,
                                      const CopulaSpec& copula);

  double q(double u) const { return q2(u, 1.0 - u); }
  double q_bar(double u) const { return q_bar2(u, 1.0 - u); }
  // Derivative requests through the single-argument surface are clamped to
  // u in [1e-12, 1 - 1e-12]; the ratio conditions run on open grids anyway.
  double q_prime(double u) const;
  double q_second(double u) const;

  // The two-argument forms take the complement explicitly so compositions
  // can pass w = prod F computed without cancellation; they do not clamp.
  double q2(double u, double w) const;
  double q_bar2(double u, double w) const;  // 1 - q, stable near u = 1
  double q_prime2(double u, double w) const;
  double q_second2(double u, double w) const;

  const std::map<int, long long>& coefficients() const { return coeffs_; }
  const CopulaSpec& copula() const { return copula_; }

  // Numerical check of the monotonicity invariant on a grid (default 10^4
  // points); returns the worst drop, <= tol for a valid distortion.
  double monotonicity_defect(std::size_t grid_points = 10000) const;

 private:
  Distortion(std::map<int, long long> coeffs, CopulaSpec copula);

  std::map<int, long long> coeffs_;
  CopulaSpec copula_;
  // flattened (j, a_j) with the u->1 derivative anchors per term
  struct Term {
    int j;
    double a;
    double slope1;      // D_j'(1)
    double curvature1;  // D_j''(1)
  };
  std::vector<Term> terms_;
  double slope_sum_ = 0.0;      // q'(1)
  double curvature_sum_ = 0.0;  // q''(1)
};

// The four distortion formulas printed in the source examples, hard-coded
// verbatim for parity checks. Theta is taken from the distortion's copula.
enum class PrintedForm {
  gumbel_3_of_4,            // 4 e^{-(3(-ln u)^t)^{1/t}} - 3 e^{-(4(-ln u)^t)^{1/t}}
  clayton_parallel_series,  // u + (3u^-t - 2)^{-1/t} - (4u^-t - 3)^{-1/t}
  clayton_2_of_3,           // 3(2u^-t - 1)^{-1/t} - 2(3u^-t - 2)^{-1/t}
  clayton_3_of_4,           // 4(3u^-t - 2)^{-1/t} - 3(4u^-t - 3)^{-1/t}
};

double printed_form_value(PrintedForm form, double theta, double u);

// Max |q - printed| over the grid.
double check_closed_form(const Distortion& d, PrintedForm form,
                         std::span<const double> u_grid);

}  // namespace redsys

#endif  // REDSYS_STRUCTURE_HPP
