#include "redsys/structure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "redsys/numerics.hpp"

namespace redsys {

CoherentStructure CoherentStructure::k_out_of_n(int k, int n) {
  if (k < 1 || n < 1 || k > n)
    throw std::invalid_argument("k_out_of_n requires 1 <= k <= n");
  CoherentStructure s;
  s.n = n;
  std::vector<int> pick(k);
  // all k-subsets of {1..n}
  for (int i = 0; i < k; ++i) pick[i] = i + 1;
  for (;;) {
    s.min_path_sets.push_back(pick);
    int i = k - 1;
    while (i >= 0 && pick[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  s.validate();
  return s;
}

CoherentStructure CoherentStructure::from_path_sets(
    int n, std::vector<std::vector<int>> paths) {
  CoherentStructure s;
  s.n = n;
  s.min_path_sets = std::move(paths);
  for (auto& p : s.min_path_sets) std::sort(p.begin(), p.end());
  s.validate();
  return s;
}

CoherentStructure CoherentStructure::series(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return from_path_sets(n, {all});
}

void CoherentStructure::validate() const {
  if (n < 1 || n > 64) throw std::invalid_argument("n must lie in [1,64]");
  if (min_path_sets.empty())
    throw std::invalid_argument("at least one path set required");
  if (min_path_sets.size() > kMaxPathSets)
    throw std::invalid_argument("too many path sets (bound: 25)");
  std::uint64_t cover = 0;
  std::vector<std::uint64_t> masks;
  for (const auto& p : min_path_sets) {
    if (p.empty()) throw std::invalid_argument("empty path set");
    std::uint64_t m = 0;
    for (int c : p) {
      if (c < 1 || c > n)
        throw std::invalid_argument("path set component id outside 1..n");
      const std::uint64_t bit = 1ULL << (c - 1);
      if (m & bit) throw std::invalid_argument("duplicate component in path set");
      m |= bit;
    }
    masks.push_back(m);
    cover |= m;
  }
  for (std::size_t i = 0; i < masks.size(); ++i)
    for (std::size_t k = i + 1; k < masks.size(); ++k) {
      const std::uint64_t both = masks[i] & masks[k];
      if (both == masks[i] || both == masks[k])
        throw std::invalid_argument("path sets must be pairwise non-nested");
    }
  if (cover != (n == 64 ? ~0ULL : (1ULL << n) - 1))
    throw std::invalid_argument(
        "every component must appear in some minimal path set");
}

namespace {

void expand(const std::vector<std::uint64_t>& masks, std::size_t i,
            std::uint64_t uni, int chosen, std::map<int, long long>& acc) {
  if (i == masks.size()) {
    if (chosen > 0) acc[std::popcount(uni)] += (chosen % 2 == 1) ? 1 : -1;
    return;
  }
  expand(masks, i + 1, uni, chosen, acc);
  expand(masks, i + 1, uni | masks[i], chosen + 1, acc);
}

}  // namespace

std::map<int, long long> distortion_coefficients(const CoherentStructure& s) {
  s.validate();
  std::vector<std::uint64_t> masks;
  for (const auto& p : s.min_path_sets) {
    std::uint64_t m = 0;
    for (int c : p) m |= 1ULL << (c - 1);
    masks.push_back(m);
  }
  std::map<int, long long> acc;
  expand(masks, 0, 0, 0, acc);
  long long total = 0;
  for (auto it = acc.begin(); it != acc.end();) {
    total += it->second;
    it = it->second == 0 ? acc.erase(it) : std::next(it);
  }
  if (total != 1)
    throw std::logic_error("inclusion-exclusion coefficients do not sum to 1");
  return acc;
}

Distortion::Distortion(std::map<int, long long> coeffs, CopulaSpec copula)
    : coeffs_(std::move(coeffs)), copula_(copula) {
  copula_.validate();
  long long total = 0;
  for (const auto& [j, a] : coeffs_) {
    if (j < 1 || j > copula_.dim)
      throw std::invalid_argument("coefficient subset size outside 1..dim");
    total += a;
    Term t;
    t.j = j;
    t.a = static_cast<double>(a);
    t.slope1 = diagonal_slope_at_one(copula_, j);
    t.curvature1 = diagonal_curvature_at_one(copula_, j);
    terms_.push_back(t);
    slope_sum_ += t.a * t.slope1;
    curvature_sum_ += t.a * t.curvature1;
  }
  if (total != 1)
    throw std::invalid_argument("distortion coefficients must sum to 1");
}

Distortion Distortion::make(const CoherentStructure& s,
                            const CopulaSpec& copula) {
  // dim > n only for the degenerate single-component structure, where the
  // copula never enters (q(u) = u)
  if (copula.dim < s.n)
    throw std::invalid_argument("copula dimension must cover the structure");
  return Distortion(distortion_coefficients(s), copula);
}

Distortion Distortion::from_coefficients(std::map<int, long long> coeffs,
                                         const CopulaSpec& copula) {
  return Distortion(std::move(coeffs), copula);
}

double Distortion::q2(double u, double w) const {
  if (!(u >= 0.0) || !(w <= 1.0)) throw std::domain_error("u outside [0,1]");
  if (u > 0.5) return 1.0 - q_bar2(u, w);
  double acc = 0.0;
  for (const Term& t : terms_)
    acc += t.a * partial_diagonal2(copula_, t.j, u, w);
  return acc;
}

double Distortion::q_bar2(double u, double w) const {
  if (!(u >= 0.0) || !(w <= 1.0)) throw std::domain_error("u outside [0,1]");
  if (u <= 0.5) {
    double acc = 0.0;
    for (const Term& t : terms_)
      acc += t.a * partial_diagonal2(copula_, t.j, u, w);
    return 1.0 - acc;
  }
  double acc = 0.0;
  for (const Term& t : terms_)
    acc += t.a * partial_diagonal_complement2(copula_, t.j, u, w);
  return acc;
}

double Distortion::q_prime2(double u, double w) const {
  const bool stable =
      copula_.family == CopulaFamily::gumbel ||
      (copula_.family == CopulaFamily::clayton && copula_.theta > 0.0);
  if (!stable || u <= 0.5) {
    double acc = 0.0;
    for (const Term& t : terms_)
      acc += t.a * partial_diagonal_d1(copula_, t.j, u, w);
    return acc;
  }
  // q'(u) = q'(1) + sum a_j D_j'(1) (D_j'(u)/D_j'(1) - 1). The anchor sum is
  // exact and each relative correction carries full precision, so the
  // structural cancellation of sum a_j D_j'(1) at u -> 1 costs no accuracy.
  double acc = slope_sum_;
  for (const Term& t : terms_)
    acc += t.a * t.slope1 * partial_diagonal_d1_rel(copula_, t.j, u, w);
  return acc;
}

double Distortion::q_second2(double u, double w) const {
  const bool stable =
      copula_.family == CopulaFamily::gumbel ||
      (copula_.family == CopulaFamily::clayton && copula_.theta > 0.0);
  if (!stable || u <= 0.5) {
    double acc = 0.0;
    for (const Term& t : terms_)
      acc += t.a * partial_diagonal_d2(copula_, t.j, u, w);
    return acc;
  }
  double acc = curvature_sum_;
  for (const Term& t : terms_) {
    if (t.curvature1 == 0.0) continue;
    acc += t.a * t.curvature1 * partial_diagonal_d2_rel(copula_, t.j, u, w);
  }
  return acc;
}

double Distortion::q_prime(double u) const {
  const double c = std::clamp(u, 1e-12, 1.0 - 1e-12);
  return q_prime2(c, 1.0 - c);
}

double Distortion::q_second(double u) const {
  const double c = std::clamp(u, 1e-12, 1.0 - 1e-12);
  return q_second2(c, 1.0 - c);
}

double Distortion::monotonicity_defect(std::size_t grid_points) const {
  std::vector<double> vals(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double u = static_cast<double>(i) / (grid_points - 1);
    vals[i] = q2(u, 1.0 - u);
  }
  return check_monotone(vals).worst_drop;
}

double printed_form_value(PrintedForm form, double theta, double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double t = theta;
  switch (form) {
    case PrintedForm::gumbel_3_of_4: {
      const double l = -std::log(u);
      return 4.0 * std::exp(-std::pow(3.0 * std::pow(l, t), 1.0 / t)) -
             3.0 * std::exp(-std::pow(4.0 * std::pow(l, t), 1.0 / t));
    }
    case PrintedForm::clayton_parallel_series:
      return u + std::pow(3.0 * std::pow(u, -t) - 2.0, -1.0 / t) -
             std::pow(4.0 * std::pow(u, -t) - 3.0, -1.0 / t);
    case PrintedForm::clayton_2_of_3:
      return 3.0 * std::pow(2.0 * std::pow(u, -t) - 1.0, -1.0 / t) -
             2.0 * std::pow(3.0 * std::pow(u, -t) - 2.0, -1.0 / t);
    case PrintedForm::clayton_3_of_4:
      return 4.0 * std::pow(3.0 * std::pow(u, -t) - 2.0, -1.0 / t) -
             3.0 * std::pow(4.0 * std::pow(u, -t) - 3.0, -1.0 / t);
  }
  throw std::logic_error("unreachable");
}

double check_closed_form(const Distortion& d, PrintedForm form,
                         std::span<const double> u_grid) {
  double worst = 0.0;
  for (double u : u_grid) {
    const double dev =
        std::abs(d.q(u) - printed_form_value(form, d.copula().theta, u));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace redsys
