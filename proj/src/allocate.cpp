#include "redsys/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace redsys {

namespace {

constexpr double kStTol = 1e-9;
constexpr double kMeanCap = 1e6;

std::vector<std::vector<int>> enumerate_subsets(int n, int m) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(m);
  for (int i = 0; i < m; ++i) pick[i] = i;
  for (;;) {
    out.push_back(pick);
    if (out.size() > 10000)
      throw std::invalid_argument("allocation enumeration bound exceeded");
    int i = m - 1;
    while (i >= 0 && pick[i] == n - (m - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < m; ++j) pick[j] = pick[j - 1] + 1;
  }
  return out;
}

AnySystem build_system(const AllocationBase& base, const SparePool& pool,
                       const std::vector<double>& b_full) {
  if (base.level == Level::component)
    return ComponentLevelSystem(base.structure, base.copula, base.theta,
                                pool.family, b_full, pool.alpha);
  return SystemLevelSystem(base.structure, base.copula,
                           std::vector<double>(b_full.size(), base.theta),
                           pool.family, b_full, pool.alpha);
}

// integral of sf from 0, truncated when sf < 1e-10 or at the cap
double mean_lifetime(const AnySystem& sys) {
  const double lead = support_start(sys);
  double hi = std::max(1.0, 2.0 * lead);
  while (sf(sys, hi) > 1e-10 && hi < kMeanCap) hi *= 2.0;
  hi = std::min(hi, kMeanCap);
  double total = lead;
  double lo = lead;
  double span = std::max(1.0, lead);
  while (lo < hi) {
    const double up = std::min(hi, lo + span);
    total += integrate([&](double t) { return sf(sys, t); }, lo, up, 1e-6);
    lo = up;
    span *= 2.0;
  }
  return total;
}

}  // namespace

AllocationReport recommend(const SparePool& pool, const AllocationBase& base,
                           const GridSpec& grid_spec, Exec exec) {
  if (pool.slots < 1 ||
      pool.candidates.size() < static_cast<std::size_t>(pool.slots))
    throw std::invalid_argument("pool must offer at least `slots` candidates");
  for (double c : pool.candidates)
    if (!(c > 0.0)) throw std::invalid_argument("candidate parameters must be > 0");

  const auto subsets =
      enumerate_subsets(static_cast<int>(pool.candidates.size()), pool.slots);
  const std::size_t k = subsets.size();
  const Grid grid = Grid::make(grid_spec);

  AllocationReport rep;
  rep.entries.resize(k);
  std::vector<std::vector<double>> curves(k);

  const std::int64_t kk = static_cast<std::int64_t>(k);
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
  for (std::int64_t i = 0; i < kk; ++i) {
    try {
      AllocationEntry& e = rep.entries[i];
      e.chosen = subsets[i];
      e.b_full.push_back(base.b0);
      for (int c : subsets[i]) e.b_full.push_back(pool.candidates[c]);
      const AnySystem sys = build_system(base, pool, e.b_full);
      e.mean_lifetime = mean_lifetime(sys);
      curves[i].resize(grid.size());
      for (std::size_t g = 0; g < grid.size(); ++g)
        curves[i][g] = sf(sys, grid.x[g]);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  // pairwise st verdicts from the precomputed curves
  rep.dominance.assign(k * k, Relation::indistinguishable);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      double dmax = -1.0, dmin = 1.0;
      for (std::size_t g = 0; g < grid.size(); ++g) {
        const double d = curves[i][g] - curves[j][g];
        dmax = std::max(dmax, d);
        dmin = std::min(dmin, d);
      }
      Relation r;
      if (dmax <= kStTol && dmin >= -kStTol)
        r = Relation::indistinguishable;
      else if (dmax <= kStTol)
        r = Relation::A_below_B;
      else if (dmin >= -kStTol)
        r = Relation::B_below_A;
      else
        r = Relation::crossing;
      rep.dominance[i * k + j] = r;
    }

  // rank by mean lifetime (stable on ties), then repair any inversion
  // against strict st dominance; dominance implies a mean gap, so the
  // repair pass only reorders near-ties
  rep.ranking.resize(k);
  for (std::size_t i = 0; i < k; ++i) rep.ranking[i] = i;
  std::stable_sort(rep.ranking.begin(), rep.ranking.end(),
                   [&](std::size_t a, std::size_t b) {
                     return rep.entries[a].mean_lifetime >
                            rep.entries[b].mean_lifetime;
                   });
  for (bool moved = true; moved;) {
    moved = false;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const std::size_t hi = rep.ranking[i], lo = rep.ranking[i + 1];
      if (rep.dominance[hi * k + lo] == Relation::A_below_B) {
        std::swap(rep.ranking[i], rep.ranking[i + 1]);
        moved = true;
      }
    }
  }

  // theorem certificates for ordered pairs whose hypotheses can hold
  const TheoremId theorem =
      base.level == Level::component ? TheoremId::T3_1 : TheoremId::T4_1;
  CheckOptions opts;
  opts.u_points = 100;
  opts.b_points = 8;
  opts.t_points = 80;
  opts.verify_points = 200;
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (!weak_supermajorize(rep.entries[j].b_full, rep.entries[i].b_full))
        continue;
      ComparisonSetup setup;
      setup.level = base.level;
      setup.family = pool.family;
      setup.alpha = pool.alpha;
      setup.structure = base.structure;
      setup.copula = base.copula;
      setup.grid = grid_spec;
      setup.theta_range = {base.theta, base.theta};
      const std::size_t m1 =
          base.level == Level::component ? 1 : rep.entries[i].b_full.size();
      setup.thetas_a.assign(m1, base.theta);
      setup.thetas_b.assign(m1, base.theta);
      setup.b_a = rep.entries[i].b_full;
      setup.b_b = rep.entries[j].b_full;
      if (base.level == Level::system) {
        // T4_1 takes both vectors in D+; the compositions are exchangeable
        // across subsystems when every theta agrees
        std::sort(setup.b_a.rbegin(), setup.b_a.rend());
        std::sort(setup.b_b.rbegin(), setup.b_b.rend());
      }
      PairCertificate pc;
      pc.a = i;
      pc.b = j;
      pc.theorem = theorem;
      pc.all_pass = check_theorem(theorem, setup, opts).all_pass;
      rep.certificates.push_back(pc);
    }
  return rep;
}

void AllocationReport::write_json(std::ostream& os) const {
  nlohmann::json j;
  const std::size_t k = entries.size();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : entries)
    j["entries"].push_back({{"chosen", e.chosen},
                            {"b", e.b_full},
                            {"mean_lifetime", e.mean_lifetime}});
  j["ranking"] = ranking;
  j["dominance"] = nlohmann::json::array();
  for (std::size_t i = 0; i < k; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < k; ++c)
      row.push_back(std::string(relation_token(dominance[i * k + c])));
    j["dominance"].push_back(row);
  }
  j["certificates"] = nlohmann::json::array();
  for (const auto& c : certificates)
    j["certificates"].push_back({{"a", c.a},
                                 {"b", c.b},
                                 {"theorem", std::string(theorem_token(c.theorem))},
                                 {"all_pass", c.all_pass}});
  os << j.dump(2) << '\n';
}

void AllocationReport::write_table(std::ostream& os) const {
  os << "rank  mean_lifetime  spares\n";
  int rank = 1;
  for (std::size_t idx : ranking) {
    const AllocationEntry& e = entries[idx];
    os << rank++ << "     " << e.mean_lifetime << "  [";
    for (std::size_t i = 1; i < e.b_full.size(); ++i)
      os << e.b_full[i] << (i + 1 < e.b_full.size() ? ", " : "");
    os << "]\n";
  }
}

}  // namespace redsys
