#include "redsys/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "redsys/sampling.hpp"

namespace redsys {

namespace {

constexpr std::size_t kChunk = 4096;

// max over path sets of min member lifetime
double structure_lifetime(const std::vector<std::vector<int>>& paths,
                          const std::vector<double>& t) {
  double best = 0.0;
  for (const auto& p : paths) {
    double lo = t[p.front()];
    for (int c : p) lo = std::min(lo, t[c]);
    best = std::max(best, lo);
  }
  return best;
}

std::vector<std::vector<int>> zero_based_paths(const CoherentStructure& s) {
  std::vector<std::vector<int>> out;
  for (const auto& p : s.min_path_sets) {
    std::vector<int> q;
    for (int c : p) q.push_back(c - 1);
    out.push_back(std::move(q));
  }
  return out;
}

// decreasing inverse of Gbar(t) = 1 - prod_j F(t;b_j): bracketed bisection,
// relative 1e-10, 200 iterations; flat stretches resolve to the infimum.
class BlockInverse {
 public:
  explicit BlockInverse(const std::vector<LifetimeModel>& members)
      : members_(members) {
    for (const auto& m : members_) lo_ = std::max(lo_, m.support_start());
  }

  double gbar(double t) const {
    double log_sum = 0.0;
    for (const auto& m : members_) log_sum += m.log_cdf(t);
    return -std::expm1(log_sum);
  }

  double operator()(double u) const {
    double lo = lo_;
    double hi = std::max(1.0, 2.0 * lo);
    int it = 0;
    while (gbar(hi) > u && it++ < 200) hi *= 2.0;
    it = 0;
    while (hi - lo > 1e-10 * std::max(1.0, hi) && it++ < 200) {
      const double mid = 0.5 * (lo + hi);
      if (gbar(mid) > u)
        lo = mid;
      else
        hi = mid;
    }
    return 0.5 * (lo + hi);
  }

 private:
  const std::vector<LifetimeModel>& members_;
  double lo_ = 0.0;
};

void check_sampler_supported(const CopulaSpec& spec) {
  if (spec.family == CopulaFamily::clayton && spec.theta < 0.0)
    throw std::invalid_argument(
        "sampling is not supported for Clayton with theta < 0");
}

McEstimate run_chunked(const Grid& grid, std::size_t n_samples,
                       std::uint64_t seed, Exec exec,
                       const std::function<double(Rng&)>& draw_lifetime) {
  if (n_samples < 10000)
    throw std::invalid_argument("simulation needs n_samples >= 10^4");
  const std::size_t k = grid.size();
  const std::size_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  // per draw we tally the first grid index the lifetime does not exceed;
  // per-chunk tallies merge in chunk order, so any thread count produces
  // bitwise identical estimates
  std::vector<std::vector<std::uint64_t>> tallies(
      n_chunks, std::vector<std::uint64_t>(k + 1, 0));

  auto run_chunk = [&](std::size_t c) {
    Rng rng(mix_seed(seed, c));
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(begin + kChunk, n_samples);
    auto& tally = tallies[c];
    for (std::size_t d = begin; d < end; ++d) {
      const double life = draw_lifetime(rng);
      const std::size_t p =
          std::lower_bound(grid.x.begin(), grid.x.end(), life) -
          grid.x.begin();
      ++tally[p];
    }
  };

  const std::int64_t nc = static_cast<std::int64_t>(n_chunks);
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nc; ++c) run_chunk(c);
  } else {
    for (std::int64_t c = 0; c < nc; ++c) run_chunk(c);
  }

  std::vector<std::uint64_t> tally(k + 1, 0);
  for (const auto& t : tallies)
    for (std::size_t i = 0; i <= k; ++i) tally[i] += t[i];
  // a draw tallied at p outlives exactly the grid points 0..p-1
  std::vector<std::uint64_t> alive(k, 0);
  std::uint64_t suffix = 0;
  for (std::size_t i = k; i-- > 0;) {
    suffix += tally[i + 1];
    alive[i] = suffix;
  }

  McEstimate est;
  est.grid = grid;
  est.n_samples = n_samples;
  est.seed = seed;
  est.estimates.resize(k);
  est.stderrs.resize(k);
  const double n = static_cast<double>(n_samples);
  for (std::size_t i = 0; i < k; ++i) {
    const double p = static_cast<double>(alive[i]) / n;
    est.estimates[i] = p;
    est.stderrs[i] = std::sqrt(p * (1.0 - p) / n);
  }
  return est;
}

}  // namespace

McEstimate simulate_component_level(const ComponentLevelSystem& sys,
                                    const Grid& grid, std::size_t n_samples,
                                    std::uint64_t seed, Exec exec) {
  if (!sys.structure())
    throw std::invalid_argument(
        "component-level simulation needs a system built from a structure");
  const CopulaSpec& spec = sys.distortion().copula();
  check_sampler_supported(spec);
  const auto paths = zero_based_paths(*sys.structure());
  const int n = sys.structure()->n;
  const BlockInverse inverse(sys.members());

  auto draw = [&, n](Rng& rng) {
    std::vector<double> u(spec.dim), t(n);
    sample_copula_row(spec, rng, u.data());
    for (int i = 0; i < n; ++i) t[i] = inverse(u[i]);
    return structure_lifetime(paths, t);
  };
  return run_chunked(grid, n_samples, seed, exec, draw);
}

McEstimate simulate_system_level(const SystemLevelSystem& sys,
                                 const Grid& grid, std::size_t n_samples,
                                 std::uint64_t seed, Exec exec) {
  const auto& distortions = sys.distortions();
  for (const auto& d : distortions) check_sampler_supported(d.copula());
  const auto paths = zero_based_paths(sys.structure());
  const int n = sys.structure().n;
  const auto& members = sys.members();

  auto draw = [&, n](Rng& rng) {
    double best = 0.0;
    std::vector<double> u(distortions.front().copula().dim), t(n);
    for (std::size_t j = 0; j < members.size(); ++j) {
      sample_copula_row(distortions[j].copula(), rng, u.data());
      for (int i = 0; i < n; ++i) t[i] = members[j].sf_inverse(u[i]);
      best = std::max(best, structure_lifetime(paths, t));
    }
    return best;
  };
  return run_chunked(grid, n_samples, seed, exec, draw);
}

void McEstimate::write_csv(std::ostream& os) const {
  os << "y,x,estimate,stderr\n";
  os.precision(17);
  for (std::size_t i = 0; i < grid.size(); ++i)
    os << grid.y[i] << ',' << grid.x[i] << ',' << estimates[i] << ','
       << stderrs[i] << '\n';
}

SurvivalCurve McEstimate::as_curve() const {
  SurvivalCurve c;
  c.grid = grid;
  c.values = estimates;
  c.stderrs = stderrs;
  c.provenance = SurvivalCurve::Provenance::monte_carlo;
  return c;
}

}  // namespace redsys
