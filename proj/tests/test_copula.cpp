#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "redsys/copula.hpp"
#include "redsys/numerics.hpp"
#include "redsys/sampling.hpp"

using namespace redsys;

namespace {

// Kendall tau via inversion counting (merge sort), O(n log n).
long long count_inversions(std::vector<double>& v, std::vector<double>& buf,
                           std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = (lo + hi) / 2;
  long long inv = count_inversions(v, buf, lo, mid) +
                  count_inversions(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[i] <= v[j])
      buf[k++] = v[i++];
    else {
      inv += mid - i;
      buf[k++] = v[j++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return inv;
}

double kendall_tau(const std::vector<double>& rows, int dim, int c1, int c2) {
  const std::size_t n = rows.size() / dim;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return rows[a * dim + c1] < rows[b * dim + c1];
  });
  std::vector<double> second(n), buf(n);
  for (std::size_t i = 0; i < n; ++i) second[i] = rows[idx[i] * dim + c2];
  const long long inv = count_inversions(second, buf, 0, n);
  const double pairs = 0.5 * n * (n - 1.0);
  return 1.0 - 2.0 * inv / pairs;
}

double empirical_joint(const std::vector<double>& rows, int dim, double u0) {
  const std::size_t n = rows.size() / dim;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < n; ++r) {
    bool all = true;
    for (int c = 0; c < dim; ++c) all &= rows[r * dim + c] <= u0;
    hits += all;
  }
  return static_cast<double>(hits) / n;
}

double ks_statistic(std::vector<double> coord) {
  std::sort(coord.begin(), coord.end());
  const std::size_t n = coord.size();
  double ks = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = static_cast<double>(i + 1) / n;
    ks = std::max(ks, std::abs(coord[i] - e));
    ks = std::max(ks, std::abs(coord[i] - static_cast<double>(i) / n));
  }
  return ks;
}

}  // namespace

TEST_CASE("partial diagonal fixed values") {
  CHECK(partial_diagonal({CopulaFamily::clayton, 1.0, 2}, 2, 0.5) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // Gumbel at theta = 1 is independence
  CHECK(partial_diagonal({CopulaFamily::gumbel, 1.0, 3}, 3, 0.7) ==
        doctest::Approx(0.343).epsilon(1e-12));
  CHECK(partial_diagonal({CopulaFamily::fgm, 1.0, 2}, 2, 0.5) ==
        doctest::Approx(0.3125).epsilon(1e-14));
  CHECK(partial_diagonal({CopulaFamily::clayton, 2.0, 2}, 2, 0.5) ==
        doctest::Approx(1.0 / std::sqrt(7.0)).epsilon(1e-14));
  // uniform margin and empty selection
  for (CopulaFamily f :
       {CopulaFamily::clayton, CopulaFamily::gumbel, CopulaFamily::fgm}) {
    const double theta = f == CopulaFamily::gumbel ? 2.5 : 0.8;
    CHECK(partial_diagonal({f, theta, 4}, 1, 0.42) ==
          doctest::Approx(0.42).epsilon(1e-14));
    CHECK(partial_diagonal({f, theta, 4}, 0, 0.42) == 1.0);
    CHECK(partial_diagonal({f, theta, 4}, 3, 0.0) == 0.0);
    CHECK(partial_diagonal({f, theta, 4}, 3, 1.0) == 1.0);
  }
}

TEST_CASE("diagonal bounds and monotonicity") {
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    CopulaFamily f = static_cast<CopulaFamily>(trial % 3);
    double theta;
    switch (f) {
      case CopulaFamily::clayton: theta = 0.2 + 10.0 * rng.uniform(); break;
      case CopulaFamily::gumbel: theta = 1.0 + 14.0 * rng.uniform(); break;
      default: theta = -1.0 + 2.0 * rng.uniform();
    }
    const int n = 2 + static_cast<int>(rng.uniform() * 4);
    const CopulaSpec spec{f, theta, n};
    const double u = rng.uniform();
    double prev = 2.0;
    for (int j = 1; j <= n; ++j) {
      const double d = partial_diagonal(spec, j, u);
      CHECK(d <= u + 1e-12);
      CHECK(d >= std::max(j * u - (j - 1.0), 0.0) - 1e-12);
      CHECK(d <= prev + 1e-12);  // nonincreasing in j
      prev = d;
    }
    const double u2 = std::min(1.0, u + 0.05);
    CHECK(partial_diagonal(spec, n, u2) >=
          partial_diagonal(spec, n, u) - 1e-12);
  }
}

TEST_CASE("Clayton diagonal converges to independence as theta -> 0+") {
  const CopulaSpec spec{CopulaFamily::clayton, 1e-6, 4};
  for (double u : {0.1, 0.35, 0.8}) {
    for (int j = 2; j <= 4; ++j)
      CHECK(partial_diagonal(spec, j, u) ==
            doctest::Approx(std::pow(u, j)).epsilon(1e-4));
  }
}

TEST_CASE("diagonal value/complement consistency") {
  Rng rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    CopulaFamily f = static_cast<CopulaFamily>(trial % 3);
    const double theta = f == CopulaFamily::gumbel
                             ? 1.0 + 20.0 * rng.uniform()
                             : (f == CopulaFamily::clayton
                                    ? 0.5 + 15.0 * rng.uniform()
                                    : -1.0 + 2.0 * rng.uniform());
    const CopulaSpec spec{f, theta, 4};
    const double u = rng.uniform();
    const double w = 1.0 - u;
    for (int j = 1; j <= 4; ++j) {
      const double d = partial_diagonal2(spec, j, u, w);
      const double cd = partial_diagonal_complement2(spec, j, u, w);
      CHECK(d + cd == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("diagonal derivatives match central differences") {
  Rng rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    CopulaFamily f = static_cast<CopulaFamily>(trial % 3);
    const double theta = f == CopulaFamily::gumbel
                             ? 1.0 + 24.0 * rng.uniform()
                             : (f == CopulaFamily::clayton
                                    ? (trial % 6 < 3 ? 0.3 + 14.0 * rng.uniform()
                                                     : -0.4 * rng.uniform() - 0.1)
                                    : -1.0 + 2.0 * rng.uniform());
    const int n = 2 + static_cast<int>(rng.uniform() * 3);
    const CopulaSpec spec{f, theta, n};
    const double u = 0.05 + 0.9 * rng.uniform();
    for (int j = 1; j <= n; ++j) {
      double d1;
      try {
        d1 = partial_diagonal_d1(spec, j, u, 1.0 - u);
      } catch (const std::domain_error&) {
        continue;  // grounded Clayton region
      }
      const double fd = central_derivative(
          [&](double x) { return partial_diagonal2(spec, j, x, 1.0 - x); },
          u);
      CHECK(d1 == doctest::Approx(fd).epsilon(1e-6));
      const double d2 = partial_diagonal_d2(spec, j, u, 1.0 - u);
      const double fd2 = central_derivative(
          [&](double x) {
            return partial_diagonal_d1(spec, j, x, 1.0 - x);
          },
          u);
      if (std::abs(fd2) > 1e-9)
        CHECK(d2 == doctest::Approx(fd2).epsilon(1e-5));
    }
  }
}

TEST_CASE("parameter range errors") {
  CHECK_THROWS_AS(partial_diagonal({CopulaFamily::clayton, 0.0, 3}, 1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_diagonal({CopulaFamily::gumbel, 0.9, 3}, 1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_diagonal({CopulaFamily::fgm, 1.5, 3}, 1, 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(partial_diagonal({CopulaFamily::clayton, 2.0, 3}, 4, 0.5),
                  std::domain_error);
  // grounded region for negative theta
  CHECK_THROWS_AS(partial_diagonal({CopulaFamily::clayton, -0.5, 2}, 2, 0.1),
                  std::domain_error);
}

TEST_CASE("samplers: marginals, dependence and determinism") {
  const std::size_t n_draws = 100000;

  SUBCASE("uniform marginals (KS below the 1% critical value)") {
    for (CopulaSpec spec : {CopulaSpec{CopulaFamily::clayton, 2.0, 3},
                            CopulaSpec{CopulaFamily::gumbel, 2.5, 3},
                            CopulaSpec{CopulaFamily::fgm, -0.7, 3}}) {
      const auto rows = sample_copula(spec, n_draws, 99);
      for (int c = 0; c < spec.dim; ++c) {
        std::vector<double> coord(n_draws);
        for (std::size_t r = 0; r < n_draws; ++r)
          coord[r] = rows[r * spec.dim + c];
        CHECK(ks_statistic(std::move(coord)) <
              1.63 / std::sqrt(static_cast<double>(n_draws)));
      }
    }
  }

  SUBCASE("Gumbel theta=1 is independence (Kendall tau near 0)") {
    const CopulaSpec spec{CopulaFamily::gumbel, 1.0, 3};
    const auto rows = sample_copula(spec, n_draws, 7);
    for (auto [a, b] : {std::pair{0, 1}, {0, 2}, {1, 2}})
      CHECK(std::abs(kendall_tau(rows, 3, a, b)) < 0.01);
  }

  SUBCASE("joint probabilities match the diagonal closed forms") {
    struct Case {
      CopulaSpec spec;
      double u0;
    };
    for (const Case& c : {Case{{CopulaFamily::clayton, 2.0, 2}, 0.5},
                          Case{{CopulaFamily::fgm, 1.0, 2}, 0.5},
                          Case{{CopulaFamily::gumbel, 20.0, 4}, 0.6},
                          Case{{CopulaFamily::clayton, 8.5, 4}, 0.7}}) {
      const auto rows = sample_copula(c.spec, n_draws, 7);
      const double expect =
          partial_diagonal(c.spec, c.spec.dim, c.u0);
      const double got = empirical_joint(rows, c.spec.dim, c.u0);
      const double se = std::sqrt(expect * (1 - expect) / n_draws);
      CHECK(std::abs(got - expect) < 4 * se);
    }
  }

  SUBCASE("fixed seed reproduces, different seed does not") {
    const CopulaSpec spec{CopulaFamily::clayton, 3.0, 2};
    const auto a = sample_copula(spec, 10000, 123);
    const auto b = sample_copula(spec, 10000, 123);
    const auto c = sample_copula(spec, 10000, 124);
    CHECK(a == b);
    CHECK(a != c);
  }

  SUBCASE("negative-theta Clayton sampling is unsupported") {
    CHECK_THROWS_AS(sample_copula({CopulaFamily::clayton, -0.5, 2}, 10000, 1),
                    std::invalid_argument);
  }
}
