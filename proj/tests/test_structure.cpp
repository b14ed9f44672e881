#include <doctest.h>

#include <cmath>
#include <set>

#include "redsys/numerics.hpp"
#include "redsys/sampling.hpp"
#include "redsys/structure.hpp"

using namespace redsys;

namespace {

CoherentStructure random_structure(Rng& rng) {
  for (;;) {
    const int n = 2 + static_cast<int>(rng.uniform() * 5);
    std::vector<std::vector<int>> paths;
    const int tries = 1 + static_cast<int>(rng.uniform() * 5);
    auto nested = [](const std::vector<int>& a, const std::vector<int>& b) {
      const std::set<int> sa(a.begin(), a.end()), sb(b.begin(), b.end());
      return std::includes(sa.begin(), sa.end(), sb.begin(), sb.end()) ||
             std::includes(sb.begin(), sb.end(), sa.begin(), sa.end());
    };
    for (int t = 0; t < tries; ++t) {
      std::vector<int> p;
      for (int c = 1; c <= n; ++c)
        if (rng.uniform() < 0.5) p.push_back(c);
      if (p.empty() || static_cast<int>(p.size()) == n) continue;
      bool ok = true;
      for (const auto& q : paths) ok &= !nested(p, q);
      if (ok) paths.push_back(p);
    }
    std::set<int> covered;
    for (const auto& p : paths) covered.insert(p.begin(), p.end());
    std::vector<int> missing;
    for (int c = 1; c <= n; ++c)
      if (!covered.contains(c)) missing.push_back(c);
    if (!missing.empty()) paths.push_back(missing);
    if (paths.empty()) continue;
    try {
      return CoherentStructure::from_path_sets(n, paths);
    } catch (const std::invalid_argument&) {
      continue;
    }
  }
}

}  // namespace

TEST_CASE("distortion coefficients: printed structures") {
  using Coeffs = std::map<int, long long>;
  CHECK(distortion_coefficients(CoherentStructure::k_out_of_n(3, 4)) ==
        Coeffs{{3, 4}, {4, -3}});
  CHECK(distortion_coefficients(
            CoherentStructure::from_path_sets(4, {{1}, {2, 3, 4}})) ==
        Coeffs{{1, 1}, {3, 1}, {4, -1}});
  CHECK(distortion_coefficients(CoherentStructure::k_out_of_n(2, 3)) ==
        Coeffs{{2, 3}, {3, -2}});
  CHECK(distortion_coefficients(CoherentStructure::series(3)) ==
        Coeffs{{3, 1}});
}

TEST_CASE("coefficients sum to one on random structures") {
  Rng rng(2024);
  for (int i = 0; i < 100; ++i) {
    const auto s = random_structure(rng);
    const auto a = distortion_coefficients(s);
    long long sum = 0;
    for (const auto& [j, c] : a) sum += c;
    CHECK(sum == 1);
  }
}

TEST_CASE("structure validation errors") {
  CHECK_THROWS_AS(CoherentStructure::from_path_sets(3, {{1, 2}, {1, 2, 3}}),
                  std::invalid_argument);  // nested
  CHECK_THROWS_AS(CoherentStructure::from_path_sets(3, {{1, 2}}),
                  std::invalid_argument);  // component 3 irrelevant
  CHECK_THROWS_AS(CoherentStructure::from_path_sets(3, {{}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(CoherentStructure::from_path_sets(2, {{1, 3}}),
                  std::invalid_argument);  // id out of range
  // enumeration bound
  CHECK_THROWS_AS(distortion_coefficients(CoherentStructure::k_out_of_n(2, 8)),
                  std::invalid_argument);
}

TEST_CASE("q fixed values and boundaries") {
  const auto d23 = Distortion::make(CoherentStructure::k_out_of_n(2, 3),
                                    {CopulaFamily::clayton, 1.0, 3});
  // 3(2*2-1)^-1 - 2(3*2-2)^-1 = 1 - 1/2
  CHECK(d23.q(0.5) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(d23.q(0.0) == 0.0);
  CHECK(d23.q(1.0) == 1.0);

  const auto d34 = Distortion::make(CoherentStructure::k_out_of_n(3, 4),
                                    {CopulaFamily::gumbel, 1.0, 4});
  CHECK(d34.q(0.9) ==
        doctest::Approx(4 * std::pow(0.9, 3) - 3 * std::pow(0.9, 4))
            .epsilon(1e-14));
}

TEST_CASE("closed-form parity with the printed distortions") {
  const auto grid = linspace(1e-4, 1.0 - 1e-4, 1000);
  const auto p34 = CoherentStructure::k_out_of_n(3, 4);
  const auto p23 = CoherentStructure::k_out_of_n(2, 3);
  const auto mixed = CoherentStructure::from_path_sets(4, {{1}, {2, 3, 4}});

  CHECK(check_closed_form(
            Distortion::make(p34, {CopulaFamily::gumbel, 20.0, 4}),
            PrintedForm::gumbel_3_of_4, grid) < 1e-12);
  CHECK(check_closed_form(
            Distortion::make(mixed, {CopulaFamily::clayton, 15.0, 4}),
            PrintedForm::clayton_parallel_series, grid) < 1e-12);
  CHECK(check_closed_form(
            Distortion::make(p23, {CopulaFamily::clayton, 15.0, 3}),
            PrintedForm::clayton_2_of_3, grid) < 1e-12);
  CHECK(check_closed_form(
            Distortion::make(p34, {CopulaFamily::clayton, 8.5, 4}),
            PrintedForm::clayton_3_of_4, grid) < 1e-12);
  // a wrong structure must not match
  CHECK(check_closed_form(
            Distortion::make(CoherentStructure::series(4),
                             {CopulaFamily::clayton, 8.5, 4}),
            PrintedForm::clayton_3_of_4, grid) > 1e-2);
}

TEST_CASE("q derivatives agree with central differences") {
  Rng rng(31);
  const auto p34 = CoherentStructure::k_out_of_n(3, 4);
  const auto mixed = CoherentStructure::from_path_sets(4, {{1}, {2, 3, 4}});
  const Distortion cases[] = {
      Distortion::make(p34, {CopulaFamily::gumbel, 20.0, 4}),
      Distortion::make(p34, {CopulaFamily::clayton, 8.5, 4}),
      Distortion::make(mixed, {CopulaFamily::clayton, 6.0, 4}),
      Distortion::make(p34, {CopulaFamily::fgm, 0.7, 4}),
      Distortion::make(p34, {CopulaFamily::clayton, -0.4, 4}),
  };
  for (const auto& d : cases) {
    for (int i = 0; i < 60; ++i) {
      const double u = 0.05 + 0.9 * rng.uniform();
      const double fd =
          central_derivative([&](double x) { return d.q(x); }, u);
      CHECK(d.q_prime(u) == doctest::Approx(fd).epsilon(1e-6));
      const double fd2 =
          central_derivative([&](double x) { return d.q_prime(x); }, u);
      if (std::abs(fd2) > 1e-9)
        CHECK(d.q_second(u) == doctest::Approx(fd2).epsilon(1e-5));
    }
    CHECK(d.monotonicity_defect(10000) <= 1e-9);
  }
}

TEST_CASE("independence reduces q to the reliability polynomial") {
  Rng rng(77);
  const auto p34 = CoherentStructure::k_out_of_n(3, 4);
  const auto d_g = Distortion::make(p34, {CopulaFamily::gumbel, 1.0, 4});
  const auto d_f = Distortion::make(p34, {CopulaFamily::fgm, 0.0, 4});
  for (int i = 0; i < 200; ++i) {
    const double u = rng.uniform();
    double poly = 0.0;
    for (const auto& [j, a] : d_g.coefficients())
      poly += static_cast<double>(a) * std::pow(u, j);
    CHECK(std::abs(d_g.q(u) - poly) <= 1e-14);
    CHECK(std::abs(d_f.q(u) - poly) <= 1e-14);
  }
}

TEST_CASE("distortion construction errors") {
  const CopulaSpec c{CopulaFamily::clayton, 2.0, 3};
  CHECK_THROWS_AS(Distortion::from_coefficients({{2, 3}, {3, -1}}, c),
                  std::invalid_argument);  // sums to 2
  CHECK_THROWS_AS(Distortion::from_coefficients({{4, 1}}, c),
                  std::invalid_argument);  // j beyond dim
  CHECK_THROWS_AS(
      Distortion::make(CoherentStructure::k_out_of_n(2, 4), c),
      std::invalid_argument);  // dim below structure size
}
