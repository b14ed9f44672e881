#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "redsys/presets.hpp"
#include "redsys/sampling.hpp"

using namespace redsys;

namespace {

ComponentLevelSystem ex31_system_a() {
  return std::get<ComponentLevelSystem>(
      example_preset("ex3.1").scenario.build(0));
}

}  // namespace

TEST_CASE("grid transform x = -ln y") {
  const Grid g = Grid::make({2000, 1e-4, 0.9999});
  CHECK(g.size() == 2000);
  CHECK(g.y.front() == doctest::Approx(0.9999).epsilon(1e-15));
  CHECK(g.y.back() == doctest::Approx(1e-4).epsilon(1e-15));
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(g.x[i] == doctest::Approx(-std::log(g.y[i])).epsilon(1e-15));
  for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g.x[i] < g.x[i + 1]);
  CHECK_THROWS_AS(Grid::make({1, 0.1, 0.9}), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make({10, 0.0, 0.9}), std::invalid_argument);
}

TEST_CASE("component-level boundaries and degenerate cases") {
  const auto sys = ex31_system_a();
  CHECK(sys.sf(0.0) == 1.0);
  CHECK(sys.cdf(0.0) == 0.0);

  // single component, no spares: q(u) = u, so the system is its marginal
  const auto single = CoherentStructure::series(1);
  ComponentLevelSystem one(single, CopulaFamily::gumbel, 3.0, Family::lomax,
                           {0.7});
  LifetimeModel marginal(Family::lomax, 0.7);
  for (double t : {0.1, 0.8, 2.5, 7.0}) {
    CHECK(one.sf(t) == doctest::Approx(marginal.sf(t)).epsilon(1e-14));
    CHECK(one.pdf(t) == doctest::Approx(marginal.pdf(t)).epsilon(1e-12));
    CHECK(one.rev_hazard(t) ==
          doctest::Approx(marginal.rev_hazard(t)).epsilon(1e-12));
  }
}

TEST_CASE("n=1 component-level and system-level compositions coincide") {
  const auto single = CoherentStructure::series(1);
  ComponentLevelSystem c(single, CopulaFamily::clayton, 4.0, Family::weibull,
                         {1.1, 0.6});
  // m = 0 at system level with the same marginal: one dependent subsystem
  SystemLevelSystem s(single, CopulaFamily::clayton, {4.0, 4.0},
                      Family::weibull, {1.1, 0.6});
  // with n = 1 both reduce to a parallel pair of the two members
  const Grid g = Grid::make({200, 1e-3, 0.999});
  for (double t : g.x)
    CHECK(std::abs(c.sf(t) - s.sf(t)) <= 1e-12);
}

TEST_CASE("system-level m=0 reduces to q(marginal sf)") {
  const auto p34 = CoherentStructure::k_out_of_n(3, 4);
  SystemLevelSystem s(p34, CopulaFamily::gumbel, {20.0}, Family::lomax, {1.2});
  const auto d = Distortion::make(p34, {CopulaFamily::gumbel, 20.0, 4});
  LifetimeModel m(Family::lomax, 1.2);
  for (double t : {0.2, 1.0, 3.0}) {
    CHECK(s.sf(t) == doctest::Approx(d.q(m.sf(t))).epsilon(1e-13));
  }
  CHECK(s.sf(0.0) == 1.0);
}

TEST_CASE("pdf matches the slope of sf (both compositions)") {
  Rng rng(5);
  const auto a = ex31_system_a();
  for (int i = 0; i < 100; ++i) {
    const double t = 0.05 + 8.0 * rng.uniform();
    const double fd = -central_derivative([&](double x) { return a.sf(x); }, t);
    if (std::abs(fd) < 1e-12) continue;
    CHECK(a.pdf(t) == doctest::Approx(fd).epsilon(1e-5));
  }
  const auto sys42 = std::get<SystemLevelSystem>(
      example_preset("ex4.2").scenario.build(0));
  for (int i = 0; i < 100; ++i) {
    const double t = 0.05 + 8.0 * rng.uniform();
    const double fd =
        -central_derivative([&](double x) { return sys42.sf(x); }, t);
    if (std::abs(fd) < 1e-12) continue;
    CHECK(sys42.pdf(t) == doctest::Approx(fd).epsilon(1e-5));
  }
}

TEST_CASE("component-level density integrates to one (ex3.7 spec)") {
  const auto sys = std::get<ComponentLevelSystem>(
      example_preset("ex3.7").scenario.build(0));
  double hi = 1.0;
  while (sys.sf(hi) > 1e-6) hi *= 2.0;
  double total = 0.0, lo = 1e-4, span = 0.5;
  while (lo < hi) {
    const double up = std::min(hi, lo + span);
    total += integrate([&](double t) { return sys.pdf(t); }, lo, up, 1e-7);
    lo = up;
    span *= 2.0;
  }
  // remaining mass: the left tail below 1e-4 and the right tail past hi
  CHECK(total == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("reversed hazard and hazard equal their pdf/cdf definitions") {
  Rng rng(23);
  const auto c = std::get<ComponentLevelSystem>(
      example_preset("ex3.8").scenario.build(0));
  const auto s = std::get<SystemLevelSystem>(
      example_preset("ex4.4").scenario.build(0));
  for (int i = 0; i < 100; ++i) {
    const double t = 0.05 + 8.0 * rng.uniform();
    CHECK(c.rev_hazard(t) ==
          doctest::Approx(c.pdf(t) / c.cdf(t)).epsilon(1e-9));
    CHECK(c.hazard(t) == doctest::Approx(c.pdf(t) / c.sf(t)).epsilon(1e-9));
    const double ts = s.support_start() + 0.05 + 8.0 * rng.uniform();
    CHECK(s.rev_hazard(ts) ==
          doctest::Approx(s.pdf(ts) / s.cdf(ts)).epsilon(1e-9));
    CHECK(s.hazard(ts) == doctest::Approx(s.pdf(ts) / s.sf(ts)).epsilon(1e-9));
  }
}

TEST_CASE("sf curves are monotone in [0,1] and decay") {
  for (const char* id : {"ex3.1", "ex3.2", "ex3.8", "ex4.2", "ex4.3"}) {
    const auto preset = example_preset(id);
    for (std::size_t i = 0; i < preset.scenario.systems.size(); ++i) {
      const AnySystem sys = preset.scenario.build(i);
      const Grid g = Grid::make({500, 1e-6, 1.0 - 1e-6});
      const auto curve = evaluate_curve(sys, g, Quantity::sf);
      const auto mono = check_monotone(curve.values);
      CHECK(mono.nonincreasing);
      CHECK(curve.values.front() >= 0.99);
      CHECK(curve.values.back() < curve.values.front());
      for (double v : curve.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
  // a light-tailed spec reaches its limit at modest times
  const AnySystem fast = example_preset("ex3.8").scenario.build(0);
  CHECK(sf(fast, 50.0) < 1e-6);
  CHECK(sf(fast, 0.0) == 1.0);
}

TEST_CASE("parallel curve evaluation is bitwise identical to serial") {
  const auto sys = AnySystem(ex31_system_a());
  const Grid g = Grid::make({3000, 1e-4, 0.9999});
  const auto a = evaluate_curve(sys, g, Quantity::sf, Exec::serial);
  const auto b = evaluate_curve(sys, g, Quantity::sf, Exec::parallel);
  REQUIRE(a.values.size() == b.values.size());
  CHECK(std::memcmp(a.values.data(), b.values.data(),
                    a.values.size() * sizeof(double)) == 0);
}

TEST_CASE("derivative evaluations outside the support are errors") {
  const auto sys = std::get<SystemLevelSystem>(
      example_preset("ex4.4").scenario.build(0));
  CHECK(sys.support_start() == doctest::Approx(0.5));
  CHECK(sys.sf(0.2) == 1.0);
  CHECK(sys.cdf(0.2) == 0.0);
  CHECK_THROWS_AS(sys.pdf(0.2), std::domain_error);
  CHECK_THROWS_AS(sys.rev_hazard(0.2), std::domain_error);
}

TEST_CASE("survival curve emission formats") {
  const auto sys = AnySystem(ex31_system_a());
  const Grid g = Grid::make({5, 0.2, 0.8});
  const auto curve = evaluate_curve(sys, g, Quantity::sf);
  {
    std::ostringstream os;
    curve.write_csv(os);
    CHECK(os.str().starts_with("y,x,value\n"));
  }
  {
    std::ostringstream os;
    curve.write_json(os);
    CHECK(os.str().find("\"value\":[") != std::string::npos);
  }
}
