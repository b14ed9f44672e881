// Compares the serial reference paths against the OpenMP kernels and checks
// that both produce identical bits.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "redsys/montecarlo.hpp"
#include "redsys/presets.hpp"

using namespace redsys;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best,
                    std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void report(const char* name, double serial_ms, double parallel_ms,
            bool identical) {
  std::printf("%-28s %10.2f ms %10.2f ms %8.2fx   %s\n", name, serial_ms,
              parallel_ms, serial_ms / parallel_ms,
              identical ? "bitwise equal" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "openmp",
              "speedup", "check");

  {
    const auto preset = example_preset("ex3.1");
    const AnySystem sys = preset.scenario.build(0);
    const Grid grid = Grid::make({20000, 1e-4, 0.9999});
    SurvivalCurve serial, parallel;
    const double ts = time_ms(
        [&] { serial = evaluate_curve(sys, grid, Quantity::sf, Exec::serial); });
    const double tp = time_ms([&] {
      parallel = evaluate_curve(sys, grid, Quantity::sf, Exec::parallel);
    });
    report("sf curve (20k points)", ts, tp,
           std::memcmp(serial.values.data(), parallel.values.data(),
                       serial.values.size() * sizeof(double)) == 0);
  }

  {
    const auto preset = example_preset("ex3.1");
    const auto sys =
        std::get<ComponentLevelSystem>(preset.scenario.build(0));
    const Grid grid = Grid::make({20, 1e-4, 0.9999});
    McEstimate serial, parallel;
    const double ts = time_ms(
        [&] { serial = simulate_component_level(sys, grid, 200000, 7,
                                                Exec::serial); },
        1);
    const double tp = time_ms(
        [&] { parallel = simulate_component_level(sys, grid, 200000, 7,
                                                  Exec::parallel); },
        1);
    report("component MC (2e5 draws)", ts, tp,
           serial.estimates == parallel.estimates);
  }

  {
    const auto preset = example_preset("ex4.2");
    const auto sys = std::get<SystemLevelSystem>(preset.scenario.build(0));
    const Grid grid = Grid::make({20, 1e-4, 0.9999});
    McEstimate serial, parallel;
    const double ts = time_ms(
        [&] { serial = simulate_system_level(sys, grid, 100000, 11,
                                             Exec::serial); },
        1);
    const double tp = time_ms(
        [&] { parallel = simulate_system_level(sys, grid, 100000, 11,
                                               Exec::parallel); },
        1);
    report("system MC (1e5 draws)", ts, tp,
           serial.estimates == parallel.estimates);
  }

  return 0;
}
