#include <CLI11.hpp>

#include "redsys/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "redsys: reliability of coherent systems with dependent components "
      "and active redundancies"};
  app.require_subcommand(1);

  redsys::cli::Options opts;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::size_t grid_points = 0;

  auto add_common = [&](CLI::App* sub, bool needs_scenario) {
    if (needs_scenario)
      sub->add_option("--scenario", opts.scenario_path,
                      "scenario JSON file")->required();
    sub->add_option("--out", opts.out_path, "output path")->required();
    sub->add_option("--grid", grid_points, "override grid point count");
    sub->add_option("--format", opts.format, "csv or json");
  };

  add_common(app.add_subcommand(
                 "distortion", "emit q, q', q'' and the ratio curves R1-R4"),
             true);
  add_common(app.add_subcommand(
                 "eval", "emit sf/cdf/pdf/hazard/rev-hazard curves"),
             true);
  add_common(app.add_subcommand(
                 "compare", "order verdict JSON plus ratio curves"),
             true);
  add_common(app.add_subcommand(
                 "verify", "theorem certificate JSON (scenario sets theorem)"),
             true);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate CSV");
  add_common(sim, true);
  sim->add_option("--seed", seed, "RNG seed (required)")
      ->required()
      ->each([&](const std::string&) { seed_set = true; });
  sim->add_option("--samples", opts.samples, "number of draws");
  add_common(app.add_subcommand(
                 "allocate", "rank spare allocations (scenario sets pool)"),
             true);
  auto* ex = app.add_subcommand("example",
                                "reproduce a source example as data");
  ex->add_option("id", opts.example_id, "example id, ex3.1 .. ex4.4")
      ->required();
  add_common(ex, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : redsys::cli::kValidationError;
  }

  opts.command = app.get_subcommands().front()->get_name();
  if (grid_points > 0) opts.grid_points = grid_points;
  if (seed_set) opts.seed = seed;
  return redsys::cli::run(opts);
}
