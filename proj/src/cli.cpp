#include "redsys/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "redsys/allocate.hpp"
#include "redsys/montecarlo.hpp"
#include "redsys/presets.hpp"

namespace redsys::cli {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  os.precision(17);
  return os;
}

std::string with_suffix(const std::string& path, const std::string& tag) {
  std::filesystem::path p(path);
  const std::string ext = p.extension().string();
  p.replace_extension();
  return p.string() + tag + ext;
}

std::string ratios_path(const std::string& path) {
  std::filesystem::path p(path);
  p.replace_extension();
  return p.string() + "_ratios.csv";
}

GridSpec effective_grid(const Scenario& s, const Options& opts) {
  GridSpec g = s.grid;
  if (opts.grid_points) g.points = *opts.grid_points;
  return g;
}

int cmd_distortion(const Options& opts) {
  const Scenario s = Scenario::load(opts.scenario_path);
  const auto& sys = s.systems.at(0);
  const Distortion d = Distortion::make(
      s.structure,
      CopulaSpec{s.copula, sys.thetas.at(0), std::max(s.structure.n, 2)});
  auto os = open_out(opts.out_path);
  os << "u,q,q_prime,q_second,R1,R2,R3,R4\n";
  const std::size_t n = opts.grid_points.value_or(400);
  for (double u : linspace(0.01, 0.99, n)) {
    os << u << ',' << d.q(u) << ',' << d.q_prime(u) << ',' << d.q_second(u);
    for (RatioKind k :
         {RatioKind::R1, RatioKind::R2, RatioKind::R3, RatioKind::R4})
      os << ',' << ratio_q(k, d, u);
    os << '\n';
  }
  return kOk;
}

int cmd_eval(const Options& opts) {
  const Scenario s = Scenario::load(opts.scenario_path);
  const Grid grid = Grid::make(effective_grid(s, opts));
  for (std::size_t i = 0; i < s.systems.size(); ++i) {
    const AnySystem sys = s.build(i);
    const std::string path =
        s.systems.size() > 1
            ? with_suffix(opts.out_path, i == 0 ? "_A" : "_B")
            : opts.out_path;
    auto os = open_out(path);
    os << "y,x,sf,cdf,pdf,hazard,rev_hazard\n";
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double t = grid.x[g];
      os << grid.y[g] << ',' << t << ',' << sf(sys, t) << ',' << cdf(sys, t);
      for (int q = 0; q < 3; ++q) {
        double v = std::numeric_limits<double>::quiet_NaN();
        try {
          v = q == 0 ? pdf(sys, t) : q == 1 ? hazard(sys, t)
                                            : rev_hazard(sys, t);
        } catch (const std::domain_error&) {
          // outside the support or at a pole: emitted as nan
        }
        os << ',' << v;
      }
      os << '\n';
    }
  }
  return kOk;
}

int cmd_compare(const Options& opts) {
  const Scenario s = Scenario::load(opts.scenario_path);
  if (s.systems.size() != 2)
    throw std::invalid_argument("compare needs a two-system scenario");
  const Grid grid = Grid::make(effective_grid(s, opts));
  const AnySystem a = s.build(0), b = s.build(1);
  const OrderKind kind = s.order.value_or(OrderKind::st);
  const OrderVerdict v = check_order(kind, a, b, grid);
  {
    auto os = open_out(opts.out_path);
    v.write_json(os);
  }
  // ratio curves alongside, rows restricted to where they are defined
  auto os = open_out(ratios_path(opts.out_path));
  os << "y,x,sf_ratio,cdf_ratio,pdf_ratio\n";
  const double lo = std::max(support_start(a), support_start(b));
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double t = grid.x[g];
    auto ratio = [&](double num, double den) {
      return den > 1e-300 && num > 1e-300
                 ? num / den
                 : std::numeric_limits<double>::quiet_NaN();
    };
    const double sr = ratio(sf(b, t), sf(a, t));
    const double cr = ratio(cdf(b, t), cdf(a, t));
    double pr = std::numeric_limits<double>::quiet_NaN();
    if (t > lo) pr = ratio(pdf(b, t), pdf(a, t));
    os << grid.y[g] << ',' << t << ',' << sr << ',' << cr << ',' << pr
       << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& opts) {
  const Scenario s = Scenario::load(opts.scenario_path);
  if (!s.theorem)
    throw std::invalid_argument("verify needs a \"theorem\" field");
  CheckOptions copts;
  if (opts.grid_points) copts.verify_points = *opts.grid_points;
  const TheoremCertificate cert =
      check_theorem(*s.theorem, s.comparison(), copts);
  auto os = open_out(opts.out_path);
  cert.write_json(os);
  std::cout << theorem_token(*s.theorem) << ": "
            << (cert.all_pass ? "all conditions pass" : "conditions fail")
            << ", conclusion "
            << (cert.conclusion_consistent ? "verified" : "NOT verified")
            << "\n";
  return kOk;
}

int cmd_simulate(const Options& opts) {
  if (!opts.seed)
    throw std::invalid_argument("simulate requires an explicit --seed");
  const Scenario s = Scenario::load(opts.scenario_path);
  const Grid grid = Grid::make(effective_grid(s, opts));
  for (std::size_t i = 0; i < s.systems.size(); ++i) {
    const AnySystem sys = s.build(i);
    McEstimate est;
    if (s.level == Level::component)
      est = simulate_component_level(std::get<ComponentLevelSystem>(sys), grid,
                                     opts.samples, *opts.seed);
    else
      est = simulate_system_level(std::get<SystemLevelSystem>(sys), grid,
                                  opts.samples, *opts.seed);
    const std::string path =
        s.systems.size() > 1
            ? with_suffix(opts.out_path, i == 0 ? "_A" : "_B")
            : opts.out_path;
    auto os = open_out(path);
    est.write_csv(os);
  }
  return kOk;
}

int cmd_allocate(const Options& opts) {
  const Scenario s = Scenario::load(opts.scenario_path);
  if (!s.pool) throw std::invalid_argument("allocate needs a \"pool\" field");
  SparePool pool;
  pool.family = s.family;
  pool.alpha = s.alpha;
  pool.candidates = s.pool->candidates;
  pool.slots = s.pool->slots;
  AllocationBase base;
  base.level = s.level;
  base.structure = s.structure;
  base.copula = s.copula;
  base.theta = s.systems.at(0).thetas.at(0);
  base.b0 = s.systems.at(0).b.at(0);
  const AllocationReport rep =
      recommend(pool, base, effective_grid(s, opts));
  auto os = open_out(opts.out_path);
  rep.write_json(os);
  rep.write_table(std::cout);
  return kOk;
}

int cmd_example(const Options& opts) {
  const ExamplePreset preset = example_preset(opts.example_id);
  const PresetCurve curve =
      evaluate_preset(preset, opts.grid_points.value_or(0));
  auto os = open_out(opts.out_path);
  if (opts.format == "json") {
    os << "{\"y\":[";
    for (std::size_t i = 0; i < curve.y.size(); ++i)
      os << curve.y[i] << (i + 1 < curve.y.size() ? "," : "");
    os << "],\"x\":[";
    for (std::size_t i = 0; i < curve.x.size(); ++i)
      os << curve.x[i] << (i + 1 < curve.x.size() ? "," : "");
    os << "],\"value\":[";
    for (std::size_t i = 0; i < curve.value.size(); ++i)
      os << curve.value[i] << (i + 1 < curve.value.size() ? "," : "");
    os << "]}\n";
  } else {
    os << "y,x,value\n";
    for (std::size_t i = 0; i < curve.y.size(); ++i)
      os << curve.y[i] << ',' << curve.x[i] << ',' << curve.value[i] << '\n';
  }
  return kOk;
}

}  // namespace

int run(const Options& opts) {
  try {
    if (opts.format != "csv" && opts.format != "json")
      throw std::invalid_argument("format must be csv or json");
    if (opts.out_path.empty())
      throw std::invalid_argument("an --out path is required");
    if (opts.command == "distortion") return cmd_distortion(opts);
    if (opts.command == "eval") return cmd_eval(opts);
    if (opts.command == "compare") return cmd_compare(opts);
    if (opts.command == "verify") return cmd_verify(opts);
    if (opts.command == "simulate") return cmd_simulate(opts);
    if (opts.command == "allocate") return cmd_allocate(opts);
    if (opts.command == "example") return cmd_example(opts);
    throw std::invalid_argument("unknown command: " + opts.command);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace redsys::cli
