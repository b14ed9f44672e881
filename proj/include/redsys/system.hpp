#ifndef REDSYS_SYSTEM_HPP
#define REDSYS_SYSTEM_HPP

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

#include "redsys/lifetime.hpp"
#include "redsys/structure.hpp"

namespace redsys {

enum class Level { component, system };

struct GridSpec {
  std::size_t points = 2000;
  double y_min = 1e-4;
  double y_max = 0.9999;
};

// The evaluation grid used throughout: y equally spaced in [y_min, y_max],
// x = -ln y. Stored with x ascending (y descending).
struct Grid {
  std::vector<double> y;
  std::vector<double> x;

  static Grid make(const GridSpec& spec = {});
  std::size_t size() const { return x.size(); }
};

enum class Exec { serial, parallel };

// Coherent system with heterogeneous active spares attached per component:
// every component block is the parallel group (original, m spares), so the
// block cdf is prod_j F(t; b_j) and the system survival is the distortion of
// the block survival.
class ComponentLevelSystem {
 public:
  ComponentLevelSystem(const CoherentStructure& structure, CopulaFamily copula,
                       double theta, Family family, std::vector<double> b,
                       double alpha = 1.5);
  // Custom-distortion systems lack path sets, so they evaluate in closed
  // form but cannot be simulated.
  ComponentLevelSystem(Distortion distortion, Family family,
                       std::vector<double> b, double alpha = 1.5);

  double support_start() const { return support_start_; }
  const Distortion& distortion() const { return distortion_; }
  const std::optional<CoherentStructure>& structure() const {
    return structure_;
  }
  const std::vector<LifetimeModel>& members() const { return members_; }
  Family family() const { return members_.front().family(); }
  double alpha() const { return members_.front().alpha(); }

  double sf(double t) const;
  double cdf(double t) const;
  // Density and hazards need t in the interior of every member's support.
  double pdf(double t) const;
  double hazard(double t) const;
  double rev_hazard(double t) const;

  // Block cdf prod F, its complement and its t-derivative, all at full
  // relative precision.
  struct Block {
    double w;       // prod_j F(t; b_j)
    double v;       // 1 - prod_j F(t; b_j)
    double wprime;  // d/dt prod_j F(t; b_j)
  };
  Block block(double t) const;

 private:
  Distortion distortion_;
  std::optional<CoherentStructure> structure_;
  std::vector<LifetimeModel> members_;
  double support_start_;
};

// One original system plus m same-structured redundant systems in parallel;
// subsystem j has its own dependence parameter theta_j and parameter b_j.
class SystemLevelSystem {
 public:
  SystemLevelSystem(const CoherentStructure& structure, CopulaFamily copula,
                    std::vector<double> thetas, Family family,
                    std::vector<double> b, double alpha = 1.5);

  double support_start() const { return support_start_; }
  const std::vector<Distortion>& distortions() const { return distortions_; }
  const std::vector<LifetimeModel>& members() const { return members_; }
  const CoherentStructure& structure() const { return structure_; }
  Family family() const { return members_.front().family(); }
  double alpha() const { return members_.front().alpha(); }

  double sf(double t) const;
  double cdf(double t) const;
  double pdf(double t) const;
  double hazard(double t) const;
  double rev_hazard(double t) const;

 private:
  CoherentStructure structure_;
  std::vector<Distortion> distortions_;
  std::vector<LifetimeModel> members_;
  double support_start_;
};

using AnySystem = std::variant<ComponentLevelSystem, SystemLevelSystem>;

double sf(const AnySystem& s, double t);
double cdf(const AnySystem& s, double t);
double pdf(const AnySystem& s, double t);
double hazard(const AnySystem& s, double t);
double rev_hazard(const AnySystem& s, double t);
double support_start(const AnySystem& s);

enum class Quantity { sf, cdf, pdf, hazard, rev_hazard };

struct SurvivalCurve {
  Grid grid;
  std::vector<double> values;
  enum class Provenance { closed_form, monte_carlo };
  Provenance provenance = Provenance::closed_form;
  std::vector<double> stderrs;  // filled for monte_carlo curves

  // CSV header y,x,value[,stderr]; JSON object with the same fields.
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

// Pointwise evaluation over the grid; points are independent, so the
// parallel path gives bitwise identical values to the serial one.
SurvivalCurve evaluate_curve(const AnySystem& s, const Grid& grid, Quantity q,
                             Exec exec = Exec::parallel);

}  // namespace redsys

#endif  // REDSYS_SYSTEM_HPP
