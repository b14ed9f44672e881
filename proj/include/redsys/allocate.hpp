#ifndef REDSYS_ALLOCATE_HPP
#define REDSYS_ALLOCATE_HPP

#include <iosfwd>

#include "redsys/conditions.hpp"

namespace redsys {

struct SparePool {
  Family family = Family::lomax;
  double alpha = 1.5;
  std::vector<double> candidates;  // available spare parameters
  int slots = 1;                   // m
};

struct AllocationBase {
  Level level = Level::component;
  CoherentStructure structure;
  CopulaFamily copula = CopulaFamily::clayton;
  double theta = 2.0;
  double b0 = 1.0;  // original component parameter
};

struct AllocationEntry {
  std::vector<int> chosen;      // candidate indices, ascending
  std::vector<double> b_full;   // b0 followed by the chosen spares
  double mean_lifetime = 0.0;   // integral of sf, truncated at 10^6
};

struct PairCertificate {
  std::size_t a = 0, b = 0;  // entry indices: theorem implies a <=_st b
  TheoremId theorem = TheoremId::T3_1;
  bool all_pass = false;
};

struct AllocationReport {
  std::vector<AllocationEntry> entries;  // enumeration order
  std::vector<std::size_t> ranking;      // entry indices, best first
  // row-major st verdicts: dominance[i*k+j] relates entry i (A) to j (B)
  std::vector<Relation> dominance;
  std::vector<PairCertificate> certificates;

  void write_json(std::ostream& os) const;
  void write_table(std::ostream& os) const;
};

// Enumerates every way of filling the slots from the candidate pool, ranks
// the allocations by st dominance with mean lifetime as the tie-break, and
// attaches theorem certificates to pairs whose majorization hypothesis
// holds. The enumeration bound is C(candidates, slots) <= 10^4.
AllocationReport recommend(const SparePool& pool, const AllocationBase& base,
                           const GridSpec& grid = {},
                           Exec exec = Exec::parallel);

}  // namespace redsys

#endif  // REDSYS_ALLOCATE_HPP
