#ifndef REDSYS_SAMPLING_HPP
#define REDSYS_SAMPLING_HPP

#include <cstdint>
#include <random>

namespace redsys {

// splitmix64 mix step; used to derive independent stream seeds from
// (master seed, stream index) so that chunked parallel runs are reproducible
// for any thread count.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Thin RNG with explicitly pinned sampling algorithms. mt19937_64 is fully
// specified by the standard; the distribution algorithms are ours so results
// do not depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform();      // (0,1), never returns 0 or 1
  double exponential();  // rate 1
  double normal();       // standard normal (Box-Muller, cached spare)
  // Marsaglia-Tsang; any shape > 0, unit scale.
  double gamma(double shape);
  // Positive stable S(alpha) with Laplace transform exp(-s^alpha),
  // alpha in (0,1); Kanter's representation.
  double positive_stable(double alpha);

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace redsys

#endif  // REDSYS_SAMPLING_HPP
