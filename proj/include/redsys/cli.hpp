#ifndef REDSYS_CLI_HPP
#define REDSYS_CLI_HPP

#include <cstdint>
#include <optional>
#include <string>

namespace redsys::cli {

// exit codes: 0 success, 1 validation error, 2 numerical failure
inline constexpr int kOk = 0;
inline constexpr int kValidationError = 1;
inline constexpr int kNumericalError = 2;

struct Options {
  std::string command;       // distortion|eval|compare|verify|simulate|allocate|example
  std::string scenario_path;
  std::string example_id;    // for `example`
  std::string out_path;
  std::optional<std::size_t> grid_points;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 100000;
  std::string format = "csv";  // csv|json for curve outputs
};

int run(const Options& opts);

}  // namespace redsys::cli

#endif  // REDSYS_CLI_HPP
