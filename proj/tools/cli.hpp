#ifndef CESARO_TOOLS_CLI_HPP
#define CESARO_TOOLS_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cesaro::cli {

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  std::string input_path;  // empty: no input file
  std::optional<double> p, tol, tau, M, R, K, r, eps;
  std::string out_path;  // empty: stdout
  Format format = Format::Json;
  std::uint64_t seed = 42;
};

const std::vector<std::string>& commands();

// Exit codes: 0 ok, 1 failed suite or computation error, 2 bad input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitSchema = 2;

// Runs one command. The report goes to cfg.out_path or `out`; diagnostics to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cesaro::cli

#endif  // CESARO_TOOLS_CLI_HPP
