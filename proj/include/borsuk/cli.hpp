// Command-line front end: argument parsing, command dispatch, report emission.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace borsuk::cli {

enum class Command { Plan, Build, Certify, Bound, FindD0, Asymptotic, Upper, OptimalPoly };
enum class Format { Json, Csv, Text };

struct RunConfig {
  Command command = Command::Plan;
  std::optional<std::string> r;  // decimal literal, kept exact
  std::optional<std::string> d;  // digits, "1e12" or "10^12"
  std::optional<std::uint64_t> n, k, a, p;  // overrides; --n is also the optimal-poly scale
  double c_phi = 6.0;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  Format format = Format::Json;
  std::optional<std::string> out;
  unsigned threads = 1;
  // upper
  std::optional<double> c_r;
  unsigned restarts = 50;
  unsigned d_max = 12;
  // optimal-poly
  std::optional<unsigned> m;
  std::uint64_t samples = 10'000;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by parse_args for --help.
struct HelpRequested {};

/// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

std::string usage();

/// Throws UsageError on bad flags or a missing command-specific flag.
RunConfig parse_args(const std::vector<std::string>& args);

/// Runs one command; reports go to `out` (or the --out file), diagnostics to `err`.
int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + dispatch with the exit-code convention applied to every failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace borsuk::cli
