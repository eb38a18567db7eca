#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace gribov::report {

enum class Command { kSpectrum, kEnclosure, kSubordination, kConditions, kCounting, kRiesz, kExampleP6, kSchema };
enum class Format { kJson, kCsv };

std::optional<Command> parse_command(const std::string& name);
const char* command_name(Command c);

struct RunConfig {
  Command command = Command::kSpectrum;
  std::filesystem::path spec_path;
  std::size_t trunc = 40;
  double growth = 2.0;
  double rel_tol = 1e-6;
  double alpha_margin = 0.1;
  double gap_factor = 0.5;
  std::filesystem::path out_path;  // empty or "-" writes to stdout
  Format format = Format::kJson;

  // example-p6 parameters
  std::size_t p6_n = 10;
  double p6_a = 1.4;
  double p6_lambda2 = 10.0;

  // subordination: random trial vectors on top of the basis vectors
  std::size_t trial_vectors = 200;
  std::uint64_t seed = 20240521;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumerical = 3;

/// Builds the command's report document. Throws gribov::Error on bad input or
/// numerical failure.
nlohmann::json build_report(const RunConfig& config);

/// Eigenvalue / counting tables for the CSV format; throws invalid-input for
/// commands without a tabular form.
std::string build_csv(const RunConfig& config);

/// Runs one command end to end: writes the report, prints diagnostics to
/// `err`, and returns 0 (ok), 2 (validation failure) or 3 (numerical failure).
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gribov::report
