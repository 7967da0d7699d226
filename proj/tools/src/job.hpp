#pragma once

#include <optional>
#include <stdexcept>
#include <ostream>
#include <string>

#include <radspec/spectra.hpp>

namespace radspec::cli {

enum class Command { Spectrum, Counting, Compare, Counterexample, Periphery };
enum class Format { Csv, Json };

std::string to_string(Command c);
Command parse_command(const std::string& s);
std::string to_string(Format f);
Format parse_format(const std::string& s);

struct JobConfig {
  Command command = Command::Spectrum;
  SpaceKind space = SpaceKind::BergmanComplex;
  int d = 1;
  std::optional<double> R;
  std::string symbol = "1";
  unsigned k_max = 50;
  double tol = 1e-10;
  double lambda_min_log10 = -40.0;
  double lambda_max_log10 = -5.0;
  int grid_points = 36;
  std::string out = "-";
  Format format = Format::Csv;
  double p = 2.0;
  double q = 4.0;

  /// Throws ConfigError.
  void validate() const;
  SpaceSpec space_spec() const;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

/// Bad flags, config file or symbol text (exit status 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON object using the same keys as the command-line flags (kmax, lambda-min-log10, ...).
std::string config_to_json(const JobConfig& c);
/// Fields absent from `text` keep their value in `base`.
JobConfig config_from_json(const std::string& text, JobConfig base = {});

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitNumerical = 2;
inline constexpr int kExitAssertion = 3;

/// Runs one job, writing the artifact to `out`. Diagnostics go to `err`.
int run(const JobConfig& config, std::ostream& out, std::ostream& err);

}  // namespace radspec::cli
