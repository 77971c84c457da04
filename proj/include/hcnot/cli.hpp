#ifndef HCNOT_CLI_HPP
#define HCNOT_CLI_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hcnot/experiment.hpp"

namespace hcnot::cli {

/// Process exit statuses.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kNumericQuality = 3,
};

/// Environment variable that replaces the default output directory.
inline constexpr const char* kOutputDirEnv = "HCNOT_OUTPUT_DIR";
inline constexpr const char* kDefaultOutputDir = "hcnot-output";

struct RunConfig {
  EnsembleKind ensemble = EnsembleKind::kPure;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;
  int delta_bins = 100;
  int e0_bins = 50;
  std::uint64_t min_occupancy = 100;
  unsigned workers = 0;  ///< 0 = auto
  std::filesystem::path output_dir = kDefaultOutputDir;
  bool write_csv = true;
  bool write_json = true;
  bool keep_records = false;
};

struct ParseResult {
  RunConfig config;
  bool help_requested = false;
  std::string help_text;
};

/// Parses `run [flags]`; argv[0] is the program name. Throws UsageError
/// with a message naming the offending flag.
ParseResult parse_args(const std::vector<std::string>& argv);

/// Runs the experiment and writes the outputs. Returns an ExitCode.
int execute(const RunConfig& config);

/// parse_args + execute with error reporting on stderr.
int main(int argc, char** argv);

/// Number formatting shared by the CSV and JSON writers: 12 significant digits.
std::string format_number(double value);

std::string delta_hist_csv(const Histogram& h);
std::string e0_hist_csv(const Histogram& h);
std::string conditional_mean_csv(const ConditionalProfile& p);

}  // namespace hcnot::cli

#endif  // HCNOT_CLI_HPP
