#include "hcnot/cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

namespace hcnot::cli {

namespace {

unsigned parse_workers(const std::string& text) {
  if (text == "auto") return 0;
  try {
    std::size_t used = 0;
    const long value = std::stol(text, &used);
    if (used == text.size() && value >= 1 && value <= 4096) return static_cast<unsigned>(value);
  } catch (const std::exception&) {
  }
  throw UsageError("--workers: expected 'auto' or a positive integer, got '" + text + "'");
}

void parse_formats(const std::string& text, RunConfig& config) {
  config.write_csv = false;
  config.write_json = false;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item == "csv") {
      config.write_csv = true;
    } else if (item == "json") {
      config.write_json = true;
    } else {
      throw UsageError("--formats: unknown format '" + item + "' (expected csv and/or json)");
    }
  }
  if (!config.write_csv && !config.write_json)
    throw UsageError("--formats: at least one of csv, json is required");
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::ios_base::failure("failed writing " + path.string());
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_lo,bin_hi,count,density\n";
  for (int i = 0; i < h.bin_count; ++i) {
    out += format_number(h.bin_lo(i)) + ',' + format_number(h.bin_hi(i)) + ',' +
           std::to_string(h.counts[i]) + ',' + format_number(h.density(i)) + '\n';
  }
  return out;
}

std::string records_csv(const std::vector<TrialRecord>& records) {
  std::string out = "e0,ef,delta\n";
  for (const auto& r : records)
    out += format_number(r.e0) + ',' + format_number(r.ef) + ',' + format_number(r.delta) + '\n';
  return out;
}

// nlohmann prints the shortest round-trip form, so rounding first yields at
// most 12 significant digits in the output.
double rounded(double value) { return std::strtod(format_number(value).c_str(), nullptr); }

nlohmann::ordered_json summary_json(const RunConfig& config, const EnsembleSummary& s,
                                    double wall_seconds) {
  nlohmann::ordered_json formats = nlohmann::ordered_json::array();
  if (config.write_csv) formats.push_back("csv");
  if (config.write_json) formats.push_back("json");

  nlohmann::ordered_json j;
  j["config"] = {
      {"ensemble", std::string(to_string(config.ensemble))},
      {"trials", config.trials},
      {"seed", config.seed},
      {"delta_bins", config.delta_bins},
      {"e0_bins", config.e0_bins},
      {"min_occupancy", config.min_occupancy},
      {"workers", config.workers == 0 ? nlohmann::ordered_json("auto")
                                      : nlohmann::ordered_json(config.workers)},
      {"output_dir", config.output_dir.string()},
      {"formats", formats},
  };
  j["trials"] = s.trials;
  j["mean_e0"] = rounded(s.mean_e0());
  j["mean_ef"] = rounded(s.mean_ef());
  j["mean_delta"] = rounded(s.mean_delta());
  j["central_fraction"] = rounded(s.central_fraction());
  j["central_half_width"] = rounded(0.5 * s.delta_hist.width());
  j["delta_mode_bin_lo"] = rounded(s.delta_hist.bin_lo(s.delta_hist.mode()));
  j["pure_state_mean_eof_reference"] = rounded(1.0 / (3.0 * std::numbers::ln2));
  j["failures"] = s.failures;
  j["wall_time_seconds"] = rounded(wall_seconds);
  return j;
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string delta_hist_csv(const Histogram& h) { return histogram_csv(h); }
std::string e0_hist_csv(const Histogram& h) { return histogram_csv(h); }

std::string conditional_mean_csv(const ConditionalProfile& p) {
  std::string out = "e0_lo,e0_hi,mean_ef,count\n";
  for (int i = 0; i < p.bin_count(); ++i) {
    const auto mean = p.mean_ef(i);
    out += format_number(p.occupancy.bin_lo(i)) + ',' + format_number(p.occupancy.bin_hi(i)) +
           ',' + (mean ? format_number(*mean) : std::string()) + ',' +
           std::to_string(p.count(i)) + '\n';
  }
  return out;
}

ParseResult parse_args(const std::vector<std::string>& argv) {
  ParseResult result;
  RunConfig& config = result.config;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0')
    config.output_dir = env;

  CLI::App app{"Hadamard-CNOT entanglement-change Monte Carlo"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "sample states, apply the circuit, write statistics");

  std::string ensemble = "pure";
  std::string workers = "auto";
  std::string formats = "csv,json";
  std::string output_dir = config.output_dir.string();
  run->add_option("--ensemble", ensemble, "pure or mixed")
      ->check(CLI::IsMember({"pure", "mixed"}));
  run->add_option("--trials", config.trials, "number of Monte Carlo trials")
      ->check(CLI::Range(std::uint64_t{1}, std::numeric_limits<std::uint64_t>::max()));
  run->add_option("--seed", config.seed, "64-bit decimal seed");
  run->add_option("--delta-bins", config.delta_bins, "bins for Delta E over [-1, 1]")
      ->check(CLI::Range(2, 1'000'000));
  run->add_option("--e0-bins", config.e0_bins, "bins for E_0 over [0, 1]")
      ->check(CLI::Range(2, 1'000'000));
  run->add_option("--min-occupancy", config.min_occupancy,
                  "samples needed before a conditional mean is reported");
  run->add_option("--workers", workers, "worker threads, or 'auto'");
  run->add_option("--output-dir", output_dir,
                  std::string("output directory (default $") + kOutputDirEnv + " or " +
                      kDefaultOutputDir + ")");
  run->add_option("--formats", formats, "comma-separated subset of csv,json");
  run->add_flag("--keep-records", config.keep_records,
                "also write every trial to records.csv (at most 1e8 trials)");

  std::vector<const char*> args;
  args.reserve(argv.size());
  for (const auto& a : argv) args.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    result.help_requested = true;
    result.help_text = run->parsed() ? run->help() : app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.help_requested = true;
    result.help_text = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  config.ensemble = parse_ensemble_kind(ensemble);
  config.workers = parse_workers(workers);
  config.output_dir = output_dir;
  parse_formats(formats, config);
  if (config.keep_records && config.trials > kMaxRetainedRecords)
    throw UsageError("--keep-records: at most 1e8 trials can be retained");
  return result;
}

int execute(const RunConfig& config) {
  const EnsembleSpec spec{config.ensemble, config.trials, config.seed};
  const BinningConfig binning{config.delta_bins, config.e0_bins, config.min_occupancy};

  std::error_code ec;
  std::filesystem::create_directories(config.output_dir, ec);
  if (ec) {
    std::cerr << "hcnot: cannot create " << config.output_dir << ": " << ec.message() << '\n';
    return kIo;
  }

  const auto start = std::chrono::steady_clock::now();
  EnsembleSummary summary;
  std::vector<TrialRecord> records;
  try {
    summary = run_summary(spec, binning, config.workers, config.keep_records ? &records : nullptr);
  } catch (const UsageError& e) {
    std::cerr << "hcnot: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    std::cerr << "hcnot: " << e.what() << '\n';
    return kNumericQuality;
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  try {
    if (config.write_csv) {
      write_file(config.output_dir / "delta_hist.csv", delta_hist_csv(summary.delta_hist));
      write_file(config.output_dir / "conditional_mean.csv",
                 conditional_mean_csv(summary.profile));
      write_file(config.output_dir / "e0_hist.csv", e0_hist_csv(summary.e0_hist));
      if (config.keep_records) write_file(config.output_dir / "records.csv", records_csv(records));
    }
    if (config.write_json)
      write_file(config.output_dir / "summary.json",
                 summary_json(config, summary, wall).dump(2) + '\n');
  } catch (const std::ios_base::failure& e) {
    std::cerr << "hcnot: " << e.what() << '\n';
    return kIo;
  }

  std::cerr << "hcnot: " << summary.trials << " " << to_string(config.ensemble)
            << " trials, mean E0 " << format_number(summary.mean_e0()) << ", mean EF "
            << format_number(summary.mean_ef()) << ", wrote " << config.output_dir.string()
            << '\n';
  return kOk;
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  ParseResult parsed;
  try {
    parsed = parse_args(args);
  } catch (const UsageError& e) {
    std::cerr << "hcnot: " << e.what() << "\nRun with --help for usage.\n";
    return kUsage;
  }
  if (parsed.help_requested) {
    std::cout << parsed.help_text;
    return kOk;
  }
  return execute(parsed.config);
}

}  // namespace hcnot::cli
