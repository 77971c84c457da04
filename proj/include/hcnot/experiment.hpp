#ifndef HCNOT_EXPERIMENT_HPP
#define HCNOT_EXPERIMENT_HPP

// Monte Carlo survey of the entanglement change produced by the
// Hadamard-CNOT circuit.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hcnot/entanglement.hpp"
#include "hcnot/sampling.hpp"

namespace hcnot {

enum class EnsembleKind { kPure, kMixed };

std::string_view to_string(EnsembleKind kind);
/// Accepts "pure" or "mixed"; throws UsageError otherwise.
EnsembleKind parse_ensemble_kind(std::string_view text);

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::kPure;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 42;

  void validate() const;
};

struct TrialRecord {
  double e0 = 0;     ///< entanglement of formation before the circuit
  double ef = 0;     ///< ... and after
  double delta = 0;  ///< ef - e0
};

/// Fixed-range histogram with integer counts, so merging partial histograms
/// is exact and order-independent.
struct Histogram {
  double lo = 0;
  double hi = 1;
  int bin_count = 0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  Histogram() = default;
  /// Throws UsageError unless bin_count >= 2 and hi > lo.
  Histogram(double lo, double hi, int bin_count);

  double width() const { return (hi - lo) / bin_count; }
  double bin_lo(int i) const { return lo + (hi - lo) * i / bin_count; }
  double bin_hi(int i) const { return lo + (hi - lo) * (i + 1) / bin_count; }
  /// Bin holding x; the right edge hi belongs to the last bin and values
  /// outside [lo, hi] are clamped into the end bins.
  int bin_of(double x) const;
  void add(double x);
  void merge(const Histogram& other);
  /// counts[i] / (total * width).
  double density(int i) const;
  /// Index of the most populated bin (lowest index on ties).
  int mode() const;
};

/// Mean of E_F binned over E_0 in [0, 1].
struct ConditionalProfile {
  Histogram occupancy;           ///< counts per E_0 bin
  std::vector<double> sum_ef;    ///< per-bin sum of E_F
  std::vector<double> sum_e0;    ///< per-bin sum of E_0
  std::uint64_t min_occupancy = 100;

  ConditionalProfile() = default;
  ConditionalProfile(int bin_count, std::uint64_t min_occupancy = 100);

  int bin_count() const { return occupancy.bin_count; }
  std::uint64_t count(int i) const { return occupancy.counts[i]; }
  bool occupied(int i) const { return count(i) >= min_occupancy && count(i) > 0; }
  /// Mean E_F in bin i, or nullopt when the bin is under-occupied.
  std::optional<double> mean_ef(int i) const;
  /// Mean E_0 in bin i, or nullopt when the bin is under-occupied.
  std::optional<double> mean_e0(int i) const;
  void add(const TrialRecord& record);
  void merge(const ConditionalProfile& other);
};

/// Default binning: 100 bins for Delta E over [-1, 1], 50 for E_0 over
/// [0, 1], and 100 samples before a conditional mean is reported.
struct BinningConfig {
  int delta_bins = 100;
  int e0_bins = 50;
  std::uint64_t min_occupancy = 100;

  void validate() const;
};

/// Streaming reduction of an ensemble: everything the CLI reports, in
/// fixed-size memory.
struct EnsembleSummary {
  EnsembleSpec spec;
  BinningConfig binning;
  Histogram delta_hist;
  Histogram e0_hist;
  ConditionalProfile profile;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t central_count = 0;  ///< |Delta E| < half a delta bin width
  double sum_e0 = 0;
  double sum_ef = 0;
  double sum_delta = 0;

  EnsembleSummary() = default;
  EnsembleSummary(const EnsembleSpec& spec, const BinningConfig& binning);

  void add(const TrialRecord& record);
  /// Appends other; callers merge in a fixed order to keep the floating
  /// point sums reproducible.
  void merge(const EnsembleSummary& other);

  double mean_e0() const { return sum_e0 / static_cast<double>(trials); }
  double mean_ef() const { return sum_ef / static_cast<double>(trials); }
  double mean_delta() const { return sum_delta / static_cast<double>(trials); }
  double central_fraction() const {
    return static_cast<double>(central_count) / static_cast<double>(trials);
  }
};

/// Thrown when more than one trial in a million needed resampling.
class FailureRateExceeded : public NumericError {
public:
  FailureRateExceeded(std::uint64_t failures, std::uint64_t trials);
  std::uint64_t failures;
  std::uint64_t trials;
};

inline constexpr double kMaxFailureRate = 1e-6;
inline constexpr std::uint64_t kMaxRetainedRecords = 100'000'000;

/// E_0, E_F and Delta E for a given initial state.
TrialRecord run_trial_on(const DensityMatrix<double>& rho);

/// Samples one state of the given kind from rng and runs it through the circuit.
TrialRecord run_trial(EnsembleKind kind, RandomStream& rng);

/// Trial t of an ensemble: draws from substream t of the seed, retrying on
/// successive lanes of that substream when a numerical routine fails.
/// Each retry increments *failures.
TrialRecord run_indexed_trial(EnsembleKind kind, std::uint64_t seed, std::uint64_t index,
                              std::uint64_t* failures);

/// Runs the ensemble, reducing trials into an EnsembleSummary. When
/// records is non-null it is resized to spec.trials and filled in trial
/// order (refused above 1e8 trials). The result is identical for every
/// worker count; workers == 0 means hardware concurrency.
EnsembleSummary run_summary(const EnsembleSpec& spec, const BinningConfig& binning,
                            unsigned workers = 1, std::vector<TrialRecord>* records = nullptr);

/// All trial records, in trial order.
std::vector<TrialRecord> run_ensemble(const EnsembleSpec& spec, unsigned workers = 1);

/// P(Delta E) over [-1, 1].
Histogram histogram_delta(std::span<const TrialRecord> records, int bin_count);

/// P(E_0) over [0, 1].
Histogram entanglement_histogram(std::span<const TrialRecord> records, int bin_count);

/// <E_F> as a function of E_0.
ConditionalProfile conditional_mean(std::span<const TrialRecord> records, int bin_count,
                                    std::uint64_t min_occupancy = 100);

}  // namespace hcnot

#endif  // HCNOT_EXPERIMENT_HPP
