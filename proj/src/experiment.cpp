#include "hcnot/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace hcnot {

namespace {

// Trials are reduced in fixed blocks merged in block order, which makes the
// floating-point sums independent of how blocks were scheduled.
constexpr std::uint64_t kBlockSize = 4096;
constexpr std::uint32_t kMaxAttempts = 16;

}  // namespace

std::string_view to_string(EnsembleKind kind) {
  return kind == EnsembleKind::kPure ? "pure" : "mixed";
}

EnsembleKind parse_ensemble_kind(std::string_view text) {
  if (text == "pure") return EnsembleKind::kPure;
  if (text == "mixed") return EnsembleKind::kMixed;
  throw UsageError("unknown ensemble '" + std::string(text) + "' (expected pure or mixed)");
}

void EnsembleSpec::validate() const {
  if (trials < 1) throw UsageError("ensemble needs at least one trial");
}

void BinningConfig::validate() const {
  if (delta_bins < 2) throw UsageError("delta_bins must be at least 2");
  if (e0_bins < 2) throw UsageError("e0_bins must be at least 2");
}

// ---------------------------------------------------------------------------
// Histogram

Histogram::Histogram(double lo_, double hi_, int bins)
    : lo(lo_), hi(hi_), bin_count(bins) {
  if (bins < 2) throw UsageError("histogram needs at least 2 bins");
  if (!(hi > lo)) throw UsageError("histogram range is empty");
  counts.assign(static_cast<std::size_t>(bins), 0);
}

int Histogram::bin_of(double x) const {
  const double scaled = std::floor((x - lo) * bin_count / (hi - lo));
  if (!(scaled >= 0)) return 0;
  if (scaled >= bin_count) return bin_count - 1;
  return static_cast<int>(scaled);
}

void Histogram::add(double x) {
  ++counts[static_cast<std::size_t>(bin_of(x))];
  ++total;
}

void Histogram::merge(const Histogram& other) {
  if (other.bin_count != bin_count || other.lo != lo || other.hi != hi)
    throw UsageError("cannot merge histograms with different binning");
  for (int i = 0; i < bin_count; ++i) counts[i] += other.counts[i];
  total += other.total;
}

double Histogram::density(int i) const {
  if (total == 0) return 0.0;
  return static_cast<double>(counts[i]) / (static_cast<double>(total) * width());
}

int Histogram::mode() const {
  return static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

// ---------------------------------------------------------------------------
// ConditionalProfile

ConditionalProfile::ConditionalProfile(int bins, std::uint64_t min_occ)
    : occupancy(0.0, 1.0, bins),
      sum_ef(static_cast<std::size_t>(bins), 0.0),
      sum_e0(static_cast<std::size_t>(bins), 0.0),
      min_occupancy(min_occ) {}

std::optional<double> ConditionalProfile::mean_ef(int i) const {
  if (!occupied(i)) return std::nullopt;
  return sum_ef[i] / static_cast<double>(count(i));
}

std::optional<double> ConditionalProfile::mean_e0(int i) const {
  if (!occupied(i)) return std::nullopt;
  return sum_e0[i] / static_cast<double>(count(i));
}

void ConditionalProfile::add(const TrialRecord& record) {
  const int bin = occupancy.bin_of(record.e0);
  occupancy.add(record.e0);
  sum_ef[bin] += record.ef;
  sum_e0[bin] += record.e0;
}

void ConditionalProfile::merge(const ConditionalProfile& other) {
  occupancy.merge(other.occupancy);
  for (int i = 0; i < bin_count(); ++i) {
    sum_ef[i] += other.sum_ef[i];
    sum_e0[i] += other.sum_e0[i];
  }
}

// ---------------------------------------------------------------------------
// EnsembleSummary

EnsembleSummary::EnsembleSummary(const EnsembleSpec& spec_, const BinningConfig& binning_)
    : spec(spec_),
      binning(binning_),
      delta_hist(-1.0, 1.0, binning_.delta_bins),
      e0_hist(0.0, 1.0, binning_.e0_bins),
      profile(binning_.e0_bins, binning_.min_occupancy) {}

void EnsembleSummary::add(const TrialRecord& record) {
  ++trials;
  sum_e0 += record.e0;
  sum_ef += record.ef;
  sum_delta += record.delta;
  delta_hist.add(record.delta);
  e0_hist.add(record.e0);
  profile.add(record);
  if (std::abs(record.delta) < 0.5 * delta_hist.width()) ++central_count;
}

void EnsembleSummary::merge(const EnsembleSummary& other) {
  trials += other.trials;
  failures += other.failures;
  central_count += other.central_count;
  sum_e0 += other.sum_e0;
  sum_ef += other.sum_ef;
  sum_delta += other.sum_delta;
  delta_hist.merge(other.delta_hist);
  e0_hist.merge(other.e0_hist);
  profile.merge(other.profile);
}

FailureRateExceeded::FailureRateExceeded(std::uint64_t failures_, std::uint64_t trials_)
    : NumericError("numerical failure rate " + std::to_string(failures_) + "/" +
                   std::to_string(trials_) + " exceeds 1e-6"),
      failures(failures_),
      trials(trials_) {}

// ---------------------------------------------------------------------------
// Trials

TrialRecord run_trial_on(const DensityMatrix<double>& rho) {
  static const Gate4<double> u = circuit<double>();
  TrialRecord r;
  r.e0 = eof(rho);
  r.ef = eof(apply(u, rho));
  r.delta = r.ef - r.e0;
  return r;
}

TrialRecord run_trial(EnsembleKind kind, RandomStream& rng) {
  if (kind == EnsembleKind::kPure) return run_trial_on(densify(random_pure_state(rng)));
  return run_trial_on(random_mixed_state(rng));
}

TrialRecord run_indexed_trial(EnsembleKind kind, std::uint64_t seed, std::uint64_t index,
                              std::uint64_t* failures) {
  for (std::uint32_t lane = 0; lane < kMaxAttempts; ++lane) {
    try {
      RandomStream rng(seed, index, lane);
      return run_trial(kind, rng);
    } catch (const NumericError&) {
      if (failures != nullptr) ++*failures;
    }
  }
  throw NumericError("trial " + std::to_string(index) + " failed on every resampling attempt");
}

EnsembleSummary run_summary(const EnsembleSpec& spec, const BinningConfig& binning,
                            unsigned workers, std::vector<TrialRecord>* records) {
  spec.validate();
  binning.validate();
  if (records != nullptr) {
    if (spec.trials > kMaxRetainedRecords)
      throw UsageError("refusing to retain more than 1e8 trial records");
    records->assign(spec.trials, TrialRecord{});
  }
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  const std::uint64_t block_count = (spec.trials + kBlockSize - 1) / kBlockSize;
  const unsigned thread_count =
      static_cast<unsigned>(std::min<std::uint64_t>(workers, block_count));

  EnsembleSummary total(spec, binning);
  std::map<std::uint64_t, EnsembleSummary> pending;
  std::uint64_t next_to_merge = 0;
  std::mutex merge_mutex;
  std::atomic<std::uint64_t> next_block{0};
  std::atomic<bool> stop{false};
  std::exception_ptr error;

  auto worker = [&]() {
    try {
      for (;;) {
        if (stop.load()) return;
        const std::uint64_t block = next_block.fetch_add(1);
        if (block >= block_count) return;
        const std::uint64_t begin = block * kBlockSize;
        const std::uint64_t end = std::min(spec.trials, begin + kBlockSize);

        EnsembleSummary local(spec, binning);
        for (std::uint64_t t = begin; t < end; ++t) {
          const TrialRecord rec = run_indexed_trial(spec.kind, spec.seed, t, &local.failures);
          local.add(rec);
          if (records != nullptr) (*records)[t] = rec;
        }

        std::lock_guard lock(merge_mutex);
        pending.emplace(block, std::move(local));
        for (auto it = pending.find(next_to_merge); it != pending.end();
             it = pending.find(next_to_merge)) {
          total.merge(it->second);
          pending.erase(it);
          ++next_to_merge;
        }
      }
    } catch (...) {
      std::lock_guard lock(merge_mutex);
      if (!error) error = std::current_exception();
      stop.store(true);
    }
  };

  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(thread_count);
    for (unsigned i = 0; i < thread_count; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  if (static_cast<double>(total.failures) > kMaxFailureRate * static_cast<double>(total.trials))
    throw FailureRateExceeded(total.failures, total.trials);
  return total;
}

std::vector<TrialRecord> run_ensemble(const EnsembleSpec& spec, unsigned workers) {
  std::vector<TrialRecord> records;
  run_summary(spec, BinningConfig{}, workers, &records);
  return records;
}

// ---------------------------------------------------------------------------
// Reductions over retained records

Histogram histogram_delta(std::span<const TrialRecord> records, int bin_count) {
  Histogram h(-1.0, 1.0, bin_count);
  for (const auto& r : records) h.add(r.delta);
  return h;
}

Histogram entanglement_histogram(std::span<const TrialRecord> records, int bin_count) {
  Histogram h(0.0, 1.0, bin_count);
  for (const auto& r : records) h.add(r.e0);
  return h;
}

ConditionalProfile conditional_mean(std::span<const TrialRecord> records, int bin_count,
                                    std::uint64_t min_occupancy) {
  ConditionalProfile p(bin_count, min_occupancy);
  for (const auto& r : records) p.add(r);
  return p;
}

}  // namespace hcnot
