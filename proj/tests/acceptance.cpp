// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "hcnot/cli.hpp"
#include "hcnot/experiment.hpp"

using namespace hcnot;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kEnsembleTrials = 1'000'000;
constexpr std::uint64_t kSeed = 20020601;
const double kPureMeanEof = 1.0 / (3.0 * std::numbers::ln2);

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const Outcome& o) {
  std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(double x) { return cli::format_number(x); }

struct Ensembles {
  EnsembleSummary pure;
  EnsembleSummary mixed;
  double pure_seconds = 0;
};

const Ensembles& ensembles() {
  static const Ensembles e = [] {
    Ensembles out;
    const auto start = std::chrono::steady_clock::now();
    out.pure = run_summary({EnsembleKind::kPure, kEnsembleTrials, kSeed}, BinningConfig{}, 1);
    out.pure_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.mixed = run_summary({EnsembleKind::kMixed, kEnsembleTrials, kSeed}, BinningConfig{}, 0);
    return out;
  }();
  return e;
}

// ---------------------------------------------------------------------------

Outcome bell_basis_exactness() {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<Vector4cd, 4> targets = {
      Vector4cd(-r, 0, 0, r),  // (|11> - |00>)/sqrt2
      Vector4cd(0, -r, r, 0),  // (|10> - |01>)/sqrt2
      Vector4cd(r, 0, 0, r),   // (|00> + |11>)/sqrt2
      Vector4cd(0, r, r, 0),   // (|01> + |10>)/sqrt2
  };
  double worst_amp = 0.0, worst_eof = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vector4cd out = apply(circuit(), PureState<double>::basis(i)).amplitudes();
    const Complex<double> overlap = targets[i].dot(out);
    const Complex<double> phase = overlap / std::abs(overlap);
    worst_amp = std::max(worst_amp, max_abs(out - phase * targets[i]));
    const double e = eof(apply(circuit(), densify(PureState<double>::basis(i))));
    worst_eof = std::max(worst_eof, std::abs(e - 1.0));
  }
  return {worst_amp <= 1e-12 && worst_eof <= 1e-9,
          "max amplitude deviation " + fmt(worst_amp) + " (<= 1e-12), max |EoF - 1| " +
              fmt(worst_eof) + " (<= 1e-9)"};
}

Outcome pure_mean_entanglement() {
  const auto& e = ensembles();
  const double mean = e.pure.mean_e0();
  const bool ok = std::abs(mean - kPureMeanEof) <= 0.005 && e.pure_seconds < 120.0;
  return {ok, "mean E0 " + fmt(mean) + " vs 1/(3 ln 2) = " + fmt(kPureMeanEof) +
                  " (tol 0.005), " + std::to_string(e.pure.trials) + " trials in " +
                  fmt(e.pure_seconds) + " s single-threaded (< 120 s)"};
}

Outcome central_peak_ordering() {
  const auto& e = ensembles();
  const Histogram& hp = e.pure.delta_hist;
  const Histogram& hm = e.mixed.delta_hist;
  const int central = hp.bin_of(0.0);
  const bool pure_mode = hp.mode() == central;
  const bool mixed_mode = hm.mode() == central;
  const double dp = hp.density(central);
  const double dm = hm.density(central);
  return {pure_mode && mixed_mode && dm > dp,
          "central bin [" + fmt(hp.bin_lo(central)) + ", " + fmt(hp.bin_hi(central)) +
              "): pure density " + fmt(dp) + " (mode bin " + std::to_string(hp.mode()) +
              "), mixed density " + fmt(dm) + " (mode bin " + std::to_string(hm.mode()) + ")"};
}

// Largest occupied-bin mean E_0 at which <E_F> > E_0.
double last_gain_e0(const ConditionalProfile& p) {
  double last = -1.0;
  for (int i = 0; i < p.bin_count(); ++i) {
    const auto ef = p.mean_ef(i);
    const auto e0 = p.mean_e0(i);
    if (ef && e0 && *ef > *e0) last = std::max(last, *e0);
  }
  return last;
}

Outcome pure_profile_shape() {
  const ConditionalProfile& p = ensembles().pure.profile;
  int below_checked = 0, below_failed = 0;
  int pairs = 0, increases = 0;
  std::optional<double> previous;
  for (int i = 0; i < p.bin_count(); ++i) {
    const auto ef = p.mean_ef(i);
    const auto e0 = p.mean_e0(i);
    if (!ef) continue;
    if (*e0 < 0.45) {
      ++below_checked;
      if (!(*ef > *e0)) ++below_failed;
    }
    if (previous) {
      ++pairs;
      if (*ef > *previous) ++increases;
    }
    previous = ef;
  }
  const bool monotone = pairs > 0 && increases < 0.02 * pairs;
  std::optional<double> first, last;
  for (int i = 0; i < p.bin_count(); ++i)
    if (auto ef = p.mean_ef(i)) {
      if (!first) first = ef;
      last = ef;
    }
  return {below_checked > 0 && below_failed == 0 && monotone,
          std::to_string(below_failed) + "/" + std::to_string(below_checked) +
              " bins with E0 < 0.45 fail <EF> > E0; " + std::to_string(increases) + "/" +
              std::to_string(pairs) + " adjacent increases (< 2% required); <EF> " +
              fmt(first.value_or(0)) + " in the first bin, " + fmt(last.value_or(0)) +
              " in the last"};
}

Outcome mixed_profile_shape() {
  const ConditionalProfile& pm = ensembles().mixed.profile;
  const ConditionalProfile& pp = ensembles().pure.profile;
  const auto first = pm.mean_ef(0);
  double peak = 0.0;
  for (int i = 0; i < pm.bin_count(); ++i)
    if (auto ef = pm.mean_ef(i)) peak = std::max(peak, *ef);
  const double mixed_last = last_gain_e0(pm);
  const double pure_last = last_gain_e0(pp);
  const bool ok = first && *first < 0.05 && peak > *first && mixed_last < pure_last;
  return {ok, "first-bin <EF> " + (first ? fmt(*first) : std::string("n/a")) +
                  " (< 0.05), profile max " + fmt(peak) + "; last E0 with <EF> > E0: mixed " +
                  fmt(mixed_last) + " < pure " + fmt(pure_last)};
}

Outcome oracle_pure_concurrence() {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    RandomStream rng(kSeed + 1, t);
    const auto psi = random_pure_state(rng);
    worst = std::max(worst, std::abs(concurrence(densify(psi)).concurrence -
                                     pure_concurrence_oracle(psi)));
  }
  return {worst <= 1e-9, "max |C - 2|ad - bc|| over 1e4 pure states " + fmt(worst) + " (<= 1e-9)"};
}

Outcome oracle_ppt_agreement() {
  int compared = 0, disagreements = 0, excluded = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) {
    RandomStream rng(kSeed + 2, t);
    const auto rho = random_mixed_state(rng);
    const double min_pt = min_partial_transpose_eigenvalue(rho);
    const double c = concurrence(rho).concurrence;
    if (std::abs(min_pt) < 1e-6 || (c > 0.0 && c < 1e-6)) {
      ++excluded;
      continue;
    }
    ++compared;
    if (is_entangled_ppt(rho) != (c > 1e-9)) ++disagreements;
  }
  return {disagreements == 0 && compared > 0,
          std::to_string(disagreements) + " disagreements over " + std::to_string(compared) +
              " states (" + std::to_string(excluded) + " in the 1e-6 boundary band)"};
}

Outcome oracle_werner() {
  const double r = 1.0 / std::sqrt(2.0);
  const Matrix4cd singlet = densify(PureState<double>(Vector4cd(0, r, -r, 0))).matrix();
  Matrix4cd yy = Matrix4cd::Zero();
  yy(0, 3) = yy(3, 0) = -1;
  yy(1, 2) = yy(2, 1) = 1;
  double worst = 0.0, closed_vs_brute = 0.0;
  for (double x : {0.0, 0.2, 1.0 / 3.0, 0.5, 0.8, 1.0}) {
    const Matrix4cd m = x * singlet + (1.0 - x) * Matrix4cd::Identity() * 0.25;
    const double closed = std::max(0.0, (3.0 * x - 1.0) / 2.0);
    worst = std::max(worst, std::abs(concurrence(DensityMatrix<double>(m)).concurrence - closed));

    const Eigen::ComplexEigenSolver<Matrix4cd> ces(m * (yy * m.conjugate() * yy), false);
    std::array<double, 4> l{};
    for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(ces.eigenvalues()(i).real(), 0.0));
    std::sort(l.begin(), l.end(), std::greater<>());
    closed_vs_brute =
        std::max(closed_vs_brute, std::abs(std::max(0.0, l[0] - l[1] - l[2] - l[3]) - closed));
  }
  return {worst <= 1e-9 && closed_vs_brute <= 1e-9,
          "max |C - max(0,(3x-1)/2)| " + fmt(worst) + " (<= 1e-9); closed form vs brute force " +
              fmt(closed_vs_brute)};
}

Outcome measure_correctness() {
  constexpr int n = 100000;
  double purity_sum = 0.0, mean_max = 0.0;
  Eigen::Matrix4d second = Eigen::Matrix4d::Zero();
  for (int i = 0; i < n; ++i) {
    RandomStream a(kSeed + 3, static_cast<std::uint64_t>(i));
    purity_sum += purity(random_mixed_state(a));
    RandomStream b(kSeed + 4, static_cast<std::uint64_t>(i));
    second += haar_unitary(b).matrix().cwiseAbs2();
    RandomStream c(kSeed + 5, static_cast<std::uint64_t>(i));
    const auto p = simplex_point(c);
    mean_max += *std::max_element(p.lambdas.begin(), p.lambdas.end());
  }
  const double mean_purity = purity_sum / n;
  const double moment_dev = (second / n - Eigen::Matrix4d::Constant(0.25)).cwiseAbs().maxCoeff();
  const double mm = mean_max / n;
  const bool ok = std::abs(mean_purity - 0.4) <= 0.005 && moment_dev <= 0.003 &&
                  std::abs(mm - 25.0 / 48.0) <= 0.003;
  return {ok, "mean purity " + fmt(mean_purity) + " (0.400 +- 0.005); max |E|U_ij|^2 - 1/4| " +
                  fmt(moment_dev) + " (<= 0.003); simplex mean max " + fmt(mm) + " vs 25/48 (+- 0.003)"};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "hcnot_acceptance_determinism";
  fs::remove_all(root);
  bool ok = true;
  std::string detail;
  for (auto kind : {EnsembleKind::kPure, EnsembleKind::kMixed}) {
    std::vector<fs::path> dirs;
    for (unsigned workers : {1u, 1u, 4u}) {
      cli::RunConfig c;
      c.ensemble = kind;
      c.trials = 50000;
      c.seed = kSeed;
      c.workers = workers;
      c.output_dir = root / (std::string(to_string(kind)) + "_" + std::to_string(dirs.size()));
      if (cli::execute(c) != cli::kOk) return {false, "execute failed"};
      dirs.push_back(c.output_dir);
    }
    for (const char* f : {"delta_hist.csv", "conditional_mean.csv", "e0_hist.csv"}) {
      const std::string ref = slurp(dirs[0] / f);
      for (std::size_t k = 1; k < dirs.size(); ++k) ok = ok && !ref.empty() && slurp(dirs[k] / f) == ref;
    }
  }
  fs::remove_all(root);
  detail = "pure and mixed, 5e4 trials, runs with workers 1, 1, 4: CSVs byte-identical";
  return {ok, ok ? detail : "CSV outputs differ"};
}

}  // namespace

int main() {
  report("1 Bell-basis exactness", bell_basis_exactness());
  report("2 pure-state mean entanglement", pure_mean_entanglement());
  report("3 Delta E = 0 peak ordering", central_peak_ordering());
  report("4a pure conditional profile", pure_profile_shape());
  report("4b mixed conditional profile", mixed_profile_shape());
  report("5a concurrence vs 2|ad-bc|", oracle_pure_concurrence());
  report("5b PPT vs concurrence verdict", oracle_ppt_agreement());
  report("5c Werner closed form", oracle_werner());
  report("6 measure correctness", measure_correctness());
  report("7 determinism", determinism());
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "ACCEPTED" : "REJECTED", failures);
  return failures == 0 ? 0 : 1;
}
