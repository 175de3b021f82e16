#pragma once

// Exact-uniform sampling of connected chord diagrams by rejection from
// uniform perfect matchings, and sharded Monte-Carlo estimation of terminal
// chord statistics.
//
// Determinism: shard s draws from std::mt19937_64 seeded with
// splitmix64(seed, s); bounded integers use Lemire's multiply-shift with
// rejection, so the stream does not depend on the standard library's
// distribution implementations. Shards merge integer histograms, hence the
// same (n, S, seed, shards) reproduces the same output bit for bit.

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "chord/analyzer.hpp"
#include "chord/diagram.hpp"
#include "chord/enumerate.hpp"
#include "chord/statistic.hpp"

namespace chord {

inline constexpr const char* kRngId = "mt19937_64/splitmix64-shard-seed/lemire-bounded";

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

class ConnectedSampler {
 public:
  explicit ConnectedSampler(int n);

  // Uniform perfect matching of {1..2n}: the smallest free point is paired
  // with a uniform free point. Returns false as soon as an isolated chord
  // (a, a+1) appears with n >= 2, since such a matching cannot be connected.
  bool draw_matching(Rng& rng);
  // Repeats draw_matching + analysis until connected.
  const Shape& draw_connected(Rng& rng);

  std::span<const int> partner() const { return partner_; }
  const Analyzer& analyzer() const { return analyzer_; }
  const Shape& shape() const { return shape_; }
  std::uint64_t attempts() const { return attempts_; }
  std::uint64_t accepted() const { return accepted_; }

 private:
  int n_;
  std::vector<int> partner_, free_, slot_;
  Analyzer analyzer_;
  Shape shape_;
  std::uint64_t attempts_ = 0;
  std::uint64_t accepted_ = 0;
};

ChordDiagram uniform_connected(int n, Rng& rng);

struct SampleStats {
  int n = 0;
  std::string statistic;
  std::uint64_t samples = 0;
  double mean = 0;
  double variance = 0;  // unbiased
  double std_error = 0;
  double skewness = 0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::uint64_t seed = 0;
  int shards = 1;
  std::string rng = kRngId;
  std::uint64_t attempts = 0;

  friend bool operator==(const SampleStats&, const SampleStats&) = default;
};

// Moments from a merged histogram.
void finalize_moments(SampleStats& stats);

// One pass over S connected samples, evaluating every statistic on each.
// Shards run on their own threads.
std::vector<SampleStats> estimate_all(const std::vector<Statistic>& statistics, int n,
                                      std::uint64_t samples, std::uint64_t seed, int shards = 1);
SampleStats estimate(const Statistic& statistic, int n, std::uint64_t samples,
                     std::uint64_t seed, int shards = 1);

struct AcceptanceRate {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  double rate() const { return attempts ? static_cast<double>(accepted) / attempts : 0.0; }
};
// Fraction of uniform matchings that are connected, over a fixed number of
// attempts (early-aborted draws count as rejected attempts).
AcceptanceRate acceptance_rate(int n, std::uint64_t attempts, std::uint64_t seed);

struct GrowthDiff {
  SampleStats at_n, at_2n;
  double difference = 0;
  double std_error = 0;
};
// mean(2n) - mean(n); both runs use `seed` with disjoint shard streams
// (the 2n run offsets shard indices by `shards`). Throws for S = 0.
GrowthDiff growth_diff(const Statistic& statistic, int n, std::uint64_t samples,
                       std::uint64_t seed, int shards = 1);
std::vector<GrowthDiff> growth_diff_all(const std::vector<Statistic>& statistics, int n,
                                        std::uint64_t samples, std::uint64_t seed,
                                        int shards = 1);

struct DensityBin {
  double mid = 0;
  double density = 0;    // bin mass * bins
  double reference = 0;  // (1 - mid)^{-1/2} / 2
};
struct FirstTerminalDensity {
  SampleStats stats;  // first_terminal
  std::vector<DensityBin> bins;
  double mean_ratio = 0;  // mean of f_n / n
};
// f_n / n binned on [0, 1); f_n = n goes to the last bin.
FirstTerminalDensity first_terminal_density(int n, std::uint64_t samples, std::uint64_t seed,
                                            int bins, int shards = 1);

// Counts of each sampled diagram, keyed by partner array.
std::map<std::vector<int>, std::uint64_t> diagram_frequencies(int n, std::uint64_t samples,
                                                              std::uint64_t seed);

// Pearson statistic of observed counts against `cells` equiprobable outcomes
// (outcomes never observed count as zero).
double chi_squared_uniform(const std::map<std::vector<int>, std::uint64_t>& counts,
                           std::uint64_t cells);
// Total variation distance between a sampled histogram and an exact
// distribution.
double total_variation(const SampleStats& stats, const ExactDistribution& exact);

}  // namespace chord
