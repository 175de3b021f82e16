#include "chord/sampling.hpp"

#include <cmath>
#include <set>
#include <thread>

namespace chord {

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
  std::uint64_t z = seed + (shard + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

ConnectedSampler::ConnectedSampler(int n) : n_(n) {
  if (n < 1) throw DomainError("sampling needs n >= 1, got n = " + std::to_string(n));
  partner_.assign(2 * n + 1, 0);
  free_.reserve(2 * n);
  slot_.assign(2 * n + 1, 0);
}

bool ConnectedSampler::draw_matching(Rng& rng) {
  const int points = 2 * n_;
  free_.clear();
  for (int p = 1; p <= points; ++p) {
    partner_[p] = 0;
    slot_[p] = static_cast<int>(free_.size());
    free_.push_back(p);
  }
  auto take = [this](int slot) {
    const int p = free_[slot];
    const int last = free_.back();
    free_[slot] = last;
    slot_[last] = slot;
    free_.pop_back();
    return p;
  };
  int a = 1;
  for (int step = 0; step < n_; ++step) {
    while (partner_[a] != 0) ++a;
    take(slot_[a]);
    const int q = take(static_cast<int>(rng.below(free_.size())));
    partner_[a] = q;
    partner_[q] = a;
    if (q == a + 1 && n_ >= 2) return false;
  }
  return true;
}

const Shape& ConnectedSampler::draw_connected(Rng& rng) {
  for (;;) {
    ++attempts_;
    if (!draw_matching(rng)) continue;
    shape_ = analyzer_.analyze(partner_);
    if (shape_.connected) {
      ++accepted_;
      return shape_;
    }
  }
}

ChordDiagram uniform_connected(int n, Rng& rng) {
  ConnectedSampler sampler(n);
  sampler.draw_connected(rng);
  return ChordDiagram::from_partners_unchecked(sampler.partner());
}

void finalize_moments(SampleStats& stats) {
  std::uint64_t count = 0;
  long double sum = 0;
  for (const auto& [v, c] : stats.histogram) {
    count += c;
    sum += static_cast<long double>(v) * c;
  }
  stats.samples = count;
  if (count == 0) return;
  const long double mean = sum / count;
  long double m2 = 0, m3 = 0;
  for (const auto& [v, c] : stats.histogram) {
    const long double d = v - mean;
    m2 += d * d * c;
    m3 += d * d * d * c;
  }
  stats.mean = static_cast<double>(mean);
  stats.variance = count > 1 ? static_cast<double>(m2 / (count - 1)) : 0.0;
  stats.std_error = std::sqrt(stats.variance / static_cast<double>(count));
  stats.skewness = m2 > 0 ? static_cast<double>((m3 / count) / std::pow(m2 / count, 1.5L)) : 0.0;
}

namespace {

std::vector<SampleStats> run_shards(const std::vector<Statistic>& statistics, int n,
                                    std::uint64_t samples, std::uint64_t seed, int shards,
                                    int shard_offset) {
  if (samples == 0) throw DomainError("sample count must be >= 1");
  if (shards < 1) throw DomainError("shard count must be >= 1, got " + std::to_string(shards));
  if (n < 1) throw DomainError("sampling needs n >= 1, got n = " + std::to_string(n));

  using Histogram = std::map<std::int64_t, std::uint64_t>;
  std::vector<std::vector<Histogram>> partial(shards, std::vector<Histogram>(statistics.size()));
  std::vector<std::uint64_t> attempts(shards, 0);

  auto run = [&](int s) {
    const std::uint64_t quota = samples / shards + (static_cast<std::uint64_t>(s) < samples % shards);
    Rng rng(shard_seed(seed, static_cast<std::uint64_t>(s + shard_offset)));
    ConnectedSampler sampler(n);
    for (std::uint64_t i = 0; i < quota; ++i) {
      const Shape& shape = sampler.draw_connected(rng);
      for (std::size_t k = 0; k < statistics.size(); ++k)
        ++partial[s][k][statistics[k].evaluate(shape, sampler.analyzer())];
    }
    attempts[s] = sampler.attempts();
  };
  if (shards == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int s = 0; s < shards; ++s) threads.emplace_back(run, s);
    for (auto& t : threads) t.join();
  }

  std::uint64_t total_attempts = 0;
  for (auto a : attempts) total_attempts += a;
  std::vector<SampleStats> out(statistics.size());
  for (std::size_t k = 0; k < statistics.size(); ++k) {
    SampleStats& st = out[k];
    st.n = n;
    st.statistic = statistics[k].name();
    st.seed = seed;
    st.shards = shards;
    st.attempts = total_attempts;
    for (int s = 0; s < shards; ++s)
      for (const auto& [v, c] : partial[s][k]) st.histogram[v] += c;
    finalize_moments(st);
  }
  return out;
}

}  // namespace

std::vector<SampleStats> estimate_all(const std::vector<Statistic>& statistics, int n,
                                      std::uint64_t samples, std::uint64_t seed, int shards) {
  return run_shards(statistics, n, samples, seed, shards, 0);
}

SampleStats estimate(const Statistic& statistic, int n, std::uint64_t samples, std::uint64_t seed,
                     int shards) {
  return estimate_all({statistic}, n, samples, seed, shards).front();
}

AcceptanceRate acceptance_rate(int n, std::uint64_t attempts, std::uint64_t seed) {
  ConnectedSampler sampler(n);
  Analyzer analyzer;
  Rng rng(shard_seed(seed, 0));
  AcceptanceRate out;
  out.attempts = attempts;
  for (std::uint64_t i = 0; i < attempts; ++i)
    if (sampler.draw_matching(rng) && analyzer.analyze(sampler.partner()).connected) ++out.accepted;
  return out;
}

std::vector<GrowthDiff> growth_diff_all(const std::vector<Statistic>& statistics, int n,
                                        std::uint64_t samples, std::uint64_t seed, int shards) {
  const auto low = run_shards(statistics, n, samples, seed, shards, 0);
  const auto high = run_shards(statistics, 2 * n, samples, seed, shards, shards);
  std::vector<GrowthDiff> out(statistics.size());
  for (std::size_t k = 0; k < statistics.size(); ++k) {
    out[k].at_n = low[k];
    out[k].at_2n = high[k];
    out[k].difference = high[k].mean - low[k].mean;
    out[k].std_error = std::hypot(high[k].std_error, low[k].std_error);
  }
  return out;
}

GrowthDiff growth_diff(const Statistic& statistic, int n, std::uint64_t samples,
                       std::uint64_t seed, int shards) {
  return growth_diff_all({statistic}, n, samples, seed, shards).front();
}

FirstTerminalDensity first_terminal_density(int n, std::uint64_t samples, std::uint64_t seed,
                                            int bins, int shards) {
  if (bins < 2) throw DomainError("density needs bins >= 2, got " + std::to_string(bins));
  FirstTerminalDensity out;
  out.stats = estimate(Statistic{StatisticKind::kFirstTerminal}, n, samples, seed, shards);
  std::vector<std::uint64_t> mass(bins, 0);
  for (const auto& [f, c] : out.stats.histogram) {
    const auto bin = std::min<std::int64_t>(f * bins / n, bins - 1);
    mass[bin] += c;
  }
  for (int b = 0; b < bins; ++b) {
    DensityBin bin;
    bin.mid = (b + 0.5) / bins;
    bin.density = static_cast<double>(mass[b]) / static_cast<double>(out.stats.samples) * bins;
    bin.reference = 0.5 / std::sqrt(1.0 - bin.mid);
    out.bins.push_back(bin);
  }
  out.mean_ratio = out.stats.mean / n;
  return out;
}

std::map<std::vector<int>, std::uint64_t> diagram_frequencies(int n, std::uint64_t samples,
                                                              std::uint64_t seed) {
  std::map<std::vector<int>, std::uint64_t> counts;
  ConnectedSampler sampler(n);
  Rng rng(shard_seed(seed, 0));
  for (std::uint64_t i = 0; i < samples; ++i) {
    sampler.draw_connected(rng);
    const auto p = sampler.partner();
    ++counts[std::vector<int>(p.begin(), p.end())];
  }
  return counts;
}

double chi_squared_uniform(const std::map<std::vector<int>, std::uint64_t>& counts,
                           std::uint64_t cells) {
  std::uint64_t total = 0;
  for (const auto& [key, c] : counts) total += c;
  const double expected = static_cast<double>(total) / static_cast<double>(cells);
  double chi2 = 0;
  for (const auto& [key, c] : counts) {
    const double d = static_cast<double>(c) - expected;
    chi2 += d * d / expected;
  }
  chi2 += static_cast<double>(cells - counts.size()) * expected;
  return chi2;
}

double total_variation(const SampleStats& stats, const ExactDistribution& exact) {
  std::set<std::int64_t> values;
  for (const auto& [v, c] : stats.histogram) values.insert(v);
  for (const auto& [v, c] : exact.counts) values.insert(v);
  double tv = 0;
  for (std::int64_t v : values) {
    const auto it = stats.histogram.find(v);
    const double observed =
        it == stats.histogram.end() ? 0.0 : static_cast<double>(it->second) / stats.samples;
    tv += std::abs(observed - exact.probability(v).get_d());
  }
  return tv / 2;
}

}  // namespace chord
