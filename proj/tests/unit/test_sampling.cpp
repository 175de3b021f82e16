#include <doctest.h>

#include <cmath>
#include <numeric>

#include "chord/counting.hpp"
#include "chord/enumerate.hpp"
#include "chord/sampling.hpp"

using namespace chord;

TEST_CASE("bounded integers stay in range and cover it") {
  Rng rng(1);
  std::vector<int> hits(7);
  for (int i = 0; i < 7000; ++i) {
    const auto v = rng.below(7);
    REQUIRE(v < 7);
    ++hits[v];
  }
  for (int h : hits) CHECK(h > 800);
  CHECK(rng.below(1) == 0);
  CHECK(shard_seed(5, 0) != shard_seed(5, 1));
  CHECK(shard_seed(5, 1) == shard_seed(5, 1));
}

TEST_CASE("sampled diagrams are valid and connected") {
  Rng rng(42);
  CHECK(format_diagram(uniform_connected(1, rng)) == "1-2");
  for (int n : {2, 3, 10, 57, 300}) {
    for (int i = 0; i < 20; ++i) {
      const ChordDiagram d = uniform_connected(n, rng);
      REQUIRE(d.size() == n);
      REQUIRE(is_connected(d));
    }
  }
  ConnectedSampler sampler(30);
  for (int i = 0; i < 50; ++i) {
    const Shape& s = sampler.draw_connected(rng);
    REQUIRE(s.connected);
    const TerminalData t = terminal_data(ChordDiagram::from_partners_unchecked(sampler.partner()));
    REQUIRE(s.terminal_count == t.terminal_count());
    REQUIRE(s.first_terminal == t.first_terminal);
    REQUIRE(s.adjacent_pairs == t.adjacent_pairs);
  }
  CHECK(sampler.accepted() == 50);
  CHECK(sampler.attempts() >= 50);
}

TEST_CASE("every connected 5-diagram is drawn at rate 1/248") {
  const std::uint64_t samples = 100000;
  const auto counts = diagram_frequencies(5, samples, 11);
  CHECK(counts.size() == 248);
  const double p = 1.0 / 248, sigma = std::sqrt(samples * p * (1 - p));
  for (const auto& [partner, count] : counts) REQUIRE(std::abs(count - samples * p) < 5 * sigma);
  CHECK(chi_squared_uniform(counts, 248) < 330);  // 0.999 quantile for 247 dof is about 323
}

TEST_CASE("estimates are reproducible and histograms are complete") {
  const Statistic t = Statistic::parse("terminal_count");
  const SampleStats a = estimate(t, 40, 3000, 9, 3), b = estimate(t, 40, 3000, 9, 3);
  CHECK(a == b);
  std::uint64_t total = 0;
  for (const auto& [v, c] : a.histogram) total += c;
  CHECK(total == 3000);
  CHECK(a.variance >= 0);
  CHECK(a.rng == kRngId);
  CHECK(a.attempts >= a.samples);
  CHECK(estimate(t, 40, 3000, 10, 3).histogram != a.histogram);
  const auto all = estimate_all({t, Statistic::parse("first_terminal")}, 40, 3000, 9, 3);
  CHECK(all[0] == a);
}

TEST_CASE("moments from a histogram") {
  SampleStats s;
  s.histogram = {{1, 2}, {2, 1}, {4, 1}};
  s.samples = 4;
  finalize_moments(s);
  CHECK(s.mean == doctest::Approx(2.0));
  CHECK(s.variance == doctest::Approx(2.0));
  CHECK(s.std_error == doctest::Approx(std::sqrt(0.5)));
  CHECK(s.skewness > 0);
}

TEST_CASE("sampled distribution is close to the exact one") {
  const Statistic t = Statistic::parse("terminal_count");
  const SampleStats s = estimate(t, 6, 200000, 3, 2);
  CHECK(total_variation(s, exact_distribution(6, t)) < 0.01);
}

TEST_CASE("acceptance rate near 1/e") {
  const AcceptanceRate r = acceptance_rate(100, 100000, 5);
  CHECK(r.attempts == 100000);
  CHECK(std::abs(r.rate() - 0.368) < 0.01);
}

TEST_CASE("class frequencies at n = 100") {
  const std::uint64_t samples = 20000;
  const SampleStats s = estimate(Statistic::parse("class"), 100, samples, 17, 2);
  const CountTable c = c_table(100);
  const double p = mpq_class(class_sizes(c, 100).c1, c.at(100)).get_d();
  const double observed = s.histogram.count(1) ? static_cast<double>(s.histogram.at(1)) / samples : 0;
  CHECK(std::abs(observed - p) < 3 * std::sqrt(p * (1 - p) / samples));
}

TEST_CASE("growth difference requires samples") {
  CHECK_THROWS(growth_diff(Statistic::parse("terminal_count"), 10, 0, 1));
  const GrowthDiff g = growth_diff(Statistic::parse("terminal_count"), 50, 4000, 1, 2);
  CHECK(g.difference == doctest::Approx(g.at_2n.mean - g.at_n.mean));
  CHECK(g.std_error > 0);
}

TEST_CASE("first-terminal density diagnostic") {
  const FirstTerminalDensity d = first_terminal_density(200, 20000, 4, 10, 2);
  REQUIRE(d.bins.size() == 10);
  double mass = 0;
  for (const auto& b : d.bins) mass += b.density / 10;
  CHECK(mass == doctest::Approx(1.0));
  CHECK(std::abs(d.mean_ratio - 2.0 / 3) < 0.05);
  const FirstTerminalDensity one = first_terminal_density(50, 100, 4, 2);
  CHECK(one.bins[0].reference == doctest::Approx(std::pow(0.75, -0.5) / 2));
}
