#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "chord/counting.hpp"
#include "chord/enumerate.hpp"

using namespace chord;

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("matching streams: counts, order and reference lists") {
  std::vector<std::string> two;
  for (const auto& d : matchings(2)) two.push_back(format_diagram(d));
  CHECK(two == std::vector<std::string>{"1-2 3-4", "1-3 2-4", "1-4 2-3"});
  CHECK(matchings(3).size() == 15);
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    MatchingStream s(n);
    std::uint64_t count = 0;
    std::vector<int> previous;
    while (s.next()) {
      ++count;
      std::vector<int> current(s.partner().begin(), s.partner().end());
      // Lexicographic order of the canonical pair list, read off the partners
      // of points in increasing left-endpoint order.
      if (!previous.empty()) {
        std::vector<int> a, b;
        std::vector<bool> seen_a(2 * n + 1), seen_b(2 * n + 1);
        for (int p = 1; p <= 2 * n; ++p) {
          if (!seen_a[p]) { a.push_back(previous[p]); seen_a[previous[p]] = true; }
          if (!seen_b[p]) { b.push_back(current[p]); seen_b[current[p]] = true; }
        }
        REQUIRE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
      }
      previous = std::move(current);
    }
    CHECK(mpz_class(count) == double_factorial(2 * n - 1));
  }
  CHECK(matchings(7).size() == 135135);
}

TEST_CASE("root-partner sub-streams partition the full stream") {
  const int n = 5;
  std::set<std::vector<int>> all;
  std::uint64_t total = 0;
  for (int r = 2; r <= 2 * n; ++r) {
    MatchingStream s(n, r);
    while (s.next()) {
      REQUIRE(s.partner()[1] == r);
      all.emplace(s.partner().begin(), s.partner().end());
      ++total;
    }
  }
  CHECK(total == 945);
  CHECK(all.size() == 945);
}

TEST_CASE("connected diagram counts") {
  CHECK(connected_diagrams(1).size() == 1);
  CHECK(connected_diagrams(3).size() == 4);
  CHECK(connected_diagrams(4).size() == 27);
  const CountTable c = c_table(7);
  for (int n = 1; n <= 7; ++n) {
    ConnectedStream s(n);
    std::uint64_t count = 0;
    while (s.next()) ++count;
    CHECK(mpz_class(count) == c.at(n));
  }
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(MatchingStream(10), DomainError);
  CHECK_THROWS_WITH(check_enumeration_size(10, false), doctest::Contains("--allow-large"));
  CHECK_NOTHROW(check_enumeration_size(10, true));
  CHECK_THROWS_AS(check_enumeration_size(0, true), DomainError);
}

TEST_CASE("exact distributions: reference values") {
  const ExactDistribution first2 = exact_distribution(2, Statistic::parse("first_terminal"));
  CHECK(first2.counts.size() == 1);
  CHECK(first2.counts.at(2) == 1);
  CHECK(exact_distribution(3, Statistic::parse("terminal_count")).total == 4);
  const ExactDistribution t5 = exact_distribution(5, Statistic::parse("terminal_count"));
  CHECK(t5.counts.at(1) == 105);
  CHECK(t5.probability(1) == mpq_class(105, 248));
}

TEST_CASE("exact distributions are independent of the worker count") {
  for (const char* name : {"terminal_count", "first_terminal", "class", "gap_count(2)"}) {
    CAPTURE(name);
    const Statistic s = Statistic::parse(name);
    const ExactDistribution one = exact_distribution(6, s, 1);
    const ExactDistribution four = exact_distribution(6, s, 4);
    CHECK(one.counts == four.counts);
    CHECK(one.total == four.total);
    CHECK(one.total == 2830);
  }
}

TEST_CASE("exact distributions match the independent goldens") {
  const std::filesystem::path dir = CHORD_GOLDEN_DIR;
  for (const char* name : {"terminal_count", "adjacent_pairs", "first_terminal", "gap_count(2)", "class"}) {
    std::string stem = name;
    std::erase(stem, '(');
    std::erase(stem, ')');
    for (int n = 1; n <= 7; ++n) {
      CAPTURE(name);
      CAPTURE(n);
      const std::string expected = read_file(dir / (stem + "_n" + std::to_string(n) + ".csv"));
      CHECK(distribution_csv(exact_distribution(n, Statistic::parse(name))) == expected);
    }
  }
}

TEST_CASE("oracle counts: reference values and identities") {
  const OracleCounts o4 = oracle_counts(4);
  CHECK(o4.b[0] == 15);
  CHECK(o4.b[1] == 23);
  CHECK(o4.b[2] == 27);
  CHECK(o4.a == 3);
  const OracleCounts o6 = oracle_counts(6);
  CHECK(o6.b[1] == 1689);
  CHECK(o6.b[2] == 2210);
  CHECK(oracle_counts(3).o[2] == 1);
  CHECK(oracle_counts(2).o[2] == 0);
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    const OracleCounts o = oracle_counts(n);
    CHECK(o.one_terminal == double_factorial(2 * n - 3));
    CHECK(o.b[n - 1] == o.c);
    // The telescoped first_terminal distribution reproduces b.
    const ExactDistribution f = exact_distribution(n, Statistic::parse("first_terminal"));
    for (int k = 0; k < n; ++k) {
      mpz_class at_least = 0;
      for (const auto& [value, count] : f.counts)
        if (value >= n - k) at_least += count;
      CHECK(at_least == o.b[k]);
    }
  }
}

TEST_CASE("statistic names") {
  CHECK(Statistic::parse("gap_count:3").name() == "gap_count(3)");
  CHECK(Statistic::parse("class_label").name() == "class");
  CHECK_THROWS_AS(Statistic::parse("gap_count(0)"), std::invalid_argument);
  CHECK_THROWS_AS(Statistic::parse("mystery"), std::invalid_argument);
}
