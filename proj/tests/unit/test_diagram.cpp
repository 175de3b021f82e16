#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "chord/analyzer.hpp"
#include "chord/diagram.hpp"
#include "chord/enumerate.hpp"

using namespace chord;

namespace {

const char* const kThreeChord = "1-4 2-6 3-5";
const char* const kSixChord = "1-10 2-6 3-11 4-8 5-7 9-12";

int chord_index(const ChordDiagram& d, int left) { return d.chord_at(left); }

}  // namespace

TEST_CASE("parse_diagram canonicalizes and round-trips") {
  const ChordDiagram d = parse_diagram("3-5 1-4   2-6");
  CHECK(d.size() == 3);
  CHECK(format_diagram(d) == kThreeChord);
  CHECK(d.root() == Chord{1, 4});
  CHECK(format_diagram(parse_diagram("1-2")) == "1-2");
}

TEST_CASE("parse_diagram rejects malformed input naming the token") {
  CHECK_THROWS_AS(parse_diagram("1-1 2-3"), ParseError);
  CHECK_THROWS_WITH_AS(parse_diagram("1-1 2-3"), doctest::Contains("1-1"), ParseError);
  CHECK_THROWS_AS(parse_diagram("2-1"), ParseError);      // a >= b
  CHECK_THROWS_AS(parse_diagram("1-3 3-4"), ParseError);   // duplicate endpoint
  CHECK_THROWS_AS(parse_diagram("1-5 2-3"), ParseError);   // out of range, 4 missing
  CHECK_THROWS_AS(parse_diagram("1-x"), ParseError);
  CHECK_THROWS_AS(parse_diagram(""), ParseError);
}

TEST_CASE("intersection_digraph orientation") {
  const ChordDiagram d = parse_diagram(kThreeChord);
  const OrientedGraph g = intersection_digraph(d);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(0, chord_index(d, 2)));
  CHECK(g.has_edge(0, chord_index(d, 3)));
  CHECK_FALSE(g.has_edge(chord_index(d, 2), chord_index(d, 3)));
  CHECK_FALSE(g.has_edge(chord_index(d, 3), chord_index(d, 2)));

  CHECK(intersection_digraph(parse_diagram("1-2")).edge_count() == 0);
  const OrientedGraph pair = intersection_digraph(parse_diagram("1-3 2-4"));
  CHECK(pair.edge_count() == 1);
  CHECK(pair.has_edge(0, 1));
}

TEST_CASE("is_connected on reference diagrams") {
  CHECK(is_connected(parse_diagram(kThreeChord)));
  CHECK_FALSE(is_connected(parse_diagram("1-2 3-4")));
  CHECK(is_connected(parse_diagram(kSixChord)));
  CHECK(is_connected(parse_diagram("1-2")));
}

TEST_CASE("terminal_data on the six-chord reference diagram") {
  const ChordDiagram d = parse_diagram(kSixChord);
  const TerminalData t = terminal_data(d);
  const std::vector<std::pair<int, int>> expected_rank = {{1, 1}, {2, 2}, {3, 3}, {9, 4}, {4, 5}, {5, 6}};
  for (const auto& [left, rank] : expected_rank) CHECK(t.order[chord_index(d, left)] == rank);
  CHECK(t.terminals == std::vector<int>{4, 5, 6});
  CHECK(t.first_terminal == 4);
  CHECK(t.gaps == std::vector<int>{1, 1});
  CHECK(t.adjacent_pairs == 2);
  CHECK(t.gap_count(1) == 2);
  CHECK(t.gap_count(2) == 0);
}

TEST_CASE("terminal_data on the three-chord reference diagram") {
  const TerminalData t = terminal_data(parse_diagram(kThreeChord));
  CHECK(t.terminals == std::vector<int>{2, 3});
  CHECK(t.first_terminal == 2);
  CHECK_THROWS_AS(terminal_data(parse_diagram("1-2 3-4")), DomainError);
}

TEST_CASE("classify reference diagrams") {
  CHECK(classify(parse_diagram("1-3 2-4")) == ClassSet(1));
  CHECK(classify(parse_diagram("1-5 2-8 3-6 4-7")) == ClassSet(2));
  CHECK(classify(parse_diagram("1-6 2-4 3-8 5-7")) == ClassSet(4));
  CHECK(classify(parse_diagram("1-6 2-4 3-8 5-7")).to_string() == "{C3}");
  CHECK_THROWS_AS(classify(parse_diagram("1-2")), DomainError);
  CHECK_THROWS_AS(classify(parse_diagram("1-2 3-4")), DomainError);
}

TEST_CASE("sol_monomial reference values") {
  CHECK(sol_monomial(parse_diagram(kSixChord), 4) == Exponents{4, 2});
  CHECK(sol_monomial(parse_diagram("1-2"), 1) == Exponents{1});
  CHECK(sol_monomial(parse_diagram(kThreeChord), 2) == Exponents{2, 1});
  CHECK(sol_monomial(parse_diagram(kThreeChord), 1) == Exponents{1, 2});
  CHECK_THROWS_AS(sol_monomial(parse_diagram(kThreeChord), 3), DomainError);
}

TEST_CASE("structural invariants over all connected diagrams, n <= 7") {
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    int c2_and_c3 = 0;
    for (const ChordDiagram& d : connected_diagrams(n)) {
      const TerminalData t = terminal_data(d);
      // Intersection order is a permutation with the root first.
      std::vector<int> ranks = t.order;
      std::sort(ranks.begin(), ranks.end());
      std::vector<int> iota(n);
      std::iota(iota.begin(), iota.end(), 1);
      REQUIRE(ranks == iota);
      REQUIRE(t.order[0] == 1);
      REQUIRE_FALSE(t.terminals.empty());
      // Terminals are exactly the sinks of the oriented graph.
      const OrientedGraph g = intersection_digraph(d);
      std::vector<int> sinks;
      for (int v = 0; v < n; ++v)
        if (g.out[v].empty()) sinks.push_back(t.order[v]);
      std::sort(sinks.begin(), sinks.end());
      REQUIRE(sinks == t.terminals);
      // The chord through the last point is the first terminal chord.
      REQUIRE(t.order[d.chord_at(2 * n)] == t.first_terminal);
      if (n >= 2) {
        REQUIRE_FALSE(g.out[0].empty());  // root is never terminal
        REQUIRE(t.first_terminal >= 2);
        const ClassSet cls = classify(d);
        const bool both = cls.contains(DiagramClass::kC2) && cls.contains(DiagramClass::kC3);
        if (both) ++c2_and_c3;
        if (n >= 4) REQUIRE_FALSE(both);
      }
      // Monomial shape at the deepest admissible L-power.
      const Exponents e = sol_monomial(t, n, t.first_terminal);
      int degree = 0, weight = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        degree += e[i];
        weight += static_cast<int>(i) * e[i];
      }
      REQUIRE(degree == n - t.terminal_count() + 1 + static_cast<int>(t.gaps.size()));
      REQUIRE(weight == t.terminals.back() - t.first_terminal);
    }
    if (n == 3) CHECK(c2_and_c3 == 1);
  }
}

TEST_CASE("fast analyzer agrees with the recursive definition") {
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    for (const ChordDiagram& d : matchings(n)) {
      const bool connected = is_connected(d);
      REQUIRE(fast_is_connected(d) == connected);
      if (connected) REQUIRE(fast_terminal_data(d) == terminal_data(d));
    }
  }
}

TEST_CASE("fast analyzer agrees on random large matchings") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 10 + static_cast<int>(rng() % 60);
    std::vector<int> points(2 * n);
    std::iota(points.begin(), points.end(), 1);
    std::shuffle(points.begin(), points.end(), rng);
    std::vector<Chord> chords;
    for (int i = 0; i < n; ++i)
      chords.push_back({std::min(points[2 * i], points[2 * i + 1]), std::max(points[2 * i], points[2 * i + 1])});
    const ChordDiagram d = ChordDiagram::from_chords(chords);
    const bool connected = is_connected(d);
    REQUIRE(fast_is_connected(d) == connected);
    if (connected) REQUIRE(fast_terminal_data(d) == terminal_data(d));
  }
}
