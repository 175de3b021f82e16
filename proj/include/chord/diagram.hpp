#pragma once

// Rooted chord diagrams on the points {1, ..., 2n} (linear convention) and the
// structural algorithms on them: oriented intersection graph, connectivity,
// intersection order, terminal chords and root-removal classes.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chord {

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Precondition violations on otherwise valid values (disconnected input where
// a connected diagram is required, out-of-range parameters, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Chord {
  int left = 0;   // 1-based, left < right
  int right = 0;

  friend bool operator==(const Chord&, const Chord&) = default;
  friend auto operator<=>(const Chord&, const Chord&) = default;
};

// A perfect matching of {1..2n}. Chords are stored sorted by left endpoint,
// so chords()[0] is always the root chord (the one containing point 1).
class ChordDiagram {
 public:
  // Validates and canonicalizes. Throws ParseError naming the offending pair.
  static ChordDiagram from_chords(std::vector<Chord> chords);

  // Builds from a partner array: partner[p] for p in 1..2n (index 0 unused).
  // Only checked in debug builds; used by the enumerator and sampler.
  static ChordDiagram from_partners_unchecked(std::span<const int> partner);

  int size() const { return static_cast<int>(chords_.size()); }
  int points() const { return 2 * size(); }
  std::span<const Chord> chords() const { return chords_; }
  const Chord& chord(int index) const { return chords_[index]; }
  const Chord& root() const { return chords_.front(); }

  // Chord index owning a point (1-based point).
  int chord_at(int point) const { return owner_[point]; }
  int partner(int point) const;

  friend bool operator==(const ChordDiagram& a, const ChordDiagram& b) {
    return a.chords_ == b.chords_;
  }
  friend auto operator<=>(const ChordDiagram& a, const ChordDiagram& b) {
    return a.chords_ <=> b.chords_;
  }

 private:
  ChordDiagram() = default;
  void build_owner();

  std::vector<Chord> chords_;
  std::vector<int> owner_;  // owner_[p] = chord index, p in 1..2n
};

// "1-4 2-6 3-5" <-> diagram. Tokens may come in any order; output is
// canonical (sorted by smaller endpoint, single spaces).
ChordDiagram parse_diagram(std::string_view text);
std::string format_diagram(const ChordDiagram& diagram);

struct OrientedGraph {
  int vertex_count = 0;
  std::vector<std::vector<int>> out;  // chord index -> targets, ascending

  std::size_t edge_count() const;
  bool has_edge(int from, int to) const;
};

// Edge u -> v iff a_u < a_v < b_u < b_v.
OrientedGraph intersection_digraph(const ChordDiagram& diagram);

bool crosses(const Chord& u, const Chord& v);

bool is_connected(const ChordDiagram& diagram);

struct TerminalData {
  std::vector<int> order;      // chord index -> rank in 1..n
  std::vector<int> terminals;  // sorted terminal ranks t_1 < ... < t_k
  int first_terminal = 0;      // b(C) = t_1
  std::vector<int> gaps;       // t_{j+1} - t_j
  int adjacent_pairs = 0;      // gaps equal to 1

  int terminal_count() const { return static_cast<int>(terminals.size()); }
  int gap_count(int length) const;

  friend bool operator==(const TerminalData&, const TerminalData&) = default;
};

// Intersection order by the recursive definition: root first, then the
// components left after removing it, ordered by first vertex, each ordered
// recursively. Runs with an explicit work stack of depth <= n.
// Throws DomainError for disconnected input.
TerminalData terminal_data(const ChordDiagram& diagram);

enum class DiagramClass : std::uint8_t {
  kC1 = 1,  // root removal leaves one component
  kC2 = 2,  // a single chord, then a component of size n-2
  kC3 = 4,  // a component of size n-2, then a single chord
};

// Bit set over DiagramClass. Empty means "other". At n = 3 the
// chord-then-chord diagram carries both kC2 and kC3.
class ClassSet {
 public:
  constexpr ClassSet() = default;
  constexpr explicit ClassSet(std::uint8_t bits) : bits_(bits) {}

  constexpr bool contains(DiagramClass c) const {
    return (bits_ & static_cast<std::uint8_t>(c)) != 0;
  }
  constexpr void insert(DiagramClass c) { bits_ |= static_cast<std::uint8_t>(c); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  std::string to_string() const;  // "{C1}", "{C2,C3}", "{}"

  friend constexpr bool operator==(ClassSet, ClassSet) = default;

 private:
  std::uint8_t bits_ = 0;
};

// Classes from the sizes of the root-removal components (ordered by first
// vertex) of a diagram with n chords.
ClassSet classify_components(std::span<const int> component_sizes, int n);

// Throws DomainError when n < 2 or the diagram is disconnected.
ClassSet classify(const ChordDiagram& diagram);

// Exponents of f_0, f_1, ... (trailing zeros trimmed).
using Exponents = std::vector<int>;

// f_{b-i} * f_0^{n-k} * prod_j f_{t_j - t_{j-1}}, the monomial a connected
// diagram contributes at L-power i. Throws DomainError when b(C) < i.
Exponents sol_monomial(const TerminalData& data, int n, int l_power);
Exponents sol_monomial(const ChordDiagram& diagram, int l_power);

}  // namespace chord
