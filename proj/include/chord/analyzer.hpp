#pragma once

// Near-linear structural analysis of a matching, used on the hot paths
// (exhaustive enumeration and sampling).
//
// Chords are inserted by decreasing left endpoint. When chord r = (a, b) is
// inserted, every chord already present starts after a, and the components
// it crosses are exactly the present components whose span strictly contains
// b. Component spans form a laminar family, so those components are a nested
// chain, and they are the components left behind when r is removed from its
// own final component. Reading the resulting tree in preorder, with children
// ordered by first vertex, gives the intersection order; terminal chords are
// the leaves.

#include <cstdint>
#include <span>
#include <vector>

#include "chord/diagram.hpp"

namespace chord {

struct Shape {
  bool connected = false;
  int n = 0;
  // Remaining fields are filled only for connected matchings.
  int terminal_count = 0;
  int first_terminal = 0;
  int adjacent_pairs = 0;
  ClassSet classes;
};

class Analyzer {
 public:
  // partner has 2n+1 entries, partner[p] for p in 1..2n.
  Shape analyze(std::span<const int> partner);

  // Full data for the last analyzed matching (connected only).
  std::span<const int> terminal_ranks() const { return terminal_ranks_; }
  std::span<const int> rank_of_chord() const { return rank_; }
  std::span<const int> root_component_sizes() const { return root_sizes_; }
  // Chord index i refers to the i-th chord by left endpoint.
  int chord_left(int index) const { return left_[index]; }

 private:
  int find(int x);
  int prev_alive(int x);

  std::vector<int> left_, right_, index_before_;
  std::vector<int> dsu_, alive_prev_, hi_, enclosing_, size_;
  std::vector<int> first_child_, next_sibling_, top_level_;
  std::vector<int> rank_, terminal_ranks_, root_sizes_, stack_;
};

TerminalData fast_terminal_data(const ChordDiagram& diagram);
bool fast_is_connected(const ChordDiagram& diagram);

}  // namespace chord
