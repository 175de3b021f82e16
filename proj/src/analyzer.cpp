#include "chord/analyzer.hpp"

#include <algorithm>

namespace chord {

int Analyzer::find(int x) {
  int root = x;
  while (dsu_[root] != root) root = dsu_[root];
  while (dsu_[x] != root) {
    const int next = dsu_[x];
    dsu_[x] = root;
    x = next;
  }
  return root;
}

// Largest index <= x whose component is still alive; merged components point
// at their predecessor.
int Analyzer::prev_alive(int x) {
  int root = x;
  while (alive_prev_[root] != root) root = alive_prev_[root];
  while (alive_prev_[x] != root) {
    const int next = alive_prev_[x];
    alive_prev_[x] = root;
    x = next;
  }
  return root;
}

Shape Analyzer::analyze(std::span<const int> partner) {
  const int points = static_cast<int>(partner.size()) - 1;
  const int n = points / 2;
  Shape shape;
  shape.n = n;

  left_.clear();
  right_.clear();
  index_before_.assign(points + 2, -1);
  for (int p = 1; p <= points; ++p) {
    index_before_[p] = static_cast<int>(left_.size()) - 1;
    if (partner[p] > p) {
      left_.push_back(p);
      right_.push_back(partner[p]);
    }
  }

  dsu_.resize(n);
  alive_prev_.resize(n);
  hi_.assign(n, 0);
  enclosing_.assign(n, -1);
  size_.assign(n, 1);
  first_child_.assign(n, -1);
  next_sibling_.assign(n, -1);
  for (int i = 0; i < n; ++i) dsu_[i] = alive_prev_[i] = i;
  top_level_.clear();

  for (int r = n - 1; r >= 0; --r) {
    const int q = right_[r];
    const int idx = index_before_[q];
    int s = idx > r ? prev_alive(idx) : -1;
    if (s <= r) s = -1;
    // Innermost live component whose span strictly contains q.
    while (s >= 0 && hi_[s] < q) s = enclosing_[s] < 0 ? -1 : find(enclosing_[s]);

    int hi = q;
    while (s >= 0) {
      const int outer = enclosing_[s] < 0 ? -1 : find(enclosing_[s]);
      next_sibling_[s] = first_child_[r];
      first_child_[r] = s;
      hi = std::max(hi, hi_[s]);
      size_[r] += size_[s];
      dsu_[s] = r;
      alive_prev_[s] = s - 1;
      s = outer;
    }
    hi_[r] = hi;

    while (!top_level_.empty() && left_[top_level_.back()] < hi) {
      const int t = top_level_.back();
      top_level_.pop_back();
      if (dsu_[t] == t) enclosing_[t] = r;
    }
    top_level_.push_back(r);
  }

  // Nested spans are not crossings: connected iff the root's component
  // absorbed every chord.
  shape.connected = n >= 1 && size_[0] == n;
  rank_.assign(n, 0);
  terminal_ranks_.clear();
  root_sizes_.clear();
  if (!shape.connected) return shape;

  stack_.clear();
  stack_.push_back(0);
  int next_rank = 1;
  while (!stack_.empty()) {
    const int v = stack_.back();
    stack_.pop_back();
    rank_[v] = next_rank++;
    if (first_child_[v] < 0) terminal_ranks_.push_back(rank_[v]);
    if (v != 0 && next_sibling_[v] >= 0) stack_.push_back(next_sibling_[v]);
    if (first_child_[v] >= 0) stack_.push_back(first_child_[v]);
  }

  for (int c = first_child_[0]; c >= 0; c = next_sibling_[c]) root_sizes_.push_back(size_[c]);

  shape.terminal_count = static_cast<int>(terminal_ranks_.size());
  shape.first_terminal = terminal_ranks_.front();
  for (std::size_t j = 1; j < terminal_ranks_.size(); ++j)
    if (terminal_ranks_[j] == terminal_ranks_[j - 1] + 1) ++shape.adjacent_pairs;
  if (n >= 2) shape.classes = classify_components(root_sizes_, n);
  return shape;
}

namespace {

std::vector<int> partner_array(const ChordDiagram& diagram) {
  std::vector<int> partner(diagram.points() + 1, 0);
  for (const Chord& c : diagram.chords()) {
    partner[c.left] = c.right;
    partner[c.right] = c.left;
  }
  return partner;
}

}  // namespace

TerminalData fast_terminal_data(const ChordDiagram& diagram) {
  Analyzer analyzer;
  const auto partner = partner_array(diagram);
  const Shape shape = analyzer.analyze(partner);
  if (!shape.connected)
    throw DomainError("intersection order is only defined for connected diagrams");
  TerminalData data;
  const auto ranks = analyzer.rank_of_chord();
  data.order.assign(ranks.begin(), ranks.end());
  const auto terms = analyzer.terminal_ranks();
  data.terminals.assign(terms.begin(), terms.end());
  data.first_terminal = shape.first_terminal;
  for (std::size_t j = 1; j < data.terminals.size(); ++j)
    data.gaps.push_back(data.terminals[j] - data.terminals[j - 1]);
  data.adjacent_pairs = shape.adjacent_pairs;
  return data;
}

bool fast_is_connected(const ChordDiagram& diagram) {
  Analyzer analyzer;
  return analyzer.analyze(partner_array(diagram)).connected;
}

}  // namespace chord
