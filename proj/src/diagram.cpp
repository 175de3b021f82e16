#include "chord/diagram.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace chord {
namespace {

std::string pair_text(const Chord& c) {
  return std::to_string(c.left) + "-" + std::to_string(c.right);
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Components of the crossing graph restricted to `group` (sorted by left
// endpoint). Components come out ordered by first vertex.
std::vector<std::vector<int>> components_of(const ChordDiagram& d,
                                            const std::vector<int>& group) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(group.size(), 0);
  for (std::size_t s = 0; s < group.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> members{s};
    seen[s] = 1;
    for (std::size_t head = 0; head < members.size(); ++head) {
      const Chord& x = d.chord(group[members[head]]);
      for (std::size_t t = 0; t < group.size(); ++t) {
        if (seen[t]) continue;
        const Chord& y = d.chord(group[t]);
        if (crosses(x, y) || crosses(y, x)) {
          seen[t] = 1;
          members.push_back(t);
        }
      }
    }
    std::sort(members.begin(), members.end());
    std::vector<int> comp;
    comp.reserve(members.size());
    for (std::size_t m : members) comp.push_back(group[m]);
    out.push_back(std::move(comp));
  }
  return out;
}

}  // namespace

ChordDiagram ChordDiagram::from_chords(std::vector<Chord> chords) {
  const int n = static_cast<int>(chords.size());
  if (n == 0) throw ParseError("empty diagram: at least one chord is required");
  std::vector<int> used(2 * n + 1, -1);
  for (int i = 0; i < n; ++i) {
    const Chord& c = chords[i];
    if (c.left >= c.right)
      throw ParseError("degenerate pair '" + pair_text(c) + "': need a < b");
    for (int p : {c.left, c.right}) {
      if (p < 1 || p > 2 * n)
        throw ParseError("pair '" + pair_text(c) + "': endpoint " + std::to_string(p) +
                         " outside 1.." + std::to_string(2 * n));
      if (used[p] >= 0)
        throw ParseError("pair '" + pair_text(c) + "': duplicate endpoint " +
                         std::to_string(p) + " (also in '" + pair_text(chords[used[p]]) + "')");
      used[p] = i;
    }
  }
  std::sort(chords.begin(), chords.end());
  ChordDiagram d;
  d.chords_ = std::move(chords);
  d.build_owner();
  return d;
}

ChordDiagram ChordDiagram::from_partners_unchecked(std::span<const int> partner) {
  ChordDiagram d;
  const int points = static_cast<int>(partner.size()) - 1;
  d.chords_.reserve(points / 2);
  for (int p = 1; p <= points; ++p)
    if (partner[p] > p) d.chords_.push_back({p, partner[p]});
  d.build_owner();
  return d;
}

void ChordDiagram::build_owner() {
  owner_.assign(points() + 1, -1);
  for (int i = 0; i < size(); ++i) {
    owner_[chords_[i].left] = i;
    owner_[chords_[i].right] = i;
  }
}

int ChordDiagram::partner(int point) const {
  const Chord& c = chords_[owner_[point]];
  return c.left == point ? c.right : c.left;
}

ChordDiagram parse_diagram(std::string_view text) {
  std::vector<Chord> chords;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    const auto dash = token.find('-');
    Chord c;
    if (dash == std::string::npos || !parse_int(std::string_view(token).substr(0, dash), c.left) ||
        !parse_int(std::string_view(token).substr(dash + 1), c.right) || c.left < 1 ||
        c.right < 1)
      throw ParseError("malformed token '" + token + "': expected a-b with positive integers");
    chords.push_back(c);
  }
  return ChordDiagram::from_chords(std::move(chords));
}

std::string format_diagram(const ChordDiagram& diagram) {
  std::string out;
  for (const Chord& c : diagram.chords()) {
    if (!out.empty()) out += ' ';
    out += pair_text(c);
  }
  return out;
}

bool crosses(const Chord& u, const Chord& v) {
  return u.left < v.left && v.left < u.right && u.right < v.right;
}

std::size_t OrientedGraph::edge_count() const {
  std::size_t total = 0;
  for (const auto& targets : out) total += targets.size();
  return total;
}

bool OrientedGraph::has_edge(int from, int to) const {
  return std::binary_search(out[from].begin(), out[from].end(), to);
}

OrientedGraph intersection_digraph(const ChordDiagram& diagram) {
  OrientedGraph g;
  g.vertex_count = diagram.size();
  g.out.resize(g.vertex_count);
  for (int u = 0; u < g.vertex_count; ++u)
    for (int v = u + 1; v < g.vertex_count; ++v)
      if (crosses(diagram.chord(u), diagram.chord(v))) g.out[u].push_back(v);
  return g;
}

bool is_connected(const ChordDiagram& diagram) {
  std::vector<int> all(diagram.size());
  for (int i = 0; i < diagram.size(); ++i) all[i] = i;
  return components_of(diagram, all).size() == 1;
}

int TerminalData::gap_count(int length) const {
  return static_cast<int>(std::count(gaps.begin(), gaps.end(), length));
}

TerminalData terminal_data(const ChordDiagram& diagram) {
  const int n = diagram.size();
  TerminalData data;
  data.order.assign(n, 0);

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  if (components_of(diagram, all).size() != 1)
    throw DomainError("intersection order is only defined for connected diagrams");

  // Each stack entry is a connected group sorted by left endpoint; groups are
  // disjoint, so the stack never holds more than n entries.
  std::vector<std::vector<int>> work;
  work.reserve(n);
  work.push_back(std::move(all));
  int next_rank = 1;
  while (!work.empty()) {
    std::vector<int> group = std::move(work.back());
    work.pop_back();
    data.order[group.front()] = next_rank++;
    group.erase(group.begin());
    auto comps = components_of(diagram, group);
    for (auto it = comps.rbegin(); it != comps.rend(); ++it) work.push_back(std::move(*it));
  }

  const OrientedGraph g = intersection_digraph(diagram);
  for (int v = 0; v < n; ++v)
    if (g.out[v].empty()) data.terminals.push_back(data.order[v]);
  std::sort(data.terminals.begin(), data.terminals.end());
  data.first_terminal = data.terminals.front();
  for (std::size_t j = 1; j < data.terminals.size(); ++j) {
    const int gap = data.terminals[j] - data.terminals[j - 1];
    data.gaps.push_back(gap);
    if (gap == 1) ++data.adjacent_pairs;
  }
  return data;
}

std::string ClassSet::to_string() const {
  std::string out = "{";
  auto add = [&](DiagramClass c, const char* name) {
    if (!contains(c)) return;
    if (out.size() > 1) out += ',';
    out += name;
  };
  add(DiagramClass::kC1, "C1");
  add(DiagramClass::kC2, "C2");
  add(DiagramClass::kC3, "C3");
  return out + "}";
}

ClassSet classify_components(std::span<const int> sizes, int n) {
  ClassSet set;
  if (sizes.size() == 1) set.insert(DiagramClass::kC1);
  if (sizes.size() == 2) {
    if (sizes[0] == 1 && sizes[1] == n - 2) set.insert(DiagramClass::kC2);
    if (sizes[0] == n - 2 && sizes[1] == 1) set.insert(DiagramClass::kC3);
  }
  return set;
}

ClassSet classify(const ChordDiagram& diagram) {
  const int n = diagram.size();
  if (n < 2) throw DomainError("classify needs n >= 2, got n = " + std::to_string(n));
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  if (components_of(diagram, all).size() != 1)
    throw DomainError("classify needs a connected diagram");
  all.erase(all.begin());
  std::vector<int> sizes;
  for (const auto& comp : components_of(diagram, all)) sizes.push_back(static_cast<int>(comp.size()));
  return classify_components(sizes, n);
}

Exponents sol_monomial(const TerminalData& data, int n, int l_power) {
  if (l_power < 0) throw DomainError("L-power must be non-negative");
  if (data.first_terminal < l_power)
    throw DomainError("b(C) = " + std::to_string(data.first_terminal) + " < L-power " +
                      std::to_string(l_power));
  Exponents e;
  auto bump = [&e](int index) {
    if (static_cast<int>(e.size()) <= index) e.resize(index + 1, 0);
    ++e[index];
  };
  bump(data.first_terminal - l_power);
  const int f0_power = n - data.terminal_count();
  if (f0_power > 0) {
    if (e.empty()) e.resize(1, 0);
    e[0] += f0_power;
  }
  for (int gap : data.gaps) bump(gap);
  while (!e.empty() && e.back() == 0) e.pop_back();
  return e;
}

Exponents sol_monomial(const ChordDiagram& diagram, int l_power) {
  return sol_monomial(terminal_data(diagram), diagram.size(), l_power);
}

}  // namespace chord
