#include "chord/enumerate.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

namespace chord {

void check_enumeration_size(int n, bool allow_large) {
  if (n < 1) throw DomainError("enumeration needs n >= 1, got n = " + std::to_string(n));
  if (n > kEnumerationCap && !allow_large)
    throw DomainError("enumeration is capped at n <= " + std::to_string(kEnumerationCap) +
                      " (got n = " + std::to_string(n) + "); pass --allow-large to go further");
}

MatchingStream::MatchingStream(int n, bool allow_large) : MatchingStream(n, 0, allow_large) {}

MatchingStream::MatchingStream(int n, int root_partner, bool allow_large)
    : n_(n), fixed_root_(root_partner) {
  check_enumeration_size(n, allow_large);
  if (root_partner != 0 && (root_partner < 2 || root_partner > 2 * n))
    throw DomainError("root partner must lie in 2.." + std::to_string(2 * n) + ", got " +
                      std::to_string(root_partner));
  partner_.assign(2 * n + 1, 0);
  left_of_level_.assign(n, 0);
}

// Fills levels [level, n) with the lexicographically smallest completion.
void MatchingStream::complete_from(int level) {
  int a = level == 0 ? 1 : left_of_level_[level - 1];
  for (int lv = level; lv < n_; ++lv) {
    while (partner_[a] != 0) ++a;
    int q = a + 1;
    if (lv == 0 && fixed_root_ != 0) q = fixed_root_;
    while (partner_[q] != 0) ++q;
    left_of_level_[lv] = a;
    partner_[a] = q;
    partner_[q] = a;
  }
}

bool MatchingStream::advance(int level) {
  for (int lv = level; lv >= 0; --lv) {
    const int a = left_of_level_[lv];
    int q = partner_[a];
    partner_[a] = partner_[q] = 0;
    if (lv == 0 && fixed_root_ != 0) return false;
    for (++q; q <= 2 * n_ && partner_[q] != 0; ++q) {
    }
    if (q <= 2 * n_) {
      partner_[a] = q;
      partner_[q] = a;
      complete_from(lv + 1);
      return true;
    }
  }
  return false;
}

bool MatchingStream::next() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    complete_from(0);
    return true;
  }
  if (!advance(n_ - 1)) {
    done_ = true;
    return false;
  }
  return true;
}

bool ConnectedStream::next() {
  while (matchings_.next()) {
    shape_ = analyzer_.analyze(matchings_.partner());
    if (shape_.connected) return true;
  }
  return false;
}

std::vector<ChordDiagram> matchings(int n, bool allow_large) {
  std::vector<ChordDiagram> out;
  MatchingStream stream(n, allow_large);
  while (stream.next()) out.push_back(stream.diagram());
  return out;
}

std::vector<ChordDiagram> connected_diagrams(int n, bool allow_large) {
  std::vector<ChordDiagram> out;
  ConnectedStream stream(n, allow_large);
  while (stream.next()) out.push_back(stream.diagram());
  return out;
}

mpq_class ExactDistribution::probability(std::int64_t value) const {
  const auto it = counts.find(value);
  if (it == counts.end() || total == 0) return 0;
  mpq_class p(it->second, total);
  p.canonicalize();
  return p;
}

mpq_class ExactDistribution::mean() const {
  mpz_class weighted = 0;
  for (const auto& [value, count] : counts) weighted += mpz_class(static_cast<long>(value)) * count;
  mpq_class m(weighted, total);
  m.canonicalize();
  return m;
}

ExactDistribution exact_distribution(int n, const Statistic& statistic, int workers,
                                     bool allow_large) {
  check_enumeration_size(n, allow_large);
  workers = std::clamp(workers, 1, 2 * n - 1);

  std::vector<std::map<std::int64_t, mpz_class>> partial(workers);
  auto run = [&](int w) {
    for (int root = 2 + w; root <= 2 * n; root += workers) {
      ConnectedStream stream(n, root, allow_large);
      auto& local = partial[w];
      while (stream.next()) local[statistic.evaluate(stream.shape(), stream.analyzer())] += 1;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }

  ExactDistribution dist;
  dist.n = n;
  dist.statistic = statistic.name();
  for (const auto& part : partial)
    for (const auto& [value, count] : part) dist.counts[value] += count;
  for (const auto& [value, count] : dist.counts) dist.total += count;
  return dist;
}

std::string distribution_csv(const ExactDistribution& dist) {
  std::ostringstream out;
  out << "# " << dist.statistic << ',' << dist.n << ',' << dist.total.get_str() << '\n';
  out << "value,count\n";
  for (const auto& [value, count] : dist.counts) out << value << ',' << count.get_str() << '\n';
  return out.str();
}

OracleCounts oracle_counts(int n, bool allow_large) {
  check_enumeration_size(n, allow_large);
  OracleCounts oc;
  oc.n = n;
  oc.b.assign(n, 0);
  oc.o.assign(n + 1, 0);

  MatchingStream stream(n, allow_large);
  while (stream.next()) {
    const ChordDiagram d = stream.diagram();
    if (!is_connected(d)) continue;
    const TerminalData td = terminal_data(d);
    ++oc.c;
    for (int k = 0; k < n; ++k)
      if (td.first_terminal >= n - k) ++oc.b[k];

    const int s = td.terminal_count();
    if (td.terminals.front() == n - s + 1 && td.terminals.back() == n &&
        td.adjacent_pairs == s - 1)
      ++oc.o[s];
    if (s == 1) ++oc.one_terminal;
    if (n >= 3 && td.terminals == std::vector<int>{n - 2, n}) ++oc.a;
  }
  return oc;
}

}  // namespace chord
