#pragma once

// Exhaustive enumeration of perfect matchings and connected diagrams: the
// ground truth every recurrence, series and sampler is checked against.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "chord/analyzer.hpp"
#include "chord/diagram.hpp"
#include "chord/statistic.hpp"

namespace chord {

inline constexpr int kEnumerationCap = 9;

// Throws DomainError unless 1 <= n <= cap (or allow_large).
void check_enumeration_size(int n, bool allow_large);

// Single-consumer stream over the (2n-1)!! matchings of {1..2n} in
// lexicographic order of the canonical pair list. Built by always pairing the
// smallest free point with each larger free point in turn.
//
//   MatchingStream s(4);
//   while (s.next()) use(s.partner());
class MatchingStream {
 public:
  explicit MatchingStream(int n, bool allow_large = false);
  // Only matchings whose root chord is (1, root_partner); the 2n-1 such
  // sub-streams partition the full stream.
  MatchingStream(int n, int root_partner, bool allow_large = false);

  bool next();
  // partner()[p] for p in 1..2n; index 0 unused.
  std::span<const int> partner() const { return partner_; }
  ChordDiagram diagram() const { return ChordDiagram::from_partners_unchecked(partner_); }
  int n() const { return n_; }

 private:
  void complete_from(int level);
  bool advance(int level);

  int n_;
  int fixed_root_;  // 0 = free
  bool started_ = false;
  bool done_ = false;
  std::vector<int> partner_;
  std::vector<int> left_of_level_;
};

// Stream of the connected matchings; shape() / analyzer() describe the
// current one.
class ConnectedStream {
 public:
  explicit ConnectedStream(int n, bool allow_large = false) : matchings_(n, allow_large) {}
  ConnectedStream(int n, int root_partner, bool allow_large = false)
      : matchings_(n, root_partner, allow_large) {}

  bool next();
  std::span<const int> partner() const { return matchings_.partner(); }
  ChordDiagram diagram() const { return matchings_.diagram(); }
  const Shape& shape() const { return shape_; }
  const Analyzer& analyzer() const { return analyzer_; }

 private:
  MatchingStream matchings_;
  Analyzer analyzer_;
  Shape shape_;
};

std::vector<ChordDiagram> matchings(int n, bool allow_large = false);
std::vector<ChordDiagram> connected_diagrams(int n, bool allow_large = false);

struct ExactDistribution {
  int n = 0;
  std::string statistic;
  std::map<std::int64_t, mpz_class> counts;
  mpz_class total;

  mpq_class probability(std::int64_t value) const;
  mpq_class mean() const;
};

// Exact counts of a statistic over all connected diagrams with n chords.
// `workers` > 1 splits the stream by root partner across threads.
ExactDistribution exact_distribution(int n, const Statistic& statistic, int workers = 1,
                                     bool allow_large = false);

// Golden-file CSV: "# statistic,n,total" line, then "value,count" rows.
std::string distribution_csv(const ExactDistribution& dist);

struct OracleCounts {
  int n = 0;
  mpz_class c;                        // connected diagrams
  std::vector<mpz_class> b;           // b[k]: b(C) >= n - k, k = 0..n-1
  std::vector<mpz_class> o;           // o[s]: terminal ranks exactly {n-s+1..n}, s = 0..n
  mpz_class a;                        // terminal ranks exactly {n-2, n}
  mpz_class one_terminal;             // exactly one terminal chord
};

// Counts by evaluating the definitions on every connected diagram (uses the
// recursive terminal_data, not the fast analyzer). No recurrences involved.
OracleCounts oracle_counts(int n, bool allow_large = false);

}  // namespace chord
