#pragma once

// Exact big-integer and big-rational tables for the counting sequences of
// connected chord diagrams, plus the inequalities and ratio diagnostics that
// are checked on them.

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chord {

enum class TableKind { kConnected, kFirstTerminalAtLeast, kTopBlock, kTwoTerminal, kDoubleFactorial };

std::string table_kind_name(TableKind kind);  // "c", "b", "o", "a", "double_factorial"

// entries[n][k]; one-dimensional kinds use k = 0 only. Row 0 is unused.
struct CountTable {
  TableKind kind = TableKind::kConnected;
  int max_n = 0;
  int max_k = 0;
  std::string note;  // index convention, base values
  std::vector<std::vector<mpz_class>> entries;

  const mpz_class& at(int n, int k = 0) const { return entries.at(n).at(k); }
};

// m!! for odd m >= -1, with (-1)!! = 1. Throws DomainError otherwise.
mpz_class double_factorial(long m);

// c_1 = 1, c_n = sum_{k=1}^{n-1} (2k-1) c_k c_{n-k}.
CountTable c_table(int max_n);
// Same numbers from c_n = (n-1) sum_{k=1}^{n-1} c_k c_{n-k}; kept as an
// independent route.
CountTable c_table_symmetric(int max_n);

// b_{n,k}: connected diagrams with b(C) >= n - k.
// b_{1,k} = 1, b_{n,k} = (2n-3) b_{n-1,k} + sum_{i=1}^{min(k,n-2)} (2i-1) c_i b_{n-i,k-i}.
CountTable b_table(int max_n, int max_k);
// Same recurrence, streaming rows n = 1..N to `visit` while keeping only the
// K + 2 rows it needs.
void for_each_b_row(int max_n, int max_k,
                    const std::function<void(int n, const std::vector<mpz_class>& row)>& visit);

// o_{n,s}: connected diagrams whose terminal chords are exactly the last s in
// intersection order. Column s is the block size; o_{1,1} = 1, o_{n,s} = 0 for
// s >= n when n >= 2 (hard zero), otherwise o_{n,s} = (2n-3) o_{n-1,s} + o_{n-1,s-1}.
CountTable o_table(int max_n, int max_s);

// a_n: connected diagrams with terminal ranks exactly {n-2, n}.
// a_n = 0 for n <= 3, a_4 = 3, a_n = (2n-3) a_{n-1} + 3 (2n-7)!!.
CountTable a_table(int max_n);
// The recurrence a_n = a_{n-1} + 3 (2n-7)!! from the same base, kept only to
// report the disagreement.
CountTable a_table_unscaled(int max_n);

// c_{n-1}/c_n - (1/(2n) + 1/(4n^2) - 1/(2n^3) - 29/(8n^4)). Needs n >= 5 and
// c.max_n >= n.
mpq_class ratio_residual(const CountTable& c, int n);

struct ClassSizes {
  mpz_class c1, c2, c3;
};
// (2n-3) c_{n-1}, (2n-5) c_{n-2}, (2n-5) c_{n-2}. Throws for n < 4.
ClassSizes class_sizes(const CountTable& c, int n);

// First n in [from, to] violating (2n-1) c_{n-1} < c_n < 2n c_{n-1}.
std::optional<int> stein_everett_violation(const CountTable& c, int from, int to);
// First n in [from, to] violating c_k c_{n-k} <= c_{k-1} c_{n-k+1} for some
// 2 <= k <= floor(n/2), i.e. the products are nonincreasing toward the middle.
std::optional<int> product_chain_violation(const CountTable& c, int from, int to);
// The same chain read in the opposite direction (nondecreasing in k over
// 2 <= k <= floor(n/2)). Kept only to report that this reading fails.
std::optional<int> reversed_chain_violation(const CountTable& c, int from, int to);

// Exact rational distribution row with support on k >= min_k.
struct RationalRow {
  int min_k = 0;
  std::vector<mpq_class> p;  // p[j] = value at k = min_k + j

  mpq_class at(int k) const;
  int max_k() const { return min_k + static_cast<int>(p.size()) - 1; }
  mpq_class sum() const;
  mpq_class mean() const;
  void trim();  // drop zero entries at both ends
};

RationalRow row_from_counts(const std::map<std::int64_t, mpz_class>& counts);

struct RationalTable {
  std::string kind;  // "g" or "q"
  int start = 0;     // first stored row index
  int lambda2 = 0, lambda3 = 0;
  std::vector<RationalRow> rows;  // rows[i] holds n = start + i

  const RationalRow& row(int n) const { return rows.at(n - start); }
  int max_n() const { return start + static_cast<int>(rows.size()) - 1; }
};

// g_{n,2} = 1/(2n), g_{n,k} = (1 - 1/n) g_{n-1,k-1} + (1/(2n)) g_{n-2,k-1}
// for 3 <= k <= n, n >= 4. `initial` holds the rows for n = 1, 2, 3, each
// summing to 1. Rows carry denominators of size ~2^n n!, so keep max_n modest;
// use first_terminal_proxy for large n.
RationalTable g_table(int max_n, const std::vector<RationalRow>& initial);
// Initial rows from the exact first_terminal distribution at n = 1, 2, 3.
std::vector<RationalRow> g_initial_rows();

// sum_k k g_{n,k} for the given n, from the scalar recurrence
// m_n = (1 - 1/n) m_{n-1} + m_{n-2}/(2n) + 1 + 1/(2n), run in scaled integers.
// Exact; O(n) big-integer steps.
mpq_class first_terminal_proxy(int n, const std::vector<RationalRow>& initial);

// q_{n,k} = (1 - 1/n) q_{n-1,k} + (1/(2n)) (q_{n-2,k-lambda2} + q_{n-2,k-lambda3})
// for n >= n0 + 2. Both initial rows must sum to exactly 1.
RationalTable q_table(int lambda2, int lambda3, int n0, int max_n, const RationalRow& row_n0,
                      const RationalRow& row_n0_plus_1);

// Mean of q-row n from the scalar recurrence
// mean_n = (1 - 1/n) mean_{n-1} + (2 mean_{n-2} + lambda2 + lambda3)/(2n). Exact.
mpq_class q_row_mean(int lambda2, int lambda3, int n0, int n, const RationalRow& row_n0,
                     const RationalRow& row_n0_plus_1);

}  // namespace chord
