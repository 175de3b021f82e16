#include "chord/counting.hpp"

#include <algorithm>
#include <functional>

#include "chord/diagram.hpp"
#include "chord/enumerate.hpp"

namespace chord {

std::string table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::kConnected: return "c";
    case TableKind::kFirstTerminalAtLeast: return "b";
    case TableKind::kTopBlock: return "o";
    case TableKind::kTwoTerminal: return "a";
    case TableKind::kDoubleFactorial: return "double_factorial";
  }
  return "?";
}

mpz_class double_factorial(long m) {
  if (m < -1 || m % 2 == 0)
    throw DomainError("double factorial needs an odd m >= -1, got " + std::to_string(m));
  mpz_class out;
  if (m <= 0) return 1;
  mpz_2fac_ui(out.get_mpz_t(), static_cast<unsigned long>(m));
  return out;
}

namespace {

CountTable one_dimensional(TableKind kind, int max_n) {
  if (max_n < 1) throw DomainError("table size must be >= 1, got " + std::to_string(max_n));
  CountTable t;
  t.kind = kind;
  t.max_n = max_n;
  t.entries.assign(max_n + 1, std::vector<mpz_class>(1, 0));
  return t;
}

}  // namespace

CountTable c_table(int max_n) {
  CountTable t = one_dimensional(TableKind::kConnected, max_n);
  std::vector<mpz_class> c(max_n + 1, 0);
  c[1] = 1;
  mpz_class term;
  for (int n = 2; n <= max_n; ++n) {
    mpz_class sum = 0;
    for (int k = 1; k < n; ++k) {
      term = c[k] * c[n - k];
      mpz_addmul_ui(sum.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(2 * k - 1));
    }
    c[n] = sum;
  }
  for (int n = 1; n <= max_n; ++n) t.entries[n][0] = c[n];
  return t;
}

CountTable c_table_symmetric(int max_n) {
  CountTable t = one_dimensional(TableKind::kConnected, max_n);
  std::vector<mpz_class> c(max_n + 1, 0);
  c[1] = 1;
  for (int n = 2; n <= max_n; ++n) {
    mpz_class sum = 0;
    for (int k = 1; k < n; ++k) mpz_addmul(sum.get_mpz_t(), c[k].get_mpz_t(), c[n - k].get_mpz_t());
    c[n] = sum * (n - 1);
  }
  for (int n = 1; n <= max_n; ++n) t.entries[n][0] = c[n];
  return t;
}

void for_each_b_row(int max_n, int max_k,
                    const std::function<void(int, const std::vector<mpz_class>&)>& visit) {
  if (max_n < 1 || max_k < 0)
    throw DomainError("b table needs N >= 1 and K >= 0, got N = " + std::to_string(max_n) +
                      ", K = " + std::to_string(max_k));
  // Only c_i with i <= K enter, and only rows n-1 .. n-K-1 are needed.
  const CountTable c = c_table(std::max(max_k, 1));
  const std::size_t window = static_cast<std::size_t>(max_k) + 2;
  std::vector<std::vector<mpz_class>> ring(window, std::vector<mpz_class>(max_k + 1, 0));
  auto row = [&](int n) -> std::vector<mpz_class>& { return ring[static_cast<std::size_t>(n) % window]; };
  for (int k = 0; k <= max_k; ++k) row(1)[k] = 1;
  visit(1, row(1));
  for (int n = 2; n <= max_n; ++n) {
    std::vector<mpz_class>& cur = row(n);
    for (int k = 0; k <= max_k; ++k) {
      mpz_class v = row(n - 1)[k] * (2 * n - 3);
      for (int i = 1; i <= std::min(k, n - 2); ++i) v += (2 * i - 1) * c.at(i) * row(n - i)[k - i];
      cur[k] = v;
    }
    visit(n, cur);
  }
}

CountTable b_table(int max_n, int max_k) {
  CountTable t;
  t.kind = TableKind::kFirstTerminalAtLeast;
  t.max_n = max_n;
  t.max_k = max_k;
  t.note = "b(n,k) counts connected diagrams with b(C) >= n-k";
  t.entries.assign(std::max(max_n, 0) + 1, std::vector<mpz_class>(std::max(max_k, 0) + 1, 0));
  for_each_b_row(max_n, max_k, [&](int n, const std::vector<mpz_class>& row) { t.entries[n] = row; });
  return t;
}

CountTable o_table(int max_n, int max_s) {
  if (max_n < 1 || max_s < 1)
    throw DomainError("o table needs N >= 1 and K >= 1, got N = " + std::to_string(max_n) +
                      ", K = " + std::to_string(max_s));
  CountTable t;
  t.kind = TableKind::kTopBlock;
  t.max_n = max_n;
  t.max_k = max_s;
  t.note = "column s = number of terminal chords (block size); b-table index k = s - 1";
  t.entries.assign(max_n + 1, std::vector<mpz_class>(max_s + 1, 0));
  t.entries[1][1] = 1;
  for (int n = 2; n <= max_n; ++n)
    for (int s = 1; s <= max_s && s < n; ++s)
      t.entries[n][s] = (2 * n - 3) * t.entries[n - 1][s] + t.entries[n - 1][s - 1];
  return t;
}

namespace {

CountTable a_like(int max_n, bool scaled) {
  if (max_n < 4) throw DomainError("a table needs N >= 4, got " + std::to_string(max_n));
  CountTable t = one_dimensional(TableKind::kTwoTerminal, max_n);
  t.entries[4][0] = 3;
  for (int n = 5; n <= max_n; ++n) {
    const mpz_class prev = scaled ? (2 * n - 3) * t.entries[n - 1][0] : t.entries[n - 1][0];
    t.entries[n][0] = prev + 3 * double_factorial(2 * n - 7);
  }
  return t;
}

}  // namespace

CountTable a_table(int max_n) {
  CountTable t = a_like(max_n, true);
  t.note = "a(n) = (2n-3) a(n-1) + 3 (2n-7)!!, a(4) = 3; matches enumeration";
  return t;
}

CountTable a_table_unscaled(int max_n) {
  CountTable t = a_like(max_n, false);
  t.note = "a(n) = a(n-1) + 3 (2n-7)!!, a(4) = 3; disagrees with enumeration from n = 5";
  return t;
}

mpq_class ratio_residual(const CountTable& c, int n) {
  if (n < 5) throw DomainError("ratio residual needs n >= 5, got " + std::to_string(n));
  if (n > c.max_n) throw DomainError("c table too short for n = " + std::to_string(n));
  mpq_class ratio(c.at(n - 1), c.at(n));
  ratio.canonicalize();
  const mpz_class m = n;
  mpq_class expansion = mpq_class(1, 2 * n) + mpq_class(1, 4) / (m * m) -
                        mpq_class(1, 2) / (m * m * m) - mpq_class(29, 8) / (m * m * m * m);
  return ratio - expansion;
}

ClassSizes class_sizes(const CountTable& c, int n) {
  if (n < 4)
    throw DomainError("class sizes are only disjoint for n >= 4, got n = " + std::to_string(n) +
                      "; enumerate instead");
  if (n - 1 > c.max_n) throw DomainError("c table too short for n = " + std::to_string(n));
  ClassSizes sizes;
  sizes.c1 = (2 * n - 3) * c.at(n - 1);
  sizes.c2 = (2 * n - 5) * c.at(n - 2);
  sizes.c3 = sizes.c2;
  return sizes;
}

std::optional<int> stein_everett_violation(const CountTable& c, int from, int to) {
  for (int n = std::max(from, 2); n <= to; ++n) {
    const mpz_class& prev = c.at(n - 1);
    const mpz_class& cur = c.at(n);
    if (!((2 * n - 1) * prev < cur && cur < 2 * n * prev)) return n;
  }
  return std::nullopt;
}

std::optional<int> product_chain_violation(const CountTable& c, int from, int to) {
  for (int n = from; n <= to; ++n) {
    mpz_class last = c.at(1) * c.at(n - 1);
    for (int k = 2; k <= n / 2; ++k) {
      mpz_class cur = c.at(k) * c.at(n - k);
      if (cur > last) return n;
      last = std::move(cur);
    }
  }
  return std::nullopt;
}

std::optional<int> reversed_chain_violation(const CountTable& c, int from, int to) {
  for (int n = from; n <= to; ++n) {
    mpz_class last = c.at(2) * c.at(n - 2);
    for (int k = 3; k <= n / 2; ++k) {
      mpz_class cur = c.at(k) * c.at(n - k);
      if (cur < last) return n;
      last = std::move(cur);
    }
  }
  return std::nullopt;
}

mpq_class RationalRow::at(int k) const {
  if (k < min_k || k > max_k()) return 0;
  return p[k - min_k];
}

mpq_class RationalRow::sum() const {
  mpq_class s = 0;
  for (const auto& v : p) s += v;
  return s;
}

mpq_class RationalRow::mean() const {
  mpq_class s = 0;
  for (std::size_t j = 0; j < p.size(); ++j) s += p[j] * (min_k + static_cast<long>(j));
  return s;
}

void RationalRow::trim() {
  std::size_t lo = 0;
  while (lo < p.size() && p[lo] == 0) ++lo;
  std::size_t hi = p.size();
  while (hi > lo && p[hi - 1] == 0) --hi;
  p = std::vector<mpq_class>(p.begin() + static_cast<long>(lo), p.begin() + static_cast<long>(hi));
  min_k += static_cast<int>(lo);
}

RationalRow row_from_counts(const std::map<std::int64_t, mpz_class>& counts) {
  RationalRow row;
  if (counts.empty()) return row;
  mpz_class total = 0;
  for (const auto& [value, count] : counts) total += count;
  row.min_k = static_cast<int>(counts.begin()->first);
  row.p.assign(static_cast<std::size_t>(counts.rbegin()->first - counts.begin()->first + 1), 0);
  for (const auto& [value, count] : counts) {
    mpq_class q(count, total);
    q.canonicalize();
    row.p[value - row.min_k] = q;
  }
  return row;
}

namespace {

void require_normalized(const RationalRow& row, const std::string& what) {
  if (row.sum() != 1)
    throw DomainError(what + " must sum to exactly 1, sums to " + row.sum().get_str());
  for (const auto& v : row.p)
    if (v < 0) throw DomainError(what + " has a negative entry");
}

// m_n = (1 - 1/n) m_{n-1} + (alpha m_{n-2} + gamma)/(2n) + beta for n >= s + 2.
// With D_n = prod_{j=s+1}^{n} 2j and a common denominator Q of the initial
// values, E_n = Q D_n m_n is an integer and
// E_n = 2(n-1) E_{n-1} + 2 alpha (n-1) E_{n-2} + Q (gamma D_{n-1} + beta D_n).
mpq_class scaled_mean(int s, int n, const mpq_class& m_s, const mpq_class& m_s1, long alpha,
                      long gamma, long beta) {
  if (n == s) return m_s;
  if (n == s + 1) return m_s1;
  mpz_class q;
  mpz_lcm(q.get_mpz_t(), m_s.get_den_mpz_t(), m_s1.get_den_mpz_t());
  mpz_class d_prev = 1;               // D_s
  mpz_class d_cur = 2 * (s + 1);      // D_{s+1}
  mpz_class e_prev = m_s.get_num() * (q / m_s.get_den());
  mpz_class e_cur = m_s1.get_num() * (q / m_s1.get_den()) * d_cur;
  for (int j = s + 2; j <= n; ++j) {
    const mpz_class d_next = d_cur * (2 * j);
    mpz_class e_next = e_cur * (2 * (j - 1));
    e_next += e_prev * (2 * alpha * (j - 1));
    e_next += q * (gamma * d_cur + beta * d_next);
    e_prev = std::move(e_cur);
    e_cur = std::move(e_next);
    d_prev = std::move(d_cur);
    d_cur = d_next;
  }
  mpq_class out(e_cur, q * d_cur);
  out.canonicalize();
  return out;
}

}  // namespace

std::vector<RationalRow> g_initial_rows() {
  const Statistic first{StatisticKind::kFirstTerminal};
  std::vector<RationalRow> rows;
  for (int n = 1; n <= 3; ++n) rows.push_back(row_from_counts(exact_distribution(n, first).counts));
  return rows;
}

RationalTable g_table(int max_n, const std::vector<RationalRow>& initial) {
  if (max_n < 4) throw DomainError("g table needs N >= 4, got " + std::to_string(max_n));
  if (initial.size() != 3) throw DomainError("g table needs initial rows for n = 1, 2, 3");
  for (int n = 1; n <= 3; ++n) require_normalized(initial[n - 1], "g row " + std::to_string(n));
  RationalTable t;
  t.kind = "g";
  t.start = 1;
  t.rows = initial;
  for (int n = 4; n <= max_n; ++n) {
    const RationalRow& r1 = t.row(n - 1);
    const RationalRow& r2 = t.row(n - 2);
    const mpq_class w1(n - 1, n);
    const mpq_class w2(1, 2 * n);
    RationalRow row;
    row.min_k = 2;
    row.p.assign(n - 1, 0);
    row.p[0] = w2;
    for (int k = 3; k <= n; ++k) {
      mpq_class v = w1 * r1.at(k - 1) + w2 * r2.at(k - 1);
      row.p[k - 2] = v;
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

mpq_class first_terminal_proxy(int n, const std::vector<RationalRow>& initial) {
  if (initial.size() != 3) throw DomainError("first terminal proxy needs rows for n = 1, 2, 3");
  if (n < 1) throw DomainError("first terminal proxy needs n >= 1");
  if (n <= 3) return initial[n - 1].mean();
  return scaled_mean(2, n, initial[1].mean(), initial[2].mean(), 1, 1, 1);
}

RationalTable q_table(int lambda2, int lambda3, int n0, int max_n, const RationalRow& row_n0,
                      const RationalRow& row_n0_plus_1) {
  if (n0 < 1) throw DomainError("q table needs n0 >= 1, got " + std::to_string(n0));
  if (max_n < n0 + 1)
    throw DomainError("q table needs N >= n0 + 1, got N = " + std::to_string(max_n));
  require_normalized(row_n0, "q initial row n0");
  require_normalized(row_n0_plus_1, "q initial row n0+1");
  RationalTable t;
  t.kind = "q";
  t.start = n0;
  t.lambda2 = lambda2;
  t.lambda3 = lambda3;
  t.rows = {row_n0, row_n0_plus_1};
  const int shift_lo = std::min({0, lambda2, lambda3});
  const int shift_hi = std::max({0, lambda2, lambda3});
  for (int n = n0 + 2; n <= max_n; ++n) {
    const RationalRow& r1 = t.row(n - 1);
    const RationalRow& r2 = t.row(n - 2);
    const mpq_class w1(n - 1, n);
    const mpq_class w2(1, 2 * n);
    RationalRow row;
    row.min_k = std::min(r1.min_k, r2.min_k + shift_lo);
    const int hi = std::max(r1.max_k(), r2.max_k() + shift_hi);
    row.p.assign(hi - row.min_k + 1, 0);
    for (int k = row.min_k; k <= hi; ++k)
      row.p[k - row.min_k] = w1 * r1.at(k) + w2 * (r2.at(k - lambda2) + r2.at(k - lambda3));
    row.trim();
    t.rows.push_back(std::move(row));
  }
  return t;
}

mpq_class q_row_mean(int lambda2, int lambda3, int n0, int n, const RationalRow& row_n0,
                     const RationalRow& row_n0_plus_1) {
  if (n < n0) throw DomainError("q row mean needs n >= n0");
  require_normalized(row_n0, "q initial row n0");
  require_normalized(row_n0_plus_1, "q initial row n0+1");
  return scaled_mean(n0, n, row_n0.mean(), row_n0_plus_1.mean(), 2, lambda2 + lambda3, 0);
}

}  // namespace chord
