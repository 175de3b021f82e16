#include <doctest.h>

#include <cmath>

#include "chord/counting.hpp"
#include "chord/enumerate.hpp"

using namespace chord;

namespace {

std::vector<mpz_class> column(const CountTable& t, int k, int from, int to) {
  std::vector<mpz_class> out;
  for (int n = from; n <= to; ++n) out.push_back(t.at(n, k));
  return out;
}

using Z = std::vector<mpz_class>;

}  // namespace

TEST_CASE("double factorial") {
  CHECK(double_factorial(5) == 15);
  CHECK(double_factorial(-1) == 1);
  CHECK(double_factorial(7) == 105);
  CHECK_THROWS_AS(double_factorial(4), DomainError);
  CHECK_THROWS_AS(double_factorial(-3), DomainError);
}

TEST_CASE("connected counts") {
  CHECK(column(c_table(4), 0, 1, 4) == Z{1, 1, 4, 27});
  const CountTable c6 = c_table(6);
  CHECK(c6.at(5) == 248);
  CHECK(c6.at(6) == 2830);
  CHECK(c_table(1).at(1) == 1);
  const CountTable a = c_table(300), b = c_table_symmetric(300);
  for (int n = 1; n <= 300; ++n) REQUIRE(a.at(n) == b.at(n));
}

TEST_CASE("first-terminal counts b") {
  const CountTable b = b_table(6, 5);
  CHECK(column(b, 0, 1, 6) == Z{1, 1, 3, 15, 105, 945});
  CHECK(column(b, 1, 1, 6) == Z{1, 1, 4, 23, 176, 1689});
  CHECK(b.at(5, 2) == 221);
  CHECK(b.at(6, 2) == 2210);
  const CountTable c = c_table(6);
  for (int n = 1; n <= 6; ++n)
    for (int k = n - 1; k <= 5; ++k) CHECK(b.at(n, k) == c.at(n));
}

TEST_CASE("streamed b rows equal the full table") {
  const CountTable b = b_table(60, 4);
  int rows = 0;
  for_each_b_row(60, 4, [&](int n, const std::vector<mpz_class>& row) {
    ++rows;
    for (int k = 0; k <= 4; ++k) REQUIRE(row.at(k) == b.at(n, k));
  });
  CHECK(rows == 60);
}

TEST_CASE("top-block counts o") {
  const CountTable o = o_table(7, 7);
  for (int n = 1; n <= 7; ++n) CHECK(o.at(n, 1) == double_factorial(2 * n - 3));
  CHECK(o.at(2, 2) == 0);
  CHECK(o.at(3, 2) == 1);
  CHECK_FALSE(o.note.empty());
}

TEST_CASE("two-terminal counts a") {
  const CountTable a = a_table(8);
  CHECK(a.at(3) == 0);
  CHECK(a.at(4) == 3);
  CHECK(a_table_unscaled(5).at(5) == 12);
}

TEST_CASE("all tables agree with the enumeration oracle, n <= 7") {
  const int N = 7;
  const CountTable c = c_table(N), b = b_table(N, N - 1), o = o_table(N, N), a = a_table(N);
  for (int n = 1; n <= N; ++n) {
    CAPTURE(n);
    const OracleCounts oracle = oracle_counts(n);
    CHECK(c.at(n) == oracle.c);
    for (int k = 0; k < n; ++k) CHECK(b.at(n, k) == oracle.b[k]);
    for (int s = 1; s <= n; ++s) CHECK(o.at(n, s) == oracle.o[s]);
    CHECK(a.at(n) == oracle.a);
  }
}

TEST_CASE("ratio residual and inequalities") {
  const CountTable c = c_table(400);
  CHECK(ratio_residual(c, 10) == ratio_residual(c_table(10), 10));
  CHECK(ratio_residual(c, 10) != 0);
  CHECK_FALSE(stein_everett_violation(c, 5, 400).has_value());
  CHECK_FALSE(product_chain_violation(c, 8, 400).has_value());
  CHECK(reversed_chain_violation(c, 8, 400) == 8);
  for (int n = 5; n <= 400; ++n) REQUIRE(mpq_class(c.at(n - 1), c.at(n)) < mpq_class(1, 2 * n - 1));
  const mpq_class r300 = ratio_residual(c, 300) * 300 * 300 * 300 * 300;
  CHECK(abs(r300) < mpq_class(1, 10));
  CHECK_THROWS(ratio_residual(c, 4));
}

TEST_CASE("class sizes agree with classify") {
  const CountTable c = c_table(7);
  const ClassSizes s4 = class_sizes(c, 4);
  CHECK(s4.c1 == 20);
  CHECK(s4.c2 == 3);
  CHECK(s4.c3 == 3);
  const ClassSizes s5 = class_sizes(c, 5);
  CHECK(s5.c1 == 189);
  CHECK(s5.c2 == 20);
  CHECK(s5.c3 == 20);
  CHECK_THROWS(class_sizes(c, 3));
  for (int n = 4; n <= 7; ++n) {
    const ExactDistribution d = exact_distribution(n, Statistic::parse("class"));
    auto count = [&](int bits) { return d.counts.count(bits) ? d.counts.at(bits) : mpz_class(0); };
    const ClassSizes s = class_sizes(c, n);
    CHECK(count(1) == s.c1);
    CHECK(count(2) == s.c2);
    CHECK(count(4) == s.c3);
    CHECK(s.c1 + s.c2 + s.c3 <= c.at(n));
  }
}

TEST_CASE("g table") {
  const auto initial = g_initial_rows();
  REQUIRE(initial.size() == 3);
  const RationalTable g = g_table(40, initial);
  CHECK(g.row(4).at(2) == mpq_class(1, 8));
  for (int n = 1; n <= 40; ++n) {
    CAPTURE(n);
    CHECK(g.row(n).sum() == 1);
    CHECK(g.row(n).mean() == first_terminal_proxy(n, initial));
  }
  const double ratio = first_terminal_proxy(20000, initial).get_d() / 20000;
  CHECK(std::abs(ratio - 2.0 / 3) < 0.01);
  std::vector<RationalRow> bad = initial;
  bad[2].p[0] += 1;
  CHECK_THROWS(g_table(10, bad));
}

TEST_CASE("q table") {
  const auto row = [](int n) { return row_from_counts(exact_distribution(n, Statistic::parse("terminal_count")).counts); };
  const RationalRow r6 = row(6), r7 = row(7);
  const RationalTable q = q_table(1, 1, 6, 60, r6, r7);
  for (int n = 6; n <= 60; ++n) {
    CHECK(q.row(n).sum() == 1);
    CHECK(q.row(n).mean() == q_row_mean(1, 1, 6, n, r6, r7));
  }
  // No shift with identical initial rows: every row keeps that shape.
  const RationalTable flat = q_table(0, 0, 6, 30, r6, r6);
  for (int n = 6; n <= 30; ++n) {
    CHECK(flat.row(n).min_k == r6.min_k);
    CHECK(flat.row(n).p == r6.p);
  }
  // Negative shifts move mass to lower k; indices below zero simply vanish.
  CHECK_NOTHROW(q_table(-1, 1, 6, 20, r6, r7));
  // Mean growth (lambda2 + lambda3)/2 * ln 2 per doubling.
  const double diff = q_row_mean(1, 1, 6, 4000, r6, r7).get_d() - q_row_mean(1, 1, 6, 2000, r6, r7).get_d();
  CHECK(std::abs(diff - std::log(2.0)) < 0.05);
  RationalRow unnormalized = r7;
  unnormalized.p[0] *= 2;
  CHECK_THROWS(q_table(1, 1, 6, 10, r6, unnormalized));
}
