#include <doctest.h>

#include <cmath>

#include "chord/counting.hpp"
#include "chord/diagram.hpp"
#include "chord/series.hpp"

using namespace chord;

namespace {

using Q = std::vector<mpq_class>;

Q coeffs(const FormalSeries& s) { return Q(s.coefficients().begin(), s.coefficients().end()); }

mpq_class q(long p, long d = 1) {
  mpq_class r(p, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("kernel expansions") {
  CHECK(coeffs(sqrt_one_minus_2z(5)) == Q{1, -1, q(-1, 2), q(-1, 2), q(-5, 8), q(-7, 8)});
  CHECK(coeffs(log_one_minus_2z(4)) == Q{0, -2, -2, q(-8, 3), -4});
  const FormalSeries s = sqrt_one_minus_2z(30);
  CHECK(s * s == polynomial({1, -2}, 30));
  CHECK(one_minus_2z_pow(q(1, 2), 30) == s);
  CHECK(power(polynomial({1, -2}, 30), q(1, 2)) == s);
  CHECK(log(polynomial({1, -2}, 30)) == log_one_minus_2z(30));
  CHECK(inverse(s) * s == polynomial({1}, 30));
}

TEST_CASE("calculus identities") {
  FormalSeries s(Q{0, 3, q(-1, 7), 5, 0, q(2, 9)});
  CHECK(differentiate(integrate(s)) == s);
  CHECK(integrate(differentiate(s)) == s);  // zero constant slot
  CHECK(differentiate(s, 2) == differentiate(differentiate(s)));
  CHECK(integrate(s, 4)[0] == 4);
}

TEST_CASE("conventions are never mixed") {
  FormalSeries a(3, Convention::kOrdinary), b(3, Convention::kExponential);
  CHECK_THROWS(a + b);
  CHECK_THROWS(a * b);
  CHECK(convention_name(Convention::kExponential) == "exponential");
  FormalSeries u(Q{0, 1, 1, 1}, Convention::kExponential);
  CHECK(u.counted(3) == 6);
  CHECK((a + polynomial({1, 2, 3, 4}, 2)).order() == 2);
}

TEST_CASE("EGFs from counts") {
  const CountTable b = b_table(12, 2);
  CHECK(egf_from_column(b, 0, 12) == closed_form_B(0, 12));
  const FormalSeries c = egf_from_column(c_table(4), 0, 4);
  CHECK(coeffs(c) == Q{0, 1, q(1, 2), q(4, 6), q(27, 24)});
  CHECK(coeffs(egf_from_counts({}, 3)) == Q{0, 0, 0, 0});
  CHECK_THROWS(egf_from_column(b, 0, 13));
}

TEST_CASE("closed forms reproduce the counts") {
  const FormalSeries b1 = closed_form_B(1, 6), b2 = closed_form_B(2, 6), b0 = closed_form_B(0, 8);
  CHECK(b1.counted(1) == 1);
  CHECK(b1.counted(2) == 1);
  CHECK(b1.counted(3) == 4);
  CHECK(b1.counted(4) == 23);
  CHECK(b1[4] == q(23, 24));
  CHECK(b2.counted(3) == 4);
  CHECK(b2.counted(4) == 27);
  for (int n = 1; n <= 8; ++n) CHECK(b0.counted(n) == double_factorial(2 * n - 3));
  CHECK_THROWS_AS(closed_form_B(3, 5), DomainError);

  const FormalSeries a = closed_form_A(6);
  for (int n = 0; n <= 3; ++n) CHECK(a[n] == 0);
  CHECK(a.counted(4) == 3);
  CHECK(a.counted(5) == 30);
}

TEST_CASE("closed forms equal the b table to order 40") {
  const CountTable b = b_table(40, 2);
  for (int k = 0; k <= 2; ++k) CHECK(egf_from_column(b, k, 40) == closed_form_B(k, 40));
}

TEST_CASE("log expansions in closed form") {
  const FormalSeries lead = leading_log(6);
  CHECK(lead[1] == 1);
  CHECK(lead[2] == q(1, 2));
  CHECK(lead[3] == q(1, 2));
  CHECK(lead[4] == q(5, 8));
  CHECK(lead == egf_from_column(b_table(6, 0), 0, 6).with_convention(lead.convention()));

  const FormalSeries nll = next_to_leading(6);
  CHECK(nll[0] == 1);
  CHECK(nll[1] == 1);
  CHECK(nll[2] == 2);
  CHECK(nll[3] == q(23, 6));
  CHECK(nll == differentiate(closed_form_B(1, 7)).with_convention(nll.convention()));

  const NextToNext nn = next_to_next(20), rhs = next_to_next_rhs(20);
  CHECK(nn.f0f2[0] == 1);
  CHECK(nn.f1_sq[0] == 0);
  CHECK(nn.f0f2 == rhs.f0f2);
  CHECK(nn.f1_sq == rhs.f1_sq);
}

TEST_CASE("b rows satisfy the differential relation above degree k") {
  const int order = 30;
  const CountTable b = b_table(order, 4), c = c_table(order);
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    const FormalSeries r = b_differential_residual(b, c, k, order);
    for (int n = k + 1; n <= r.order(); ++n) CHECK(r[n] == 0);
  }
}

TEST_CASE("asymptotic ratios") {
  CHECK(std::abs(log_of(mpz_class(1) << 5000) - 5000 * std::log(2.0)) < 1e-9 * 5000);
  double previous = 0;
  bool first = true;
  for_each_b_row(10000, 1, [&](int n, const std::vector<mpz_class>& row) {
    if (n == 10000) CHECK(std::abs(bnk_asymptotic_ratio(row[0], n, 0) - 1) < 0.02);
    if (n >= 1000 && n % 1000 == 0) {
      const double r = bnk_asymptotic_ratio(row[1], n, 1);
      CHECK(r > 0);
      if (!first) CHECK(std::abs(r - 1) < std::abs(previous - 1));
      previous = r;
      first = false;
    }
  });
  CHECK_THROWS(bnk_asymptotic_ratio(1, 1, 0));
}
