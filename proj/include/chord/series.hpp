#pragma once

// Truncated formal power series with exact rational coefficients, and the
// generating functions of the terminal-chord counts built on top of them.

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "chord/counting.hpp"

namespace chord {

// Whether coefficient u_n stores a_n (ordinary) or a_n / n! (exponential).
// Pure bookkeeping: arithmetic is the same, but mixing the two is rejected.
enum class Convention { kOrdinary, kExponential };

std::string convention_name(Convention c);

class FormalSeries {
 public:
  // Zero series with coefficients u_0..u_order.
  explicit FormalSeries(int order, Convention convention = Convention::kOrdinary);
  FormalSeries(std::vector<mpq_class> coefficients, Convention convention = Convention::kOrdinary);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  Convention convention() const { return convention_; }
  const mpq_class& operator[](int n) const { return coeffs_.at(n); }
  mpq_class& operator[](int n) { return coeffs_.at(n); }
  std::span<const mpq_class> coefficients() const { return coeffs_; }

  FormalSeries truncated(int order) const;
  FormalSeries with_convention(Convention c) const;
  // n! u_n, the sequence an exponential series encodes.
  mpq_class counted(int n) const;

  friend bool operator==(const FormalSeries&, const FormalSeries&) = default;

 private:
  std::vector<mpq_class> coeffs_;
  Convention convention_;
};

// Binary operations truncate to the smaller order and throw on convention
// mismatch.
FormalSeries operator+(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator-(const FormalSeries& a, const FormalSeries& b);
FormalSeries operator*(const FormalSeries& a, const FormalSeries& b);
FormalSeries scale(const FormalSeries& a, const mpq_class& factor);
FormalSeries add_constant(const FormalSeries& a, const mpq_class& value);

// Order drops by one.
FormalSeries differentiate(const FormalSeries& a);
FormalSeries differentiate(const FormalSeries& a, int times);
// Order grows by one; the new constant term is `constant`.
FormalSeries integrate(const FormalSeries& a, const mpq_class& constant = 0);

// a^alpha for a series with constant term exactly 1.
FormalSeries power(const FormalSeries& a, const mpq_class& alpha);
// 1/a for a nonzero constant term.
FormalSeries inverse(const FormalSeries& a);
// log(a) for a series with constant term exactly 1.
FormalSeries log(const FormalSeries& a);

// The polynomial z (order >= 1) and small polynomials.
FormalSeries polynomial(std::vector<mpq_class> low, int order);

FormalSeries sqrt_one_minus_2z(int order);
FormalSeries log_one_minus_2z(int order);
// (1 - 2z)^alpha.
FormalSeries one_minus_2z_pow(const mpq_class& alpha, int order);

// u_n = counts[n] / n! for n = 0..order, where counts may be shorter (missing
// entries are zero).
FormalSeries egf_from_counts(std::span<const mpz_class> counts, int order);
// Column k of a count table as an EGF (row 0 contributes 0).
FormalSeries egf_from_column(const CountTable& table, int k, int order);

// Closed forms, expanded as exponential-convention series.
//   B0 = 1 - sqrt(1-2z)
//   B1 = 1 + z + sqrt(1-2z) ln(1-2z)/2 - sqrt(1-2z)
//   B2 = (ln(1-2z)/2 - ln(1-2z)^2/8 + z - 3) sqrt(1-2z) + 3 - 2z + z^2/2
// Throws DomainError for k > 2.
FormalSeries closed_form_B(int k, int order);
//   A = (z - 1) sqrt(1-2z) + z^2/2 - 2z + 1
FormalSeries closed_form_A(int order);

// Leading log series in w = L x f0: 1 - sqrt(1-2w).
FormalSeries leading_log(int order);
// Coefficient of x f1 as a series in w: 1 + (1-2w)^{-1/2} ln((1-2w)^{-1/2}).
FormalSeries next_to_leading(int order);

struct NextToNext {
  FormalSeries f0f2;     // coefficient of x^2 f0 f2
  FormalSeries f1_sq;    // coefficient of x^2 f1^2
};
// Second derivatives of A + B0 and B2 - A - B0 (closed forms).
NextToNext next_to_next(int order);
// 1 + 3w (1-2w)^{-3/2} and (ln(1-2w) - 4) ln(1-2w) / (8 (1-2w)^{3/2}).
NextToNext next_to_next_rhs(int order);

// (1-2z) B_k' + B_k - sum_{i=1}^{k} (2i-1) c_i B_{k-i}^{[i-1]}, with each
// antiderivative taken with zero initial values. The b-table recurrence makes
// every coefficient above degree k vanish. Order of the result is order - 1.
FormalSeries b_differential_residual(const CountTable& b, const CountTable& c, int k, int order);

// b_{n,k} divided by 2^n n! ln(n)^k / (sqrt(pi) 2^{k+1} k! n^{3/2}), evaluated
// in log space. Throws for n < 2, or n < 3 when k >= 1.
double bnk_asymptotic_ratio(const mpz_class& b_nk, int n, int k);

// Natural log of a positive big integer without overflow.
double log_of(const mpz_class& value);

}  // namespace chord
