#pragma once

// Polynomials in the abstract symbols f_0, f_1, ... and the diagram sums that
// produce the log expansions of the Green function. All tables use positive
// signs (overall sign and the sign of L flipped).

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "chord/diagram.hpp"
#include "chord/enumerate.hpp"

namespace chord {

class FPolynomial {
 public:
  using Terms = std::map<Exponents, mpq_class>;

  FPolynomial() = default;
  static FPolynomial monomial(Exponents exponents, const mpq_class& coefficient = 1);

  // Exponent vectors are trimmed; zero results are erased.
  void add(Exponents exponents, const mpq_class& coefficient);
  FPolynomial& operator+=(const FPolynomial& other);
  FPolynomial scaled(const mpq_class& factor) const;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  mpq_class coefficient(const Exponents& exponents) const;

  // Substitutes f_i = values[i]. Throws DomainError if a symbol has no value.
  mpq_class evaluate(const std::vector<mpq_class>& values) const;

  // "f0^2 f1^1"; the empty exponent vector prints as "1".
  static std::string monomial_name(const Exponents& exponents);
  std::string to_string() const;  // "3/2 f0^2 f1^1 + f0^1 f2^1"

  friend bool operator==(const FPolynomial&, const FPolynomial&) = default;

 private:
  Terms terms_;
};

// Multiplicity sum and subscript-weighted sum of an exponent vector.
int monomial_degree(const Exponents& exponents);
int monomial_weight(const Exponents& exponents);

// Depth-i slice: coefficients[j] multiplies (L x)^j x^i, j = 0..order-i.
struct LogExpansionTable {
  int depth = 0;
  int order = 0;
  std::vector<FPolynomial> coefficients;

  friend bool operator==(const LogExpansionTable&, const LogExpansionTable&) = default;
};

// Every monomial in coefficients[j] has degree j + depth (one symbol per
// chord) and weight depth. Returns an empty string when the table complies,
// otherwise a description of the first offending entry.
std::string check_log_expansion_shape(const LogExpansionTable& table);

// Sums sol_monomial(C, n - i) / (n - i)! over connected C with n <= order chords
// and b(C) >= n - i. Enumeration-backed; order within the enumeration cap.
LogExpansionTable next_to_i_oracle(int depth, int order, int workers = 1);

// a[l][n]: coefficient of L^l x^n in G - 1, i.e. (1/l!) sum over connected C
// with n chords and b(C) >= l of sol_monomial(C, l). Only l >= 1 occurs.
struct GreenFunctionTable {
  int order = 0;
  std::vector<std::vector<FPolynomial>> a;  // a[l][n], 0 <= l <= n <= order

  // Entries with n - l = depth, as a log expansion table. The L^0 entry
  // (n = depth) is left empty since G - 1 has no L-free part.
  LogExpansionTable slice(int depth) const;
};

GreenFunctionTable green_function(int order, int workers = 1);

// Connected n-diagrams whose terminal ranks are exactly {n-s+1, ..., n}, and
// whether each of them contributes f_0^{n-s+1} f_1^{s-1} at L-power n-s+1.
struct TopBlockCount {
  mpz_class count;
  bool monomials_match = true;
};
TopBlockCount top_block_diagrams(int n, int block);

}  // namespace chord
