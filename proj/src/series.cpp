#include "chord/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chord/diagram.hpp"

namespace chord {

std::string convention_name(Convention c) {
  return c == Convention::kOrdinary ? "ordinary" : "exponential";
}

FormalSeries::FormalSeries(int order, Convention convention)
    : coeffs_(static_cast<std::size_t>(std::max(order, -1) + 1), mpq_class(0)),
      convention_(convention) {
  if (order < 0) throw DomainError("series order must be >= 0, got " + std::to_string(order));
}

FormalSeries::FormalSeries(std::vector<mpq_class> coefficients, Convention convention)
    : coeffs_(std::move(coefficients)), convention_(convention) {
  if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
}

FormalSeries FormalSeries::truncated(int order) const {
  if (order > this->order())
    throw DomainError("cannot extend a series of order " + std::to_string(this->order()) +
                      " to order " + std::to_string(order));
  return FormalSeries(std::vector<mpq_class>(coeffs_.begin(), coeffs_.begin() + order + 1),
                      convention_);
}

FormalSeries FormalSeries::with_convention(Convention c) const {
  FormalSeries out = *this;
  out.convention_ = c;
  return out;
}

mpq_class FormalSeries::counted(int n) const {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return coeffs_.at(n) * f;
}

namespace {

void require_same_convention(const FormalSeries& a, const FormalSeries& b) {
  if (a.convention() != b.convention())
    throw DomainError("cannot combine " + convention_name(a.convention()) + " and " +
                      convention_name(b.convention()) + " series");
}

}  // namespace

FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
  require_same_convention(a, b);
  FormalSeries out(std::min(a.order(), b.order()), a.convention());
  for (int n = 0; n <= out.order(); ++n) out[n] = a[n] + b[n];
  return out;
}

FormalSeries operator-(const FormalSeries& a, const FormalSeries& b) {
  require_same_convention(a, b);
  FormalSeries out(std::min(a.order(), b.order()), a.convention());
  for (int n = 0; n <= out.order(); ++n) out[n] = a[n] - b[n];
  return out;
}

FormalSeries operator*(const FormalSeries& a, const FormalSeries& b) {
  require_same_convention(a, b);
  const int order = std::min(a.order(), b.order());
  FormalSeries out(order, a.convention());
  for (int i = 0; i <= order; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; i + j <= order; ++j)
      if (b[j] != 0) out[i + j] += a[i] * b[j];
  }
  return out;
}

FormalSeries scale(const FormalSeries& a, const mpq_class& factor) {
  FormalSeries out = a;
  for (int n = 0; n <= out.order(); ++n) out[n] *= factor;
  return out;
}

FormalSeries add_constant(const FormalSeries& a, const mpq_class& value) {
  FormalSeries out = a;
  out[0] += value;
  return out;
}

FormalSeries differentiate(const FormalSeries& a) {
  if (a.order() < 1) throw DomainError("cannot differentiate a series of order 0");
  FormalSeries out(a.order() - 1, a.convention());
  for (int n = 0; n <= out.order(); ++n) out[n] = a[n + 1] * (n + 1);
  return out;
}

FormalSeries differentiate(const FormalSeries& a, int times) {
  FormalSeries out = a;
  for (int t = 0; t < times; ++t) out = differentiate(out);
  return out;
}

FormalSeries integrate(const FormalSeries& a, const mpq_class& constant) {
  FormalSeries out(a.order() + 1, a.convention());
  out[0] = constant;
  for (int n = 0; n <= a.order(); ++n) out[n + 1] = a[n] / (n + 1);
  return out;
}

// g = a^alpha satisfies a g' = alpha a' g, which gives
// n g_n = sum_{k=1}^{n} ((alpha + 1) k - n) a_k g_{n-k}.
FormalSeries power(const FormalSeries& a, const mpq_class& alpha) {
  if (a[0] != 1) throw DomainError("power needs a series with constant term 1");
  FormalSeries g(a.order(), a.convention());
  g[0] = 1;
  const mpq_class alpha1 = alpha + 1;
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class sum = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) sum += (alpha1 * k - n) * a[k] * g[n - k];
    g[n] = sum / n;
  }
  return g;
}

FormalSeries inverse(const FormalSeries& a) {
  if (a[0] == 0) throw DomainError("inverse needs a nonzero constant term");
  FormalSeries g(a.order(), a.convention());
  g[0] = 1 / mpq_class(a[0]);
  for (int n = 1; n <= a.order(); ++n) {
    mpq_class sum = 0;
    for (int k = 1; k <= n; ++k)
      if (a[k] != 0) sum += a[k] * g[n - k];
    g[n] = -sum * g[0];
  }
  return g;
}

FormalSeries log(const FormalSeries& a) {
  if (a[0] != 1) throw DomainError("log needs a series with constant term 1");
  if (a.order() == 0) return FormalSeries(0, a.convention());
  return integrate(differentiate(a) * inverse(a).truncated(a.order() - 1));
}

FormalSeries polynomial(std::vector<mpq_class> low, int order) {
  FormalSeries out(order);
  for (std::size_t n = 0; n < low.size() && static_cast<int>(n) <= order; ++n)
    out[static_cast<int>(n)] = low[n];
  return out;
}

// (1 - 2z)^alpha = sum_n binom(alpha, n) (-2)^n z^n.
FormalSeries one_minus_2z_pow(const mpq_class& alpha, int order) {
  FormalSeries out(order);
  out[0] = 1;
  for (int n = 1; n <= order; ++n) out[n] = out[n - 1] * (alpha - (n - 1)) * (-2) / n;
  return out;
}

FormalSeries sqrt_one_minus_2z(int order) { return one_minus_2z_pow(mpq_class(1, 2), order); }

FormalSeries log_one_minus_2z(int order) {
  FormalSeries out(order);
  mpz_class two_pow = 1;
  for (int n = 1; n <= order; ++n) {
    two_pow *= 2;
    out[n] = -mpq_class(two_pow, n);
    out[n].canonicalize();
  }
  return out;
}

FormalSeries egf_from_counts(std::span<const mpz_class> counts, int order) {
  FormalSeries out(order, Convention::kExponential);
  mpz_class factorial = 1;
  for (int n = 0; n <= order; ++n) {
    if (n > 0) factorial *= n;
    if (n < static_cast<int>(counts.size())) {
      out[n] = mpq_class(counts[n], factorial);
      out[n].canonicalize();
    }
  }
  return out;
}

FormalSeries egf_from_column(const CountTable& table, int k, int order) {
  if (order > table.max_n)
    throw DomainError("table has rows up to " + std::to_string(table.max_n) +
                      ", series order " + std::to_string(order) + " requested");
  if (k > table.max_k) throw DomainError("table has no column " + std::to_string(k));
  std::vector<mpz_class> counts(order + 1, 0);
  for (int n = 1; n <= order; ++n) counts[n] = table.at(n, k);
  return egf_from_counts(counts, order);
}

FormalSeries closed_form_B(int k, int order) {
  const FormalSeries s = sqrt_one_minus_2z(order);
  const FormalSeries l = log_one_minus_2z(order);
  FormalSeries out(order);
  switch (k) {
    case 0:
      out = add_constant(scale(s, -1), 1);
      break;
    case 1:
      out = scale(s * l, mpq_class(1, 2)) - s + polynomial({1, 1}, order);
      break;
    case 2: {
      const FormalSeries bracket =
          scale(l, mpq_class(1, 2)) - scale(l * l, mpq_class(1, 8)) + polynomial({-3, 1}, order);
      out = bracket * s + polynomial({3, -2, mpq_class(1, 2)}, order);
      break;
    }
    default:
      throw DomainError("closed form B_k is only known for k <= 2 (got k = " + std::to_string(k) +
                        "); build it from the b table instead");
  }
  return out.with_convention(Convention::kExponential);
}

FormalSeries closed_form_A(int order) {
  const FormalSeries s = sqrt_one_minus_2z(order);
  const FormalSeries out = polynomial({-1, 1}, order) * s + polynomial({1, -2, mpq_class(1, 2)}, order);
  return out.with_convention(Convention::kExponential);
}

FormalSeries leading_log(int order) { return closed_form_B(0, order).with_convention(Convention::kOrdinary); }

FormalSeries next_to_leading(int order) {
  const FormalSeries inv_sqrt = one_minus_2z_pow(mpq_class(-1, 2), order);
  return add_constant(scale(inv_sqrt * log_one_minus_2z(order), mpq_class(-1, 2)), 1);
}

NextToNext next_to_next(int order) {
  const FormalSeries a = closed_form_A(order + 2);
  const FormalSeries b0 = closed_form_B(0, order + 2);
  const FormalSeries b2 = closed_form_B(2, order + 2);
  return {differentiate(a + b0, 2).with_convention(Convention::kOrdinary),
          differentiate(b2 - a - b0, 2).with_convention(Convention::kOrdinary)};
}

NextToNext next_to_next_rhs(int order) {
  const FormalSeries inv = one_minus_2z_pow(mpq_class(-3, 2), order);
  const FormalSeries l = log_one_minus_2z(order);
  NextToNext out{add_constant(polynomial({0, 3}, order) * inv, 1),
                 scale(add_constant(l, -4) * l * inv, mpq_class(1, 8))};
  return out;
}

FormalSeries b_differential_residual(const CountTable& b, const CountTable& c, int k, int order) {
  const FormalSeries bk = egf_from_column(b, k, order);
  const FormalSeries one_minus_2z =
      polynomial({1, -2}, order - 1).with_convention(Convention::kExponential);
  FormalSeries residual = one_minus_2z * differentiate(bk) + bk.truncated(order - 1);
  for (int i = 1; i <= k; ++i) {
    FormalSeries anti = egf_from_column(b, k - i, order);
    for (int t = 0; t < i - 1; ++t) anti = integrate(anti);
    residual = residual - scale(anti.truncated(order - 1), c.at(i) * (2 * i - 1));
  }
  return residual;
}

double log_of(const mpz_class& value) {
  if (value <= 0) throw DomainError("log of a non-positive integer");
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

double bnk_asymptotic_ratio(const mpz_class& b_nk, int n, int k) {
  if (k < 0) throw DomainError("k must be >= 0");
  if (n < 2 || (k >= 1 && n < 3))
    throw DomainError("asymptotic ratio needs n >= 2 (n >= 3 when k >= 1), got n = " +
                      std::to_string(n));
  const double ln_n = std::log(static_cast<double>(n));
  const double log_form = -0.5 * std::log(std::numbers::pi) - (k + 1) * std::numbers::ln2 -
                          std::lgamma(k + 1.0) + k * std::log(ln_n) + n * std::numbers::ln2 +
                          std::lgamma(n + 1.0) - 1.5 * ln_n;
  return std::exp(log_of(b_nk) - log_form);
}

}  // namespace chord
