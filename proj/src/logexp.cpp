#include "chord/logexp.hpp"

#include <algorithm>
#include <sstream>
#include <thread>

#include "chord/analyzer.hpp"

namespace chord {
namespace {

void trim(Exponents& e) {
  while (!e.empty() && e.back() == 0) e.pop_back();
}

mpz_class factorial(int n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

TerminalData from_ranks(std::span<const int> ranks) {
  TerminalData d;
  d.terminals.assign(ranks.begin(), ranks.end());
  d.first_terminal = d.terminals.front();
  for (std::size_t j = 1; j < d.terminals.size(); ++j) {
    d.gaps.push_back(d.terminals[j] - d.terminals[j - 1]);
    if (d.gaps.back() == 1) ++d.adjacent_pairs;
  }
  return d;
}

// Runs body(root_partner, worker) over the 2n-1 root partners split across
// `workers` threads.
template <typename Body>
void for_root_partners(int n, int workers, Body body) {
  workers = std::clamp(workers, 1, 2 * n - 1);
  auto run = [&](int w) {
    for (int root = 2 + w; root <= 2 * n; root += workers) body(root, w);
  };
  if (workers == 1) {
    run(0);
    return;
  }
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
  for (auto& t : threads) t.join();
}

}  // namespace

FPolynomial FPolynomial::monomial(Exponents exponents, const mpq_class& coefficient) {
  FPolynomial p;
  p.add(std::move(exponents), coefficient);
  return p;
}

void FPolynomial::add(Exponents exponents, const mpq_class& coefficient) {
  if (coefficient == 0) return;
  trim(exponents);
  auto [it, inserted] = terms_.try_emplace(std::move(exponents), coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second == 0) terms_.erase(it);
  }
}

FPolynomial& FPolynomial::operator+=(const FPolynomial& other) {
  for (const auto& [e, c] : other.terms_) add(e, c);
  return *this;
}

FPolynomial FPolynomial::scaled(const mpq_class& factor) const {
  FPolynomial out;
  if (factor == 0) return out;
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, c * factor);
  return out;
}

mpq_class FPolynomial::coefficient(const Exponents& exponents) const {
  Exponents key = exponents;
  trim(key);
  const auto it = terms_.find(key);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

mpq_class FPolynomial::evaluate(const std::vector<mpq_class>& values) const {
  mpq_class total = 0;
  for (const auto& [e, c] : terms_) {
    if (e.size() > values.size())
      throw DomainError("no value supplied for f" + std::to_string(e.size() - 1));
    mpq_class term = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (int p = 0; p < e[i]; ++p) term *= values[i];
    total += term;
  }
  return total;
}

std::string FPolynomial::monomial_name(const Exponents& exponents) {
  std::string out;
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!out.empty()) out += ' ';
    out += "f" + std::to_string(i) + "^" + std::to_string(exponents[i]);
  }
  return out.empty() ? "1" : out;
}

std::string FPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += c.get_str() + " " + monomial_name(e);
  }
  return out;
}

int monomial_degree(const Exponents& exponents) {
  int d = 0;
  for (int e : exponents) d += e;
  return d;
}

int monomial_weight(const Exponents& exponents) {
  int w = 0;
  for (std::size_t i = 0; i < exponents.size(); ++i) w += static_cast<int>(i) * exponents[i];
  return w;
}

std::string check_log_expansion_shape(const LogExpansionTable& table) {
  for (std::size_t j = 0; j < table.coefficients.size(); ++j) {
    for (const auto& [e, c] : table.coefficients[j].terms()) {
      const int want_degree = static_cast<int>(j) + table.depth;
      if (monomial_degree(e) != want_degree || monomial_weight(e) != table.depth || c <= 0) {
        std::ostringstream msg;
        msg << "depth " << table.depth << ", L-power " << j << ": monomial "
            << FPolynomial::monomial_name(e) << " has degree " << monomial_degree(e)
            << " (want " << want_degree << ") and weight " << monomial_weight(e) << " (want "
            << table.depth << ")";
        return msg.str();
      }
    }
  }
  return {};
}

LogExpansionTable next_to_i_oracle(int depth, int order, int workers) {
  if (depth < 0) throw DomainError("expansion depth must be >= 0, got " + std::to_string(depth));
  check_enumeration_size(order, false);
  LogExpansionTable table;
  table.depth = depth;
  table.order = order;
  table.coefficients.assign(std::max(order - depth + 1, 0), FPolynomial{});

  for (int n = std::max(depth, 1); n <= order; ++n) {
    const int l_power = n - depth;
    std::vector<FPolynomial> partial(std::clamp(workers, 1, 2 * n - 1));
    for_root_partners(n, workers, [&](int root, int w) {
      MatchingStream stream(n, root);
      while (stream.next()) {
        const ChordDiagram d = stream.diagram();
        if (!is_connected(d)) continue;
        const TerminalData td = terminal_data(d);
        if (td.first_terminal < l_power) continue;
        partial[w].add(sol_monomial(td, n, l_power), 1);
      }
    });
    FPolynomial sum;
    for (const auto& p : partial) sum += p;
    table.coefficients[l_power] = sum.scaled(mpq_class(1) / factorial(l_power));
  }
  return table;
}

LogExpansionTable GreenFunctionTable::slice(int depth) const {
  LogExpansionTable table;
  table.depth = depth;
  table.order = order;
  table.coefficients.assign(std::max(order - depth + 1, 0), FPolynomial{});
  for (int l = 1; l + depth <= order; ++l) table.coefficients[l] = a[l][l + depth];
  return table;
}

GreenFunctionTable green_function(int order, int workers) {
  check_enumeration_size(order, false);
  GreenFunctionTable g;
  g.order = order;
  g.a.assign(order + 1, std::vector<FPolynomial>(order + 1));
  for (int n = 1; n <= order; ++n) {
    const int parts = std::clamp(workers, 1, 2 * n - 1);
    std::vector<std::vector<FPolynomial>> partial(parts, std::vector<FPolynomial>(n + 1));
    for_root_partners(n, workers, [&](int root, int w) {
      ConnectedStream stream(n, root);
      while (stream.next()) {
        const TerminalData td = from_ranks(stream.analyzer().terminal_ranks());
        for (int l = 1; l <= td.first_terminal; ++l) partial[w][l].add(sol_monomial(td, n, l), 1);
      }
    });
    for (int l = 1; l <= n; ++l) {
      FPolynomial sum;
      for (const auto& p : partial) sum += p[l];
      g.a[l][n] = sum.scaled(mpq_class(1) / factorial(l));
    }
  }
  return g;
}

TopBlockCount top_block_diagrams(int n, int block) {
  if (block < 1 || block > n) throw DomainError("block size must lie in 1..n");
  TopBlockCount out;
  Exponents want(2, 0);
  want[0] = n - block + 1;
  want[1] = block - 1;
  trim(want);
  ConnectedStream stream(n);
  while (stream.next()) {
    const auto ranks = stream.analyzer().terminal_ranks();
    if (static_cast<int>(ranks.size()) != block || ranks.front() != n - block + 1) continue;
    ++out.count;
    if (sol_monomial(from_ranks(ranks), n, n - block + 1) != want) out.monomials_match = false;
  }
  return out;
}

}  // namespace chord
