#include "chord/statistic.hpp"

#include <charconv>
#include <stdexcept>

namespace chord {

Statistic Statistic::parse(std::string_view name) {
  if (name == "terminal_count") return {StatisticKind::kTerminalCount};
  if (name == "adjacent_pairs") return {StatisticKind::kAdjacentPairs};
  if (name == "first_terminal") return {StatisticKind::kFirstTerminal};
  if (name == "class" || name == "class_label") return {StatisticKind::kClassLabel};
  constexpr std::string_view prefix = "gap_count";
  if (name.substr(0, prefix.size()) == prefix) {
    std::string_view rest = name.substr(prefix.size());
    if (!rest.empty() && (rest.front() == ':' || rest.front() == '(')) {
      const bool paren = rest.front() == '(';
      rest.remove_prefix(1);
      if (paren) {
        if (rest.empty() || rest.back() != ')')
          throw std::invalid_argument("statistic '" + std::string(name) + "': missing ')'");
        rest.remove_suffix(1);
      }
      int gap = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), gap);
      if (ec == std::errc() && ptr == rest.data() + rest.size() && gap >= 1)
        return {StatisticKind::kGapCount, gap};
    }
    throw std::invalid_argument("statistic '" + std::string(name) +
                                "': expected gap_count(L) with integer L >= 1");
  }
  throw std::invalid_argument(
      "unknown statistic '" + std::string(name) +
      "' (expected terminal_count, adjacent_pairs, first_terminal, gap_count(L), class)");
}

std::string Statistic::name() const {
  switch (kind) {
    case StatisticKind::kTerminalCount: return "terminal_count";
    case StatisticKind::kAdjacentPairs: return "adjacent_pairs";
    case StatisticKind::kFirstTerminal: return "first_terminal";
    case StatisticKind::kGapCount: return "gap_count(" + std::to_string(gap) + ")";
    case StatisticKind::kClassLabel: return "class";
  }
  return "?";
}

std::int64_t Statistic::evaluate(const Shape& shape, const Analyzer& analyzer) const {
  switch (kind) {
    case StatisticKind::kTerminalCount: return shape.terminal_count;
    case StatisticKind::kAdjacentPairs: return shape.adjacent_pairs;
    case StatisticKind::kFirstTerminal: return shape.first_terminal;
    case StatisticKind::kClassLabel: return shape.classes.bits();
    case StatisticKind::kGapCount: {
      const auto ranks = analyzer.terminal_ranks();
      std::int64_t count = 0;
      for (std::size_t j = 1; j < ranks.size(); ++j)
        if (ranks[j] - ranks[j - 1] == gap) ++count;
      return count;
    }
  }
  return 0;
}

}  // namespace chord
