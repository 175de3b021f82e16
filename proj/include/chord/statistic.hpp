#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "chord/analyzer.hpp"

namespace chord {

enum class StatisticKind {
  kTerminalCount,
  kAdjacentPairs,
  kFirstTerminal,
  kGapCount,    // number of consecutive terminal ranks at distance `gap`
  kClassLabel,  // ClassSet bits: 1 = C1, 2 = C2, 4 = C3, 0 = other
};

struct Statistic {
  StatisticKind kind = StatisticKind::kTerminalCount;
  int gap = 0;

  // Accepts terminal_count, adjacent_pairs, first_terminal, class,
  // class_label, gap_count(L) and gap_count:L. Throws std::invalid_argument.
  static Statistic parse(std::string_view name);
  std::string name() const;

  // Value on the matching last analyzed by `analyzer` (must be connected).
  std::int64_t evaluate(const Shape& shape, const Analyzer& analyzer) const;

  friend bool operator==(const Statistic&, const Statistic&) = default;
};

}  // namespace chord
