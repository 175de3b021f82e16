// Runs every acceptance criterion and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <thread>

#include "chord/verify.hpp"

int main() {
  chord::VerifyOptions options;
  options.shards = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  options.on_result = [](const chord::CheckResult& r) {
    std::fprintf(stderr, "  finished %s in %.1f s\n", r.id.c_str(), r.seconds);
  };
  const auto results = chord::by_criterion(chord::run_suite(chord::Suite::kAll, options));
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ' ' << r.title << ": " << r.detail << '\n';
    failed += !r.passed;
  }
  std::cout << results.size() - failed << '/' << results.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
