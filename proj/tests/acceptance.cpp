// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "freezm/verify/criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 20240607;
  if (argc > 1) {
    seed = std::strtoull(argv[1], nullptr, 10);
  }
  const auto results = freezm::verify::run_all(seed);
  int failed = 0;
  for (const auto& r : results) {
    std::string status = r.ok() ? "PASS" : "FAIL";
    std::string note = r.passed && !r.within_limit() ? " over time limit" : "";
    std::printf("%s criterion %d: %s (%s) [%.2fs, limit %.0fs%s]\n", status.c_str(), r.id, r.title.c_str(),
                r.detail.c_str(), r.seconds, r.limit_seconds, note.c_str());
    failed += r.ok() ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed (seed %llu)\n", static_cast<int>(results.size()) - failed, results.size(),
              static_cast<unsigned long long>(seed));
  return failed ? 1 : 0;
}
