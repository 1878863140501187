// Runs every acceptance criterion and prints one line per criterion.
#include <cstdio>

#include "trisect/acceptance.hpp"

int main(int argc, char** argv) {
  trisect::SuiteOptions opt;
  if (argc > 1) opt.fixture_dir = argv[1];
  int failed = 0;
  trisect::run_suite(opt, [&](const trisect::CriterionResult& r) {
    std::printf("criterion %2d  %-4s  %-32s  %7.2fs  residual %.3g  %s\n", r.id, r.ok ? "PASS" : "FAIL",
                r.title.c_str(), r.seconds, r.residual, r.detail.c_str());
    std::fflush(stdout);
    if (!r.ok) ++failed;
  });
  std::printf("%d of %d criteria passed\n", trisect::kCriteria - failed, trisect::kCriteria);
  return failed == 0 ? 0 : 1;
}
