#pragma once

#include <functional>
#include <string>
#include <vector>

namespace trisect {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool ok = false;
  double residual = 0;  // largest residual seen, 0 for exact agreement
  double seconds = 0;
  int checks = 0;
  std::string detail;  // first failures, or a summary
};

struct SuiteOptions {
  std::string fixture_dir;  // empty: the shipped fixtures
  std::vector<int> only;    // empty: all criteria
};

constexpr int kCriteria = 11;

const char* criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opt = {});
std::vector<CriterionResult> run_suite(const SuiteOptions& opt = {},
                                       const std::function<void(const CriterionResult&)>& on_result = {});

std::string default_fixture_dir();

}  // namespace trisect
