#pragma once

// Batch verification suites: one per acceptance criterion, each a fixed list
// of desk-scale cases with a pass flag, wall time and a JSON detail record.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "drinlev/error.hpp"

namespace drinlev::suites {

struct SuiteResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  double limit_seconds = 0;   // 0 = no time bound
  nlohmann::json detail;
};

inline constexpr int kSuiteCount = 10;

/// Runs suite `id` in 1..kSuiteCount (InvalidInput otherwise). A suite that
/// throws is reported as failed with the error in detail["error"].
SuiteResult run_suite(int id, std::uint64_t cap = kDefaultEnumCap);

std::vector<SuiteResult> run_all(std::uint64_t cap = kDefaultEnumCap);

/// Timings are left out unless asked for, so that reports are reproducible.
nlohmann::json to_json(const SuiteResult& r, bool timings = false);

}  // namespace drinlev::suites
