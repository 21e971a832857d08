#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tnn/face_poset.hpp"

namespace verify {

struct CheckResult {
  std::string check;
  tnn::Verdict status = tnn::Verdict::Pass;
  nlohmann::json witness = nullptr;
};

struct SuiteOptions {
  /// Suite specific: maximal interval rank shelled (hatQ, braid) or samples
  /// per stratum (cell-param, duality, double-bruhat). Unset means default.
  std::optional<std::size_t> budget;
  std::uint64_t seed = 1;
  /// Node expansions allowed per shelling search.
  std::size_t shelling_budget = tnn::kDefaultShellingBudget;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;
  std::size_t budget = 0;

  tnn::Verdict overall() const;
};

/// demazure-oracle, positive-subexpr, thickening-order, hatQ, sl2-triangle,
/// cell-param, braid, duality, double-bruhat.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

/// Throws tnn::InvalidArgument for unknown suites.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

nlohmann::json to_json(const CheckResult& c);

}  // namespace verify
