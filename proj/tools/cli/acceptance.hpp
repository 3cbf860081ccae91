#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json_out.hpp"

namespace lempert::cli {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  Json metrics = Json::object();
};

struct AcceptanceOptions {
  std::set<int> only;  ///< empty: all criteria
  /// Expected value of the rotation case; changing it is the negative control.
  double rotation_expected = 0.25;
  std::uint64_t seed = 0;
};

// Pinned tolerances.
inline constexpr double kLemma4Residual = 1e-9;
inline constexpr double kLemma4Product = 1e-9;
inline constexpr double kLemma4Seconds = 10.0;
inline constexpr double kAnchorTol = 1e-12;
inline constexpr double kEndpointTol = 1e-3;
inline constexpr double kPuncturedGreenTol = 1e-8;
inline constexpr double kPuncturedGreenSeconds = 2.0;
inline constexpr double kAnnulusGreenRelTol = 1e-6;
inline constexpr double kDecrementFloor = 1e-12;
inline constexpr double kSandwichRounding = 1e-14;
inline constexpr double kSandwichOrderTol = 1e-12;
inline constexpr double kSandwichDiscTol = 1e-9;
inline constexpr double kSandwichGap = 1e-6;
inline constexpr double kRotationValueTol = 1e-6;
inline constexpr double kRotationFloorTol = 1e-12;
inline constexpr double kRotationSeconds = 30.0;
inline constexpr double kOracleAgreement = 1e-3;
inline constexpr double kConstructionEquality = 1e-10;
inline constexpr double kConstructionMargin = 1e-6;

/// Criterion ids from a comma list of numbers or group names (lemma4, green,
/// monotonicity, sandwich, bidisc, construction, determinism). Empty: all.
std::set<int> select_criteria(const std::string& text);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "[PASS] 7 rotation-case: ..." style summary line.
std::string format_line(const CriterionResult& r);

}  // namespace lempert::cli
