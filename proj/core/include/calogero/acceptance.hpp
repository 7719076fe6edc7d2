#pragma once

#include <optional>
#include <string>
#include <vector>

namespace calogero {

/// One line of the cross-validation table.
struct AcceptanceRow {
  int id = 0;
  std::string name;
  bool passed = false;
  double measured = 0.0;   // worst observed value of the row's metric
  double threshold = 0.0;  // the metric's bound
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 when the row has no runtime bound
  std::string detail;
};

struct AcceptanceOptions {
  bool quick = false;                  // reduced grids
  std::optional<double> gamma_fault;   // shift Γ's argument by this amount (mutation check)
};

inline constexpr int kAcceptanceCriteria = 10;

/// Runs criterion `id` (1..10). Exceptions become failed rows.
AcceptanceRow run_criterion(int id, const AcceptanceOptions& opt = {});
std::vector<AcceptanceRow> run_acceptance(const AcceptanceOptions& opt = {});

}  // namespace calogero
