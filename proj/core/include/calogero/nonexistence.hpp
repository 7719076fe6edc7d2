#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "calogero/params.hpp"

namespace calogero {

/// Origin: integrate from x_hi toward x_lo in s = ln x (φ = x^{1/2} y).
/// Infinity: integrate from x_lo outward in x.
enum class ZeroCountMode { Origin, Infinity };
std::string_view to_string(ZeroCountMode m);

/// Value and derivative of φ at the interval's regular end.
struct BoundaryData {
  double value = 1.0;
  double derivative = 0.0;
};

struct ZeroCountReport {
  double x_lo = 0.0;
  double x_hi = 0.0;
  std::size_t observed_zeros = 0;
  double predicted_zeros = 0.0;
  double u = 0.0;
  double sigma_or_omega = 0.0;  // σ = √(−1/4 − g1) or ω = √(−g2); 0 when not applicable
  ZeroCountMode mode = ZeroCountMode::Origin;
  std::size_t steps = 0;

  /// |observed − predicted| ≤ 1 + 0.1·predicted.
  bool within_tolerance() const;
};

/// Origin for g1 < −1/4, Infinity for g2 < 0; empty in the existence region.
std::optional<ZeroCountMode> default_zero_count_mode(const Couplings& c);

/// Counts sign changes of a real solution of −φ″ + (g1/x² + g2x² + u)φ = 0 on (x_lo, x_hi).
/// Steps are capped so the local phase advances by less than π/4 per step.
/// Throws DomainError when no mode applies and none is given, or for a bad interval.
ZeroCountReport count_zeros(const Couplings& c, double u, double x_lo, double x_hi,
                            const BoundaryData& init = {},
                            std::optional<ZeroCountMode> mode = std::nullopt);

}  // namespace calogero
