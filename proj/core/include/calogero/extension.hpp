#pragma once

#include <optional>
#include <string>

#include "calogero/params.hpp"

namespace calogero {

/// Which self-adjoint realization: the unique one (κ ≥ 1) or the member ν ∈ [−π/2, π/2]
/// of the one-parameter family, with ±π/2 identified (the Friedrichs extension).
class ExtensionLabel {
 public:
  enum class Kind { Unique, Nu };

  static ExtensionLabel unique() { return ExtensionLabel(Kind::Unique, 0.0); }
  /// Throws DomainError for ν outside [−π/2, π/2] or non-finite.
  static ExtensionLabel nu(double value);
  static ExtensionLabel friedrichs();

  Kind kind() const { return kind_; }
  bool is_unique() const { return kind_ == Kind::Unique; }
  /// ν; only meaningful for Kind::Nu.
  double nu_value() const { return nu_; }
  /// True for Unique and for |ν| within 1e-12 of π/2.
  bool is_friedrichs() const;
  std::string describe() const;

 private:
  ExtensionLabel(Kind k, double v) : kind_(k), nu_(v) {}
  Kind kind_;
  double nu_;
};

struct ResolvedExtension {
  ExtensionLabel label;
  std::optional<std::string> warning;
};

/// Reconciles a label with the region: ν labels at κ ≥ 1 become Unique (with a warning);
/// Unique at κ < 1 is rejected with DomainError.
ResolvedExtension resolve(const ReducedParams& rp, const ExtensionLabel& ext);

}  // namespace calogero
