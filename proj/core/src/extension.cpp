#include "calogero/extension.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "calogero/errors.hpp"

namespace calogero {

namespace {
constexpr double kHalfPi = 0.5 * std::numbers::pi;
}

ExtensionLabel ExtensionLabel::nu(double value) {
  if (!std::isfinite(value) || std::abs(value) > kHalfPi + 1e-12) {
    throw DomainError("nu must lie in [-pi/2, pi/2]");
  }
  return ExtensionLabel(Kind::Nu, std::clamp(value, -kHalfPi, kHalfPi));
}

ExtensionLabel ExtensionLabel::friedrichs() { return ExtensionLabel(Kind::Nu, kHalfPi); }

bool ExtensionLabel::is_friedrichs() const {
  return kind_ == Kind::Unique || std::abs(std::abs(nu_) - kHalfPi) <= 1e-12;
}

std::string ExtensionLabel::describe() const {
  if (kind_ == Kind::Unique) return "unique";
  if (is_friedrichs()) return "friedrichs";
  std::ostringstream os;
  os.precision(17);
  os << "nu=" << nu_;
  return os.str();
}

ResolvedExtension resolve(const ReducedParams& rp, const ExtensionLabel& ext) {
  if (rp.kappa >= 1.0) {
    if (ext.is_unique()) return {ext, std::nullopt};
    return {ExtensionLabel::unique(),
            "g1 >= 3/4: the self-adjoint extension is unique; nu ignored"};
  }
  if (ext.is_unique()) {
    throw DomainError("the extension is not unique for g1 < 3/4; specify nu or friedrichs");
  }
  return {ext, std::nullopt};
}

}  // namespace calogero
