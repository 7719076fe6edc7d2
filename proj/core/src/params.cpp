#include "calogero/params.hpp"

#include <cmath>

#include "calogero/errors.hpp"

namespace calogero {

std::string_view to_string(RegionClass r) {
  switch (r) {
    case RegionClass::NoRepresentationFallToCenter: return "NoRepresentation_FallToCenter";
    case RegionClass::NoRepresentationFallToInfinity: return "NoRepresentation_FallToInfinity";
    case RegionClass::CalogeroOnly: return "CalogeroOnly";
    case RegionClass::UniqueExtension: return "UniqueExtension";
    case RegionClass::FamilyKappaPositive: return "FamilyKappaPositive";
    case RegionClass::FamilyKappaZero: return "FamilyKappaZero";
  }
  return "unknown";
}

ReducedParams ReducedParams::unit_scaled() const { return from_reduced(kappa, 1.0); }

ReducedParams from_reduced(double kappa, double upsilon) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be finite and >= 0");
  if (!(upsilon > 0.0) || !std::isfinite(upsilon)) throw DomainError("upsilon must be finite and > 0");
  ReducedParams rp;
  rp.kappa = kappa;
  rp.upsilon = upsilon;
  rp.beta = 1.0 + kappa;
  rp.w0 = -0.5 * (1.0 + kappa);
  rp.u0 = 4.0 * upsilon * upsilon * rp.w0;
  return rp;
}

ReducedParams reduce(const Couplings& c) {
  if (!std::isfinite(c.g1) || !std::isfinite(c.g2)) throw DomainError("couplings must be finite");
  if (c.g1 < -0.25) throw DomainError("reduce: g1 < -1/4 (fall to the center)");
  if (!(c.g2 > 0.0)) throw DomainError("reduce: requires g2 > 0");
  return from_reduced(std::sqrt(c.g1 + 0.25), std::sqrt(std::sqrt(c.g2)));
}

RegionFlags region_flags(const Couplings& c) {
  return {c.g1 < -0.25, c.g2 < 0.0, c.g2 == 0.0};
}

RegionClass classify(const Couplings& c) {
  const auto f = region_flags(c);
  if (f.fall_to_center) return RegionClass::NoRepresentationFallToCenter;
  if (f.fall_to_infinity) return RegionClass::NoRepresentationFallToInfinity;
  if (f.calogero_only) return RegionClass::CalogeroOnly;
  if (c.g1 >= 0.75) return RegionClass::UniqueExtension;
  if (c.g1 == -0.25) return RegionClass::FamilyKappaZero;
  return RegionClass::FamilyKappaPositive;
}

std::string nonexistence_reason(const Couplings& c) {
  const auto f = region_flags(c);
  std::string msg;
  if (f.fall_to_center) msg = "g1 < -1/4";
  if (f.fall_to_infinity) msg += msg.empty() ? "g2 < 0" : " and g2 < 0";
  if (msg.empty()) return msg;
  return "no generalized oscillator representation: " + msg;
}

}  // namespace calogero
