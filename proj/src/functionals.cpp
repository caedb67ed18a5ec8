#include "randers/functionals.hpp"

#include <numbers>

namespace randers {

CircleForms circle_closed_forms(double a, const RandersConfig& cfg) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("circle radius must satisfy 0 < a < 1");
  const double denom = 1.0 - a * a;
  const double four_pi = 4.0 * std::numbers::pi;
  return {four_pi * a / denom, volume_factor(cfg) * four_pi * a * a / denom};
}

}  // namespace randers
