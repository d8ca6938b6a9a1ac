#include "lfd/calibration.hpp"

#include <cmath>
#include <numbers>

namespace lfd {

CalibrationResult microsteps_per_microliter(const SyringePumpSpec& spec) {
  spec.validate();
  const double radius = spec.syringe_inner_diameter / 2.0;
  const double swept_per_rev = std::numbers::pi * radius * radius * spec.leadscrew_lead;
  const double microsteps_per_rev =
      static_cast<double>(spec.steps_per_rev) * static_cast<double>(spec.microstepping);
  return {microsteps_per_rev / swept_per_rev, CalibrationSource::geometric};
}

CalibrationResult gravimetric_calibration(double commanded_microsteps, double measured_mass,
                                          double fluid_density) {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v <= 0) {
      throw DomainError(std::string(name) + " must be positive");
    }
  };
  check(commanded_microsteps, "commanded_microsteps");
  check(measured_mass, "measured_mass");
  check(fluid_density, "fluid_density");
  const double displaced_volume = measured_mass / fluid_density;
  return {commanded_microsteps / displaced_volume, CalibrationSource::gravimetric};
}

}  // namespace lfd
