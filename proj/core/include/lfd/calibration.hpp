#pragma once

#include "lfd/core_model.hpp"

namespace lfd {

/// Geometric steps-per-volume constant of a leadscrew syringe pump:
///
///   microsteps/uL = steps_per_rev * microstepping / (pi * (ID/2)^2 * lead)
///
/// The denominator is the plunger volume swept per revolution in mm^3 (= uL).
CalibrationResult microsteps_per_microliter(const SyringePumpSpec& spec);

/// Steps-per-volume from a weighed dispense: commanded microsteps divided by
/// the displaced volume (measured_mass / fluid_density). Masses in mg,
/// density in mg/uL.
CalibrationResult gravimetric_calibration(double commanded_microsteps, double measured_mass,
                                          double fluid_density);

}  // namespace lfd
