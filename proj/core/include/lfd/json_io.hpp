#pragma once

// JSON documents for the toolchain's structured inputs and outputs. Field
// names match the C++ member names; units are the library's canonical units.
// Syntax and schema problems raise FormatError, domain violations DomainError.

#include <string>
#include <string_view>

#include "lfd/core_model.hpp"
#include "lfd/gcode_vm.hpp"
#include "lfd/width_model.hpp"

namespace lfd {

std::string to_json(const SyringePumpSpec& spec);
SyringePumpSpec pump_spec_from_json(std::string_view text);

std::string to_json(const CalibrationResult& result);
CalibrationResult calibration_from_json(std::string_view text);

std::string to_json(const DispensePlan& plan);
DispensePlan plan_from_json(std::string_view text);

/// {"pump_specs": [...], "default_feedrate": 1500, "channels": 2}; all optional.
std::string to_json(const MachineConfig& config);
MachineConfig machine_from_json(std::string_view text);

/// {"data": [{"dr": 15, "width": 0.487}, ...] or [[15, 0.487], ...],
///  "w_max": 0.96, "tip_outer_diameter": 0.9}
std::string to_json(const WidthModel& model);
WidthModel width_model_from_json(std::string_view text);

}  // namespace lfd
