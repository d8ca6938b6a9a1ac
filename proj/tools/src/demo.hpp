#pragma once

// Golden plan for the two-reagent test strip: test and control line reagents
// dispensed together through two tips 7 mm apart.

#include <string>
#include <vector>

#include "lfd/core_model.hpp"
#include "lfd/gcode.hpp"
#include "lfd/gcode_vm.hpp"
#include "lfd/width_model.hpp"

namespace lfd::cli {

struct DemoResult {
  DispensePlan plan;
  GCodeProgram program;
  DispenseTrace trace;
  std::vector<double> membrane_volumes;  // uL per channel over the membrane section
  std::vector<double> channel_dr;        // nL/mm per channel over the membrane section
  WidthPrediction predicted;             // default model at the channel DR
};

/// 10 uL of each reagent over a 150 mm membrane section at DS 3000 mm/min,
/// M165 A50 B50, 40 mm of priming before the section.
DispensePlan leptospirosis_plan();

DemoResult run_leptospirosis_demo();

/// JSON summary of a demo run.
std::string demo_summary_json(const DemoResult& result);

}  // namespace lfd::cli
