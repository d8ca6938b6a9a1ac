#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "lfd/core_model.hpp"
#include "lfd/diagnostics.hpp"
#include "lfd/gcode.hpp"
#include "lfd/gcode_vm.hpp"

namespace lfd {

// Dispensing-speed envelope in which linewidth is insensitive to DS, mm/min.
inline constexpr double kSpeedEnvelopeLow = 1500.0;
inline constexpr double kSpeedEnvelopeHigh = 5500.0;
// Per-channel DR below this produced broken lines; at or above the high mark
// the membrane does not absorb the liquid uniformly. nL/mm, compared after
// rounding to 0.01 nL/mm (the resolution the reference values are quoted at).
inline constexpr double kLowDrThreshold = 15.0;
inline constexpr double kHighDrThreshold = 106.67;

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Structural checks plus the firmware and membrane envelopes. Locations are
/// 0-based pass indices. Only ERROR diagnostics block compilation.
std::vector<Diagnostic> validate_plan(const DispensePlan& plan);

/// Emits the dispensing program:
///
///   M302 P1
///   M92 E<channel A microsteps/uL>
///   ; pass i ...              (per pass)
///   M165 A.. B..
///   G92 E0
///   G0 Y<y_start - prime_length>
///   G1 F<DS> Y<y_start> E<prime volume>   (only with priming)
///   G92 E0                                 (only with priming)
///   G1 F<DS> Y<y_start + travel> E<total_volume>
///
/// Priming runs at the same DR as the metered travel. Throws CompileError
/// when validate_plan reports errors.
GCodeProgram compile_plan(const DispensePlan& plan);

struct PassVolumes {
  std::vector<double> prime;     // uL per channel deposited while priming
  std::vector<double> membrane;  // uL per channel over the metered travel
};

/// Attributes trace segments back to the passes that produced them using the
/// program's provenance map.
std::vector<PassVolumes> pass_volumes(const GCodeProgram& program, const DispenseTrace& trace,
                                      std::size_t pass_count);

/// Machine description matching a plan (its pumps, DS of the first pass as
/// default feedrate).
MachineConfig machine_for(const DispensePlan& plan);

}  // namespace lfd
