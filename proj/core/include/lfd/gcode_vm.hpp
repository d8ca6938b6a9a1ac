#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lfd/core_model.hpp"
#include "lfd/diagnostics.hpp"
#include "lfd/gcode.hpp"

namespace lfd {

/// Static description of the simulated rig.
struct MachineConfig {
  // One entry per mixing-extruder channel (A, B, ...). May be empty, in which
  // case the rig has `channels` channels (all six when 0) and no flow ceilings.
  std::vector<SyringePumpSpec> pump_specs;
  std::size_t channels = 0;
  // Feedrate used by moves issued before any F word, mm/min.
  double default_feedrate = 1500.0;

  static constexpr std::size_t kMaxMixChannels = 6;

  std::size_t channel_count() const {
    if (!pump_specs.empty()) return pump_specs.size();
    return channels > 0 ? channels : kMaxMixChannels;
  }
};

struct Position {
  double x = 0;
  double y = 0;
  double z = 0;

  bool operator==(const Position&) const = default;
};

struct MachineState {
  Position position;
  double e_position = 0;              // uL; E is volumetric once M92 is set
  double feedrate = 0;                // mm/min
  double steps_per_microliter = 0;    // 0 until an M92 E is executed
  MixVector mix;
  bool cold_extrusion_allowed = false;
  double elapsed = 0;                 // s

  /// Power-on state for `config`: origin, feedrate = default_feedrate,
  /// all of the mix on channel A.
  static MachineState initial(const MachineConfig& config);

  bool operator==(const MachineState&) const = default;
};

struct TraceSegment {
  std::size_t source_line = 0;  // 1-based program line
  double y_from = 0;            // mm
  double y_to = 0;              // mm
  double duration = 0;          // s
  double feedrate = 0;          // mm/min
  std::vector<double> volume;   // uL per channel
  std::optional<double> dr;     // nL/mm, absent when the bed did not move along Y
  std::vector<double> flow;     // uL/min per channel
  std::vector<std::string> warnings;

  double total_volume() const;

  bool operator==(const TraceSegment&) const = default;
};

struct DispenseTrace {
  std::size_t channels = 0;
  std::vector<TraceSegment> segments;
  std::vector<Diagnostic> events;  // location = 1-based program line
  std::optional<Diagnostic> error; // first error; execution stopped there
  MachineState final_state;

  bool ok() const { return !error.has_value(); }
  std::vector<double> channel_totals() const;
  /// Per-channel volume deposited while the tip was over [lo, hi] along Y,
  /// assuming uniform DR within each segment.
  std::vector<double> volume_within(double lo, double hi) const;
  std::size_t count(Severity severity) const;

  bool operator==(const DispenseTrace&) const = default;
};

struct StepResult {
  MachineState state;
  std::optional<TraceSegment> segment;
  std::vector<Diagnostic> events;

  bool failed() const;
};

/// Executes one command against `state`. Pure: the input state is untouched.
/// Error-class events (cold extrusion, G0 with E, bad M92, all-zero M165,
/// relative modes, unknown channel) leave the returned state equal to `state`.
StepResult execute(const MachineState& state, const Command& cmd, const MachineConfig& config,
                   std::size_t line_number = 0);

/// Runs commands in order from `initial`, stopping at the first error event.
/// Segments whose per-channel flow exceeds that channel's max_flow_rate carry
/// a FLOW_LIMIT warning.
DispenseTrace run_program(const std::vector<Command>& program, const MachineState& initial,
                          const MachineConfig& config);
/// Parses first; throws ParseError on malformed text.
DispenseTrace run_program(const GCodeProgram& program, const MachineState& initial,
                          const MachineConfig& config);

/// CSV with header
/// segment,y_from_mm,y_to_mm,duration_s,ch,volume_uL,dr_nL_per_mm,flow_uL_per_min,warnings
/// one row per segment and channel; channel letters A..F; warnings joined by '|'.
std::string trace_to_csv(const DispenseTrace& trace);

struct DepositionProfile {
  double bin_width = 0;                   // mm
  Interval window;                        // mm along Y
  std::vector<std::vector<double>> bins;  // [channel][bin], uL
  std::vector<double> before_window;      // priming, uL per channel
  std::vector<double> after_window;       // overrun, uL per channel

  std::size_t bin_count() const { return bins.empty() ? 0 : bins.front().size(); }
  std::vector<double> window_totals() const;
};

/// Spreads each segment's volume uniformly over the Y span it covered and
/// accumulates it into `bin`-wide bins covering `window` (the last bin is
/// truncated at window.hi). Throws DomainError for bin <= 0 or an empty window.
DepositionProfile deposition_profile(const DispenseTrace& trace, Interval window, double bin);

}  // namespace lfd
