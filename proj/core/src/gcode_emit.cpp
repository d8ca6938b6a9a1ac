#include "lfd/gcode_emit.hpp"

#include <cmath>
#include <cstdio>

#include "lfd/decimal.hpp"

namespace lfd {

namespace {

char channel_letter(std::size_t channel) { return static_cast<char>('A' + channel); }

double round_hundredths(double v) { return std::round(v * 100.0) / 100.0; }

bool representable(double v) {
  const auto back = parse_decimal(format_decimal(v));
  return back && *back == v;
}

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string out = "plan rejected:";
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) out += "\n  " + describe(d);
  }
  return out;
}

}  // namespace

CompileError::CompileError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

std::vector<Diagnostic> validate_plan(const DispensePlan& plan) {
  std::vector<Diagnostic> out;
  auto add = [&out](Severity s, const char* code, std::string msg,
                    std::optional<std::size_t> pass = std::nullopt) {
    out.push_back({s, code, std::move(msg), pass});
  };

  const std::size_t channels = plan.channel_count();
  if (channels == 0) add(Severity::error, "NO_CHANNELS", "plan has no pump_specs");
  if (channels > MachineConfig::kMaxMixChannels) {
    add(Severity::error, "TOO_MANY_CHANNELS", "the mixing extruder drives at most 6 channels");
  }
  for (std::size_t ch = 0; ch < channels; ++ch) {
    try {
      plan.pump_specs[ch].validate();
    } catch (const DomainError& e) {
      add(Severity::error, "BAD_PUMP_SPEC",
          std::string("channel ") + channel_letter(ch) + ": " + e.what());
    }
  }
  if (plan.calibration.size() != channels) {
    add(Severity::error, "CALIBRATION_COUNT",
        "expected one calibration per channel (" + std::to_string(channels) + "), got " +
            std::to_string(plan.calibration.size()));
  }
  for (const auto& cal : plan.calibration) {
    if (!(cal.microsteps_per_microliter > 0) || !std::isfinite(cal.microsteps_per_microliter)) {
      add(Severity::error, "BAD_CALIBRATION", "microsteps_per_microliter must be positive");
    }
  }
  for (std::size_t ch = 1; ch < plan.calibration.size(); ++ch) {
    if (plan.calibration[ch].microsteps_per_microliter !=
        plan.calibration[0].microsteps_per_microliter) {
      add(Severity::warning, "CALIBRATION_MISMATCH",
          std::string("channel ") + channel_letter(ch) +
              " calibration differs from channel A; a single M92 E applies to all channels");
    }
  }
  if (!plan.lines.empty() && !(plan.membrane_window.hi > plan.membrane_window.lo)) {
    add(Severity::error, "BAD_WINDOW", "membrane_window must have hi > lo");
  }

  for (std::size_t i = 0; i < plan.lines.size(); ++i) {
    const LineSpec& line = plan.lines[i];
    try {
      line.validate();
    } catch (const DomainError& e) {
      add(Severity::error, "BAD_LINE", e.what(), i);
      continue;
    }
    if (line.mix.size() != channels) {
      add(Severity::error, "CHANNEL_MISMATCH",
          "mix has " + std::to_string(line.mix.size()) + " entries for " +
              std::to_string(channels) + " channel(s)",
          i);
      continue;
    }
    if (!Interval{line.y_start, line.y_end()}.contains(plan.membrane_window)) {
      add(Severity::error, "WINDOW_OUTSIDE_TRAVEL",
          "membrane window [" + format_decimal(plan.membrane_window.lo) + ", " +
              format_decimal(plan.membrane_window.hi) + "] is not inside travel [" +
              format_decimal(line.y_start) + ", " + format_decimal(line.y_end()) + "]",
          i);
    }
    for (double v : {line.total_volume, line.dispensing_speed, line.y_start, line.y_end(),
                     line.y_start - line.prime_length}) {
      if (!representable(v)) {
        add(Severity::warning, "ROUNDED_VALUE",
            format_decimal(v, 9) + " is written with 4 decimals in G-code", i);
        break;
      }
    }
    for (double r : line.mix.raw()) {
      if (!representable(r)) {
        add(Severity::warning, "ROUNDED_VALUE", "mix ratio is written with 4 decimals", i);
        break;
      }
    }

    if (line.dispensing_speed < kSpeedEnvelopeLow || line.dispensing_speed > kSpeedEnvelopeHigh) {
      add(Severity::warning, "SPEED_ENVELOPE",
          "DS " + format_decimal(line.dispensing_speed) + " mm/min is outside [" +
              format_decimal(kSpeedEnvelopeLow) + ", " + format_decimal(kSpeedEnvelopeHigh) + "]",
          i);
    }
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const double fraction = line.mix.fraction(ch);
      if (fraction == 0) continue;
      const double flow = pump_flow_rate(line, ch);
      const double limit = plan.pump_specs[ch].max_flow_rate;
      if (flow > limit) {
        add(Severity::error, "FLOW_LIMIT",
            std::string("channel ") + channel_letter(ch) + " needs " + format_decimal(flow) +
                " uL/min, above its " + format_decimal(limit) + " uL/min ceiling",
            i);
      }
      const double dr = channel_dispense_rate(line, ch);
      const double dr_rounded = round_hundredths(dr);
      if (dr_rounded < kLowDrThreshold) {
        add(Severity::warning, "LOW_DR",
            std::string("channel ") + channel_letter(ch) + " DR " + format_decimal(dr, 2) +
                " nL/mm is below " + format_decimal(kLowDrThreshold) +
                " nL/mm; expect discontinuous lines",
            i);
      } else if (dr_rounded >= kHighDrThreshold) {
        add(Severity::warning, "HIGH_DR",
            std::string("channel ") + channel_letter(ch) + " DR " + format_decimal(dr, 2) +
                " nL/mm is at or above " + format_decimal(kHighDrThreshold) +
                " nL/mm; excess liquid may not absorb uniformly",
            i);
      }
    }
  }
  return out;
}

GCodeProgram compile_plan(const DispensePlan& plan) {
  auto diagnostics = validate_plan(plan);
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::error) throw CompileError(std::move(diagnostics));
  }

  GCodeProgram program;
  auto emit = [&program](std::string text, std::string provenance) {
    program.provenance[program.lines.size()] = std::move(provenance);
    program.lines.push_back(std::move(text));
  };

  emit("M302 P1", "header cold-extrusion");
  emit("M92 E" + format_decimal(plan.calibration.front().microsteps_per_microliter),
       "header calibration");

  for (std::size_t i = 0; i < plan.lines.size(); ++i) {
    const LineSpec& line = plan.lines[i];
    const std::string pass = "pass " + std::to_string(i);
    const std::string ds = format_decimal(line.dispensing_speed);

    emit("; " + pass + ": " + format_decimal(line.total_volume) + " uL over " +
             format_decimal(line.travel_distance) + " mm at " + ds + " mm/min, DR " +
             format_decimal(dispense_rate(line), 2) + " nL/mm",
         pass + " comment");

    std::string mix = "M165";
    for (std::size_t ch = 0; ch < line.mix.size(); ++ch) {
      mix += ' ';
      mix += channel_letter(ch);
      mix += format_decimal(line.mix.raw()[ch]);
    }
    emit(mix, pass + " mix");
    emit("G92 E0", pass + " reset");
    emit("G0 Y" + format_decimal(line.y_start - line.prime_length), pass + " travel");
    if (line.prime_length > 0) {
      const double prime_volume = line.total_volume * line.prime_length / line.travel_distance;
      emit("G1 F" + ds + " Y" + format_decimal(line.y_start) + " E" + format_decimal(prime_volume),
           pass + " prime");
      emit("G92 E0", pass + " reset");
    }
    emit("G1 F" + ds + " Y" + format_decimal(line.y_end()) + " E" +
             format_decimal(line.total_volume),
         pass + " membrane");
  }
  return program;
}

std::vector<PassVolumes> pass_volumes(const GCodeProgram& program, const DispenseTrace& trace,
                                      std::size_t pass_count) {
  std::vector<PassVolumes> out(pass_count);
  for (auto& p : out) {
    p.prime.assign(trace.channels, 0.0);
    p.membrane.assign(trace.channels, 0.0);
  }
  for (const auto& seg : trace.segments) {
    if (seg.source_line == 0) continue;
    auto it = program.provenance.find(seg.source_line - 1);
    if (it == program.provenance.end()) continue;
    unsigned long index = 0;
    char role[32] = {};
    if (std::sscanf(it->second.c_str(), "pass %lu %31s", &index, role) != 2) continue;
    if (index >= pass_count) continue;
    const std::string r = role;
    auto& target = r == "prime" ? out[index].prime : out[index].membrane;
    if (r != "prime" && r != "membrane") continue;
    for (std::size_t ch = 0; ch < seg.volume.size() && ch < trace.channels; ++ch) {
      target[ch] += seg.volume[ch];
    }
  }
  return out;
}

MachineConfig machine_for(const DispensePlan& plan) {
  MachineConfig config;
  config.pump_specs = plan.pump_specs;
  if (!plan.lines.empty()) config.default_feedrate = plan.lines.front().dispensing_speed;
  return config;
}

}  // namespace lfd
