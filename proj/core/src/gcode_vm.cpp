#include "lfd/gcode_vm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lfd/decimal.hpp"

namespace lfd {

namespace {

const std::set<std::string> kThermalCodes = {"M104", "M105", "M106", "M107",
                                             "M109", "M140", "M190"};
const std::set<std::string> kNoOpCodes = {"M82", "G90", "G21", "M84", "M18", "M17", "M400"};

char channel_letter(std::size_t channel) { return static_cast<char>('A' + channel); }

Diagnostic event(Severity severity, std::string code, std::string message, std::size_t line) {
  return Diagnostic{severity, std::move(code), std::move(message), line};
}

StepResult fail(const MachineState& state, std::string code, std::string message,
                std::size_t line) {
  StepResult r{state, std::nullopt, {}};
  r.events.push_back(event(Severity::error, std::move(code), std::move(message), line));
  return r;
}

StepResult execute_unsupported(const MachineState& state, const Command& cmd, std::size_t line) {
  StepResult r{state, std::nullopt, {}};
  if (cmd.code == "M83") {
    return fail(state, "RELATIVE_EXTRUSION",
                "M83 (relative extrusion) is not supported; only absolute E is simulated", line);
  }
  if (cmd.code == "G91") {
    return fail(state, "RELATIVE_POSITIONING",
                "G91 (relative positioning) is not supported; only absolute moves are simulated",
                line);
  }
  if (cmd.code == "G20") {
    return fail(state, "INCH_UNITS", "G20 (inch units) is not supported", line);
  }
  if (kThermalCodes.contains(cmd.code)) {
    r.events.push_back(event(Severity::info, "THERMAL_LOGGED",
                             "thermal command logged and skipped: " + cmd.raw, line));
  } else if (kNoOpCodes.contains(cmd.code)) {
    r.events.push_back(event(Severity::info, "NO_OP", "accepted without effect: " + cmd.raw, line));
  } else {
    r.events.push_back(event(Severity::info, "SKIPPED", "unsupported command skipped: " + cmd.raw,
                             line));
  }
  return r;
}

StepResult execute_mix(const MachineState& state, const Command& cmd, const MachineConfig& config,
                       std::size_t line) {
  std::vector<double> raw(config.channel_count(), 0.0);
  for (const auto& w : cmd.words) {
    if (w.letter < 'A' || w.letter > 'F') continue;
    const auto channel = static_cast<std::size_t>(w.letter - 'A');
    if (w.value < 0) {
      return fail(state, "BAD_MIX", std::string("negative mix ratio for channel ") + w.letter, line);
    }
    if (channel >= raw.size()) {
      if (w.value == 0) continue;
      return fail(state, "UNKNOWN_CHANNEL",
                  std::string("M165 names channel ") + w.letter + " but the machine has " +
                      std::to_string(raw.size()) + " channel(s)",
                  line);
    }
    raw[channel] = w.value;
  }
  if (std::all_of(raw.begin(), raw.end(), [](double v) { return v == 0; })) {
    return fail(state, "ZERO_MIX", "M165 with all channels at zero", line);
  }
  StepResult r{state, std::nullopt, {}};
  r.state.mix = MixVector(std::move(raw));
  return r;
}

StepResult execute_move(const MachineState& state, const Command& cmd, const MachineConfig& config,
                        std::size_t line) {
  const bool extrusion_allowed = cmd.kind == CommandKind::G1;
  if (!extrusion_allowed && cmd.has('E')) {
    return fail(state, "G0_EXTRUSION", "G0 is reserved for non-extrusion movements", line);
  }

  MachineState next = state;
  if (auto f = cmd.word('F')) {
    if (!(*f > 0)) return fail(state, "BAD_FEEDRATE", "feedrate must be positive", line);
    next.feedrate = *f;
  }
  if (auto x = cmd.word('X')) next.position.x = *x;
  if (auto y = cmd.word('Y')) next.position.y = *y;
  if (auto z = cmd.word('Z')) next.position.z = *z;
  if (auto e = cmd.word('E')) next.e_position = *e;

  const double delta_e = next.e_position - state.e_position;
  if (delta_e > 0 && !state.cold_extrusion_allowed) {
    return fail(state, "COLD_EXTRUSION",
                "extrusion refused: cold extrusion is prohibited until M302 P1", line);
  }

  const double dx = next.position.x - state.position.x;
  const double dy = next.position.y - state.position.y;
  const double dz = next.position.z - state.position.z;
  const double distance = std::sqrt(dx * dx + dy * dy + dz * dz);
  // E-only moves run at the feedrate in E units per minute.
  const double path = distance > 0 ? distance : std::abs(delta_e);
  const double duration = path > 0 ? 60.0 * path / next.feedrate : 0.0;
  next.elapsed += duration;

  StepResult r{next, std::nullopt, {}};
  if (delta_e == 0) return r;

  TraceSegment seg;
  seg.source_line = line;
  seg.y_from = state.position.y;
  seg.y_to = next.position.y;
  seg.duration = duration;
  seg.feedrate = next.feedrate;
  const auto fractions = state.mix.normalized();
  const std::size_t channels = fractions.size();
  seg.volume.resize(channels);
  seg.flow.resize(channels);
  for (std::size_t ch = 0; ch < channels; ++ch) {
    seg.volume[ch] = fractions[ch] * delta_e;
    seg.flow[ch] = path > 0 ? seg.volume[ch] * next.feedrate / path : 0.0;
  }
  if (dy != 0) seg.dr = 1000.0 * delta_e / std::abs(dy);

  auto warn = [&](std::string code, std::string message) {
    seg.warnings.push_back(code);
    r.events.push_back(event(Severity::warning, std::move(code), std::move(message), line));
  };
  if (state.steps_per_microliter <= 0) {
    warn("UNCALIBRATED_E", "extrusion before M92 E; E is taken as uL without a steps/uL constant");
  }
  if (delta_e < 0) warn("RETRACTION", "negative E move withdraws liquid");
  if (!seg.dr) warn("STATIONARY_EXTRUSION", "extrusion without Y travel");
  for (std::size_t ch = 0; ch < channels && ch < config.pump_specs.size(); ++ch) {
    const double limit = config.pump_specs[ch].max_flow_rate;
    if (std::abs(seg.flow[ch]) > limit) {
      warn(std::string("FLOW_LIMIT:") + channel_letter(ch),
           std::string("channel ") + channel_letter(ch) + " flow " +
               format_decimal(std::abs(seg.flow[ch])) + " uL/min exceeds " +
               format_decimal(limit) + " uL/min");
    }
  }
  r.segment = std::move(seg);
  return r;
}

}  // namespace

MachineState MachineState::initial(const MachineConfig& config) {
  MachineState s;
  s.feedrate = config.default_feedrate;
  s.mix = MixVector::single(0, config.channel_count());
  return s;
}

double TraceSegment::total_volume() const {
  return std::accumulate(volume.begin(), volume.end(), 0.0);
}

bool StepResult::failed() const {
  return std::any_of(events.begin(), events.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::error; });
}

std::vector<double> DispenseTrace::channel_totals() const {
  std::vector<double> totals(channels, 0.0);
  for (const auto& seg : segments) {
    for (std::size_t ch = 0; ch < seg.volume.size() && ch < channels; ++ch) {
      totals[ch] += seg.volume[ch];
    }
  }
  return totals;
}

std::vector<double> DispenseTrace::volume_within(double lo, double hi) const {
  std::vector<double> totals(channels, 0.0);
  for (const auto& seg : segments) {
    const double a = std::min(seg.y_from, seg.y_to);
    const double b = std::max(seg.y_from, seg.y_to);
    double share = 0;
    if (b > a) {
      const double overlap = std::max(0.0, std::min(b, hi) - std::max(a, lo));
      share = overlap / (b - a);
    } else {
      share = (a >= lo && a <= hi) ? 1.0 : 0.0;
    }
    if (share == 0) continue;
    for (std::size_t ch = 0; ch < seg.volume.size() && ch < channels; ++ch) {
      totals[ch] += share == 1.0 ? seg.volume[ch] : seg.volume[ch] * share;
    }
  }
  return totals;
}

std::size_t DispenseTrace::count(Severity severity) const {
  return static_cast<std::size_t>(std::count_if(
      events.begin(), events.end(), [&](const Diagnostic& d) { return d.severity == severity; }));
}

StepResult execute(const MachineState& state, const Command& cmd, const MachineConfig& config,
                   std::size_t line_number) {
  StepResult r{state, std::nullopt, {}};
  switch (cmd.kind) {
    case CommandKind::comment:
      return r;
    case CommandKind::unsupported:
      return execute_unsupported(state, cmd, line_number);
    case CommandKind::M302: {
      const auto p = cmd.word('P');
      const auto s = cmd.word('S');
      if (p) {
        r.state.cold_extrusion_allowed = *p != 0;
      } else if (s) {
        r.state.cold_extrusion_allowed = *s <= 0;
      } else {
        r.events.push_back(event(Severity::info, "COLD_EXTRUSION_STATUS",
                                 r.state.cold_extrusion_allowed ? "cold extrusion allowed"
                                                                : "cold extrusion prohibited",
                                 line_number));
      }
      return r;
    }
    case CommandKind::M92: {
      const auto e = cmd.word('E');
      if (!e) {
        r.events.push_back(event(Severity::info, "NO_OP", "M92 without E leaves E unchanged",
                                 line_number));
        return r;
      }
      if (!(*e > 0)) {
        return fail(state, "BAD_M92", "M92 E must be positive (got " + format_decimal(*e) + ")",
                    line_number);
      }
      r.state.steps_per_microliter = *e;
      return r;
    }
    case CommandKind::M165:
      return execute_mix(state, cmd, config, line_number);
    case CommandKind::G92: {
      if (cmd.words.empty()) {
        r.state.position = {};
        r.state.e_position = 0;
        return r;
      }
      if (auto x = cmd.word('X')) r.state.position.x = *x;
      if (auto y = cmd.word('Y')) r.state.position.y = *y;
      if (auto z = cmd.word('Z')) r.state.position.z = *z;
      if (auto e = cmd.word('E')) r.state.e_position = *e;
      return r;
    }
    case CommandKind::G0:
    case CommandKind::G1:
      return execute_move(state, cmd, config, line_number);
  }
  return r;
}

DispenseTrace run_program(const std::vector<Command>& program, const MachineState& initial,
                          const MachineConfig& config) {
  DispenseTrace trace;
  trace.channels = config.channel_count();
  MachineState state = initial;
  for (std::size_t i = 0; i < program.size(); ++i) {
    StepResult step = execute(state, program[i], config, i + 1);
    for (auto& e : step.events) {
      if (e.severity == Severity::error && !trace.error) trace.error = e;
      trace.events.push_back(std::move(e));
    }
    if (trace.error) break;
    state = std::move(step.state);
    if (step.segment) trace.segments.push_back(std::move(*step.segment));
  }
  trace.final_state = state;
  return trace;
}

DispenseTrace run_program(const GCodeProgram& program, const MachineState& initial,
                          const MachineConfig& config) {
  return run_program(parse_program(program), initial, config);
}

std::string trace_to_csv(const DispenseTrace& trace) {
  std::string out =
      "segment,y_from_mm,y_to_mm,duration_s,ch,volume_uL,dr_nL_per_mm,flow_uL_per_min,warnings\n";
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const auto& seg = trace.segments[i];
    std::string warnings;
    for (const auto& w : seg.warnings) {
      if (!warnings.empty()) warnings += '|';
      warnings += w;
    }
    for (std::size_t ch = 0; ch < seg.volume.size(); ++ch) {
      out += std::to_string(i) + ',' + format_decimal(seg.y_from, 6) + ',' +
             format_decimal(seg.y_to, 6) + ',' + format_decimal(seg.duration, 6) + ',' +
             channel_letter(ch) + ',' + format_decimal(seg.volume[ch], 9) + ',' +
             (seg.dr ? format_decimal(*seg.dr, 6) : std::string()) + ',' +
             format_decimal(seg.flow[ch], 6) + ',' + warnings + '\n';
    }
  }
  return out;
}

}  // namespace lfd
