#include "demo.hpp"

#include <json.hpp>

#include "lfd/calibration.hpp"
#include "lfd/decimal.hpp"
#include "lfd/gcode_emit.hpp"

namespace lfd::cli {

DispensePlan leptospirosis_plan() {
  const SyringePumpSpec pump{200, 16, 14.5, 8, 600, ""};
  DispensePlan plan;
  plan.pump_specs = {pump, pump};
  plan.pump_specs[0].label = "TL";
  plan.pump_specs[1].label = "CL";
  plan.calibration = {microsteps_per_microliter(pump), microsteps_per_microliter(pump)};

  LineSpec line;
  line.total_volume = 20;
  line.travel_distance = 150;
  line.dispensing_speed = 3000;
  line.mix = MixVector({50, 50});
  line.y_start = 40;
  line.prime_length = 40;  // assumed; matches the 40 mm excluded region
  plan.lines = {line};
  plan.membrane_window = {40, 190};
  plan.metadata = {{"tip_separation_mm", 7.0}, {"tip_outer_diameter_mm", 0.9}};
  return plan;
}

DemoResult run_leptospirosis_demo() {
  DemoResult r;
  r.plan = leptospirosis_plan();
  r.program = compile_plan(r.plan);
  const auto machine = machine_for(r.plan);
  r.trace = run_program(parse_program(r.program), MachineState::initial(machine), machine);
  if (!r.trace.ok()) throw DomainError("demo program failed: " + describe(*r.trace.error));
  const auto passes = pass_volumes(r.program, r.trace, r.plan.lines.size());
  r.membrane_volumes = passes.front().membrane;
  const auto& line = r.plan.lines.front();
  for (std::size_t ch = 0; ch < r.plan.channel_count(); ++ch) {
    r.channel_dr.push_back(1000.0 * r.membrane_volumes[ch] / line.travel_distance);
  }
  WidthModel model = default_model();
  model.tip_outer_diameter = r.plan.metadata.at("tip_outer_diameter_mm");
  r.predicted = predict_width(model, r.channel_dr.front());
  return r;
}

std::string demo_summary_json(const DemoResult& r) {
  using nlohmann::json;
  auto rounded = [](double v, int places) { return *parse_decimal(format_decimal(v, places)); };
  const auto& line = r.plan.lines.front();
  json channels = json::array();
  for (std::size_t ch = 0; ch < r.plan.channel_count(); ++ch) {
    channels.push_back({{"channel", std::string(1, static_cast<char>('A' + ch))},
                        {"label", r.plan.pump_specs[ch].label},
                        {"membrane_volume_uL", rounded(r.membrane_volumes[ch], 6)},
                        {"dr_nL_per_mm", rounded(r.channel_dr[ch], 2)}});
  }
  json flags = json::array();
  if (r.predicted.low_dr()) flags.push_back("LOW_DR");
  if (r.predicted.excess_dr()) flags.push_back("EXCESS_DR");
  const json j = {
      {"membrane_section_mm", line.travel_distance},
      {"dispensing_speed_mm_per_min", line.dispensing_speed},
      {"prime_length_mm", line.prime_length},
      {"prime_length_assumed", true},
      {"tip_separation_mm", r.plan.metadata.at("tip_separation_mm")},
      {"channels", channels},
      {"predicted_width_mm", rounded(r.predicted.width, 4)},
      {"width_flags", flags},
      {"warnings", r.trace.count(Severity::warning)},
      {"errors", r.trace.count(Severity::error)},
  };
  return j.dump(2) + "\n";
}

}  // namespace lfd::cli
