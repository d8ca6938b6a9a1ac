#include "lfd/json_io.hpp"

#include <json.hpp>

namespace lfd {

using nlohmann::json;

namespace {

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

// Runs a schema read, turning nlohmann's access errors into FormatError.
template <typename F>
auto read_schema(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

json spec_json(const SyringePumpSpec& s) {
  return {{"steps_per_rev", s.steps_per_rev},
          {"microstepping", s.microstepping},
          {"syringe_inner_diameter", s.syringe_inner_diameter},
          {"leadscrew_lead", s.leadscrew_lead},
          {"max_flow_rate", s.max_flow_rate},
          {"label", s.label}};
}

SyringePumpSpec spec_from(const json& j) {
  SyringePumpSpec s;
  s.steps_per_rev = j.at("steps_per_rev").get<int>();
  s.microstepping = j.at("microstepping").get<int>();
  s.syringe_inner_diameter = j.at("syringe_inner_diameter").get<double>();
  s.leadscrew_lead = j.at("leadscrew_lead").get<double>();
  s.max_flow_rate = j.at("max_flow_rate").get<double>();
  s.label = j.value("label", std::string());
  return s;
}

json calibration_json(const CalibrationResult& c) {
  return {{"microsteps_per_microliter", c.microsteps_per_microliter},
          {"source", to_string(c.source)}};
}

CalibrationResult calibration_from(const json& j) {
  CalibrationResult c;
  c.microsteps_per_microliter = j.at("microsteps_per_microliter").get<double>();
  c.source = calibration_source_from_string(j.value("source", std::string("geometric")));
  return c;
}

json line_json(const LineSpec& l) {
  return {{"total_volume", l.total_volume},
          {"travel_distance", l.travel_distance},
          {"dispensing_speed", l.dispensing_speed},
          {"mix", {{"fractions", l.mix.raw()}}},
          {"y_start", l.y_start},
          {"prime_length", l.prime_length}};
}

LineSpec line_from(const json& j) {
  LineSpec l;
  l.total_volume = j.at("total_volume").get<double>();
  l.travel_distance = j.at("travel_distance").get<double>();
  l.dispensing_speed = j.at("dispensing_speed").get<double>();
  if (j.contains("mix")) {
    const json& mix = j.at("mix");
    const json& fractions = mix.is_array() ? mix : mix.at("fractions");
    l.mix = MixVector(fractions.get<std::vector<double>>());
  }
  l.y_start = j.value("y_start", 0.0);
  l.prime_length = j.value("prime_length", 0.0);
  l.validate();
  return l;
}

}  // namespace

std::string to_json(const SyringePumpSpec& spec) { return spec_json(spec).dump(2); }

SyringePumpSpec pump_spec_from_json(std::string_view text) {
  const json j = parse(text);
  auto spec = read_schema("SyringePumpSpec", [&] { return spec_from(j); });
  spec.validate();
  return spec;
}

std::string to_json(const CalibrationResult& result) { return calibration_json(result).dump(2); }

CalibrationResult calibration_from_json(std::string_view text) {
  const json j = parse(text);
  return read_schema("CalibrationResult", [&] { return calibration_from(j); });
}

std::string to_json(const DispensePlan& plan) {
  json lines = json::array();
  for (const auto& l : plan.lines) lines.push_back(line_json(l));
  json specs = json::array();
  for (const auto& s : plan.pump_specs) specs.push_back(spec_json(s));
  json cals = json::array();
  for (const auto& c : plan.calibration) cals.push_back(calibration_json(c));
  json j = {{"lines", lines},
            {"membrane_window", {plan.membrane_window.lo, plan.membrane_window.hi}},
            {"pump_specs", specs},
            {"calibration", cals},
            {"metadata", plan.metadata}};
  return j.dump(2);
}

DispensePlan plan_from_json(std::string_view text) {
  const json j = parse(text);
  return read_schema("DispensePlan", [&] {
    DispensePlan plan;
    for (const auto& l : j.at("lines")) plan.lines.push_back(line_from(l));
    const auto window = j.at("membrane_window").get<std::vector<double>>();
    if (window.size() != 2) throw FormatError("membrane_window must be [lo, hi]");
    plan.membrane_window = {window[0], window[1]};
    for (const auto& s : j.at("pump_specs")) plan.pump_specs.push_back(spec_from(s));
    for (const auto& c : j.at("calibration")) plan.calibration.push_back(calibration_from(c));
    if (j.contains("metadata")) {
      plan.metadata = j.at("metadata").get<std::map<std::string, double>>();
    }
    return plan;
  });
}

std::string to_json(const MachineConfig& config) {
  json specs = json::array();
  for (const auto& s : config.pump_specs) specs.push_back(spec_json(s));
  json j{{"pump_specs", specs}, {"default_feedrate", config.default_feedrate}};
  if (config.channels > 0) j["channels"] = config.channels;
  return j.dump(2);
}

MachineConfig machine_from_json(std::string_view text) {
  const json j = parse(text);
  auto config = read_schema("MachineConfig", [&] {
    MachineConfig c;
    if (j.contains("pump_specs")) {
      for (const auto& s : j.at("pump_specs")) c.pump_specs.push_back(spec_from(s));
    }
    c.default_feedrate = j.value("default_feedrate", c.default_feedrate);
    c.channels = j.value("channels", std::size_t{0});
    return c;
  });
  for (const auto& s : config.pump_specs) s.validate();
  if (config.pump_specs.size() > MachineConfig::kMaxMixChannels ||
      config.channels > MachineConfig::kMaxMixChannels) {
    throw DomainError("the mixing extruder drives at most 6 channels");
  }
  if (!(config.default_feedrate > 0)) throw DomainError("default_feedrate must be positive");
  return config;
}

std::string to_json(const WidthModel& model) {
  json data = json::array();
  for (const auto& d : model.data) data.push_back({{"dr", d.dr}, {"width", d.width}});
  return json{{"data", data},
              {"w_max", model.w_max},
              {"tip_outer_diameter", model.tip_outer_diameter}}
      .dump(2);
}

WidthModel width_model_from_json(std::string_view text) {
  const json j = parse(text);
  auto model = read_schema("WidthModel", [&] {
    WidthModel m;
    for (const auto& d : j.at("data")) {
      if (d.is_array()) {
        if (d.size() != 2) throw FormatError("width datum must be [dr, width]");
        m.data.push_back({d[0].get<double>(), d[1].get<double>()});
      } else {
        m.data.push_back({d.at("dr").get<double>(), d.at("width").get<double>()});
      }
    }
    m.w_max = j.at("w_max").get<double>();
    m.tip_outer_diameter = j.value("tip_outer_diameter", 0.9);
    return m;
  });
  model.validate();
  return model;
}

}  // namespace lfd
