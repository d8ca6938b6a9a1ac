#include <gtest/gtest.h>

#include "lfd/calibration.hpp"
#include "lfd/json_io.hpp"

namespace lfd {
namespace {

DispensePlan sample_plan() {
  DispensePlan p;
  const SyringePumpSpec s{200, 16, 14.5, 8, 600, "TL"};
  p.pump_specs = {s, s};
  p.pump_specs[1].label = "CL";
  p.calibration = {microsteps_per_microliter(s), gravimetric_calibration(2422.3, 1000, 1)};
  LineSpec l;
  l.total_volume = 20;
  l.travel_distance = 150;
  l.dispensing_speed = 3000;
  l.mix = MixVector({50, 50});
  l.y_start = 40;
  l.prime_length = 40;
  p.lines = {l};
  p.membrane_window = {40, 190};
  p.metadata = {{"tip_separation_mm", 7}};
  return p;
}

TEST(JsonIo, PlanRoundTrip) {
  const auto p = sample_plan();
  EXPECT_EQ(plan_from_json(to_json(p)), p);
}

TEST(JsonIo, MixAcceptsBareArray) {
  const auto p = plan_from_json(R"({
    "lines": [{"total_volume": 24, "travel_distance": 180, "dispensing_speed": 3000,
               "mix": [80, 20]}],
    "membrane_window": [0, 180],
    "pump_specs": [
      {"steps_per_rev": 200, "microstepping": 16, "syringe_inner_diameter": 14.5,
       "leadscrew_lead": 8, "max_flow_rate": 500},
      {"steps_per_rev": 200, "microstepping": 16, "syringe_inner_diameter": 14.5,
       "leadscrew_lead": 8, "max_flow_rate": 500}],
    "calibration": [{"microsteps_per_microliter": 2.4223}, {"microsteps_per_microliter": 2.4223}]
  })");
  EXPECT_DOUBLE_EQ(p.lines[0].mix.fraction(0), 0.8);
  EXPECT_EQ(p.calibration[1].source, CalibrationSource::geometric);
}

TEST(JsonIo, PumpSpecAndCalibration) {
  const SyringePumpSpec s{200, 16, 14.5, 8, 500, "A"};
  EXPECT_EQ(pump_spec_from_json(to_json(s)), s);
  const auto c = gravimetric_calibration(1000, 412.84, 0.998);
  EXPECT_EQ(calibration_from_json(to_json(c)), c);
}

TEST(JsonIo, MachineConfig) {
  MachineConfig m;
  m.pump_specs = {{200, 16, 14.5, 8, 500, "A"}};
  m.default_feedrate = 2000;
  const auto back = machine_from_json(to_json(m));
  EXPECT_EQ(back.pump_specs, m.pump_specs);
  EXPECT_EQ(back.default_feedrate, 2000.0);
  EXPECT_EQ(machine_from_json(R"({"channels": 2})").channel_count(), 2u);
  EXPECT_EQ(machine_from_json("{}").channel_count(), MachineConfig::kMaxMixChannels);
}

TEST(JsonIo, WidthModelFormats) {
  EXPECT_EQ(width_model_from_json(to_json(default_model())), default_model());
  const auto m = width_model_from_json(R"({"data": [[10, 0.3], [20, 0.5]], "w_max": 0.6,
                                           "tip_outer_diameter": 0.9})");
  ASSERT_EQ(m.data.size(), 2u);
  EXPECT_EQ(m.data[1], (WidthDatum{20, 0.5}));
}

TEST(JsonIo, Errors) {
  EXPECT_THROW(plan_from_json("{"), FormatError);
  EXPECT_THROW(plan_from_json(R"({"lines": []})"), FormatError);
  EXPECT_THROW(pump_spec_from_json(R"({"steps_per_rev": "x"})"), FormatError);
  EXPECT_THROW(pump_spec_from_json(R"({"steps_per_rev": 200, "microstepping": 3,
      "syringe_inner_diameter": 1, "leadscrew_lead": 1, "max_flow_rate": 1})"),
               DomainError);
  EXPECT_THROW(width_model_from_json(R"({"data": [[10, 0.5], [5, 0.6]], "w_max": 1})"),
               DomainError);
  EXPECT_THROW(machine_from_json(R"({"channels": 9})"), DomainError);
}

}  // namespace
}  // namespace lfd
