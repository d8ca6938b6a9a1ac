#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "lfd/calibration.hpp"
#include "lfd/gcode_emit.hpp"
#include "support/plans.hpp"

namespace lfd {
namespace {

const SyringePumpSpec kPump{200, 16, 14.5, 8, 500, "SP"};

DispensePlan plan_with(std::size_t channels, std::vector<LineSpec> lines, Interval window) {
  DispensePlan p;
  p.pump_specs.assign(channels, kPump);
  p.calibration.assign(channels, microsteps_per_microliter(kPump));
  p.lines = std::move(lines);
  p.membrane_window = window;
  return p;
}

LineSpec line(double volume, double travel, double ds, std::vector<double> mix, double y_start = 0,
              double prime = 0) {
  LineSpec l;
  l.total_volume = volume;
  l.travel_distance = travel;
  l.dispensing_speed = ds;
  l.mix = MixVector(std::move(mix));
  l.y_start = y_start;
  l.prime_length = prime;
  return l;
}

bool contains(const GCodeProgram& p, const std::string& text) {
  return std::find(p.lines.begin(), p.lines.end(), text) != p.lines.end();
}

std::vector<std::string> codes(const std::vector<Diagnostic>& d) {
  std::vector<std::string> out;
  for (const auto& x : d) out.push_back(x.code);
  return out;
}

bool has_code(const std::vector<Diagnostic>& d, const std::string& code) {
  const auto c = codes(d);
  return std::find(c.begin(), c.end(), code) != c.end();
}

TEST(CompilePlan, SingleLine) {
  const auto plan = plan_with(1, {line(20, 200, 3000, {1})}, {0, 200});
  const auto p = compile_plan(plan);
  EXPECT_EQ(p.lines[0], "M302 P1");
  EXPECT_EQ(p.lines[1], "M92 E2.4223");
  EXPECT_TRUE(contains(p, "G1 F3000 Y200 E20"));
}

TEST(CompilePlan, DualPassFiftyFifty) {
  const auto plan = plan_with(2, {line(24, 180, 3000, {50, 50})}, {0, 180});
  const auto p = compile_plan(plan);
  const auto mix = std::find(p.lines.begin(), p.lines.end(), "M165 A50 B50");
  ASSERT_NE(mix, p.lines.end());
  const auto move = std::find(mix, p.lines.end(), "G1 F3000 Y180 E24");
  EXPECT_NE(move, p.lines.end());
}

TEST(CompilePlan, EmptyPlanIsHeaderOnly) {
  const auto p = compile_plan(plan_with(1, {}, {0, 1}));
  EXPECT_EQ(p.lines, (std::vector<std::string>{"M302 P1", "M92 E2.4223"}));
}

TEST(CompilePlan, PrimingKeepsDispensingRate) {
  const auto plan = plan_with(1, {line(20, 150, 3000, {1}, 40, 40)}, {40, 190});
  const auto p = compile_plan(plan);
  EXPECT_TRUE(contains(p, "G0 Y0"));
  // 40 mm of priming at 20/150 uL/mm.
  EXPECT_TRUE(contains(p, "G1 F3000 Y40 E5.3333"));
  EXPECT_TRUE(contains(p, "G1 F3000 Y190 E20"));
}

TEST(CompilePlan, EveryLineParsesAndReserializes) {
  const auto plan = plan_with(2, {line(24, 180, 3000, {80, 20}, 40, 40),
                                  line(12, 180, 2000, {0, 1}, 40, 0)},
                              {40, 220});
  const auto p = compile_plan(plan);
  for (const auto& l : p.lines) EXPECT_EQ(to_text(parse_line(l)), l);
  EXPECT_EQ(p.provenance.at(0), "header cold-extrusion");
  EXPECT_EQ(p.provenance.at(1), "header calibration");
}

TEST(CompilePlan, RejectsInvalidPlan) {
  const auto plan = plan_with(2, {line(24, 180, 3000, {1})}, {0, 180});
  try {
    compile_plan(plan);
    FAIL() << "expected CompileError";
  } catch (const CompileError& e) {
    EXPECT_TRUE(has_code(e.diagnostics(), "CHANNEL_MISMATCH"));
  }
}

TEST(ValidatePlan, HighDrWithoutFlowError) {
  const auto plan = plan_with(2, {line(24, 180, 3000, {80, 20})}, {0, 180});
  const auto d = validate_plan(plan);
  EXPECT_FALSE(has_code(d, "FLOW_LIMIT"));
  ASSERT_TRUE(has_code(d, "HIGH_DR"));
  for (const auto& x : d) {
    if (x.code == "HIGH_DR") {
      EXPECT_EQ(x.severity, Severity::warning);
      EXPECT_EQ(x.location, 0u);
      EXPECT_NE(x.message.find("channel A"), std::string::npos);
    }
  }
}

TEST(ValidatePlan, FlowLimitIsError) {
  auto plan = plan_with(2, {line(24, 180, 3000, {80, 20})}, {0, 180});
  plan.pump_specs[0].max_flow_rate = 300;
  const auto d = validate_plan(plan);
  ASSERT_TRUE(has_code(d, "FLOW_LIMIT"));
  EXPECT_THROW(compile_plan(plan), CompileError);
}

TEST(ValidatePlan, SpeedEnvelope) {
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20, 200, 6000, {1})}, {0, 200})),
                       "SPEED_ENVELOPE"));
  EXPECT_FALSE(has_code(validate_plan(plan_with(1, {line(20, 200, 5500, {1})}, {0, 200})),
                        "SPEED_ENVELOPE"));
  EXPECT_FALSE(has_code(validate_plan(plan_with(1, {line(20, 200, 1500, {1})}, {0, 200})),
                        "SPEED_ENVELOPE"));
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20, 200, 1400, {1})}, {0, 200})),
                       "SPEED_ENVELOPE"));
}

TEST(ValidatePlan, DrBoundaries) {
  EXPECT_TRUE(validate_plan(plan_with(1, {line(3, 200, 3000, {1})}, {0, 200})).empty());
  EXPECT_TRUE(
      has_code(validate_plan(plan_with(1, {line(2.9, 200, 3000, {1})}, {0, 200})), "LOW_DR"));
  EXPECT_TRUE(
      has_code(validate_plan(plan_with(1, {line(21.4, 200, 3000, {1})}, {0, 200})), "HIGH_DR"));
  EXPECT_FALSE(
      has_code(validate_plan(plan_with(1, {line(21.3, 200, 3000, {1})}, {0, 200})), "HIGH_DR"));
}

TEST(ValidatePlan, ZeroFractionChannelNotFlagged) {
  const auto d = validate_plan(plan_with(2, {line(12, 180, 3000, {1, 0})}, {0, 180}));
  EXPECT_FALSE(has_code(d, "LOW_DR"));
}

TEST(ValidatePlan, StructuralErrors) {
  EXPECT_TRUE(has_code(validate_plan(plan_with(0, {}, {0, 1})), "NO_CHANNELS"));
  EXPECT_TRUE(has_code(validate_plan(plan_with(7, {}, {0, 1})), "TOO_MANY_CHANNELS"));
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20, 200, 3000, {1})}, {1, 1})), "BAD_WINDOW"));
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20, 100, 3000, {1})}, {0, 150})),
                       "WINDOW_OUTSIDE_TRAVEL"));
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20, 0, 3000, {1})}, {0, 1})), "BAD_LINE"));
  auto p = plan_with(2, {}, {0, 1});
  p.calibration.pop_back();
  EXPECT_TRUE(has_code(validate_plan(p), "CALIBRATION_COUNT"));
  p = plan_with(2, {}, {0, 1});
  p.calibration[1].microsteps_per_microliter = 3;
  const auto d = validate_plan(p);
  ASSERT_TRUE(has_code(d, "CALIBRATION_MISMATCH"));
  EXPECT_EQ(d.front().severity, Severity::warning);
}

TEST(ValidatePlan, RoundedValueWarning) {
  EXPECT_TRUE(has_code(validate_plan(plan_with(1, {line(20.00001, 200, 3000, {1})}, {0, 200})),
                       "ROUNDED_VALUE"));
}

TEST(RoundTrip, RandomPlansConserveVolumePerPass) {
  std::mt19937 rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const auto plan = testing::random_plan(rng);
    const auto program = compile_plan(plan);
    const auto machine = machine_for(plan);
    const auto trace = run_program(parse_program(program), MachineState::initial(machine), machine);
    ASSERT_TRUE(trace.ok()) << describe(*trace.error);
    const auto passes = pass_volumes(program, trace, plan.lines.size());
    ASSERT_EQ(passes.size(), plan.lines.size());
    for (std::size_t p = 0; p < plan.lines.size(); ++p) {
      const auto& l = plan.lines[p];
      for (std::size_t ch = 0; ch < plan.channel_count(); ++ch) {
        EXPECT_NEAR(passes[p].membrane[ch], l.mix.fraction(ch) * l.total_volume, 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace lfd
