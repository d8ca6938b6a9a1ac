#include <benchmark/benchmark.h>

#include "lfd/calibration.hpp"
#include "lfd/gcode_emit.hpp"
#include "lfd/gcode_vm.hpp"

namespace {

lfd::DispensePlan plan_with_passes(std::size_t passes) {
  const lfd::SyringePumpSpec pump{200, 16, 14.5, 8, 1e9, ""};
  lfd::DispensePlan p;
  p.pump_specs.assign(2, pump);
  p.calibration.assign(2, lfd::microsteps_per_microliter(pump));
  for (std::size_t i = 0; i < passes; ++i) {
    lfd::LineSpec l;
    l.total_volume = 20;
    l.travel_distance = 150;
    l.dispensing_speed = 3000;
    l.mix = lfd::MixVector({50, 50});
    l.y_start = 40;
    l.prime_length = 40;
    p.lines.push_back(l);
  }
  p.membrane_window = {40, 190};
  return p;
}

void BM_CompilePlan(benchmark::State& state) {
  const auto plan = plan_with_passes(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lfd::compile_plan(plan));
}
BENCHMARK(BM_CompilePlan)->Arg(1)->Arg(64);

void BM_RunProgram(benchmark::State& state) {
  const auto plan = plan_with_passes(static_cast<std::size_t>(state.range(0)));
  const auto commands = lfd::parse_program(lfd::compile_plan(plan));
  const auto machine = lfd::machine_for(plan);
  const auto initial = lfd::MachineState::initial(machine);
  for (auto _ : state) benchmark::DoNotOptimize(lfd::run_program(commands, initial, machine));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(commands.size()));
}
BENCHMARK(BM_RunProgram)->Arg(1)->Arg(64)->Arg(1024);

void BM_ParseProgram(benchmark::State& state) {
  const auto text = lfd::compile_plan(plan_with_passes(256)).text();
  for (auto _ : state) benchmark::DoNotOptimize(lfd::parse_program(text));
  state.SetBytesProcessed(state.iterations() * static_cast<int64_t>(text.size()));
}
BENCHMARK(BM_ParseProgram);

}  // namespace

BENCHMARK_MAIN();
