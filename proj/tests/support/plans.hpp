#pragma once

// Randomized dispensing plans for round-trip properties.

#include <algorithm>
#include <random>
#include <vector>

#include "lfd/calibration.hpp"
#include "lfd/core_model.hpp"

namespace lfd::testing {

/// A valid plan whose numbers are exactly representable with four decimals,
/// so the emitted G-code carries no rounding: 1 to 6 channels, 1 to 4 passes,
/// integer mix ratios, volumes in nL steps. Every travel (>= 70 mm) outlasts the
/// latest start (<= 60 mm), so the shared membrane window is never empty. Flow
/// ceilings are effectively off.
inline DispensePlan random_plan(std::mt19937& rng) {
  std::uniform_int_distribution<int> channels_d(1, 6), passes_d(1, 4), ratio(0, 100),
      volume_nl(1, 60000), travel_d(70, 250), ds_d(15, 55), ystart_d(0, 60), prime_d(0, 50);
  const SyringePumpSpec pump{200, 16, 14.5, 8, 1e9, ""};
  const auto channels = static_cast<std::size_t>(channels_d(rng));
  DispensePlan plan;
  plan.pump_specs.assign(channels, pump);
  plan.calibration.assign(channels, microsteps_per_microliter(pump));
  double lo = -1e300, hi = 1e300;
  const int passes = passes_d(rng);
  for (int i = 0; i < passes; ++i) {
    std::vector<double> mix(channels);
    for (auto& m : mix) m = ratio(rng);
    if (std::all_of(mix.begin(), mix.end(), [](double m) { return m == 0; })) mix[0] = 1;
    LineSpec l;
    l.total_volume = volume_nl(rng) / 1000.0;
    l.travel_distance = travel_d(rng);
    l.dispensing_speed = 100.0 * ds_d(rng);
    l.mix = MixVector(std::move(mix));
    l.y_start = ystart_d(rng);
    l.prime_length = prime_d(rng);
    lo = std::max(lo, l.y_start);
    hi = std::min(hi, l.y_end());
    plan.lines.push_back(l);
  }
  plan.membrane_window = {lo, hi};
  return plan;
}

}  // namespace lfd::testing
