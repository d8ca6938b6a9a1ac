#include <algorithm>
#include <cmath>

#include "lfd/gcode_vm.hpp"

namespace lfd {

std::vector<double> DepositionProfile::window_totals() const {
  std::vector<double> totals;
  totals.reserve(bins.size());
  for (const auto& channel : bins) {
    double sum = 0;
    for (double v : channel) sum += v;
    totals.push_back(sum);
  }
  return totals;
}

DepositionProfile deposition_profile(const DispenseTrace& trace, Interval window, double bin) {
  if (!(bin > 0) || !std::isfinite(bin)) throw DomainError("bin width must be positive");
  if (!(window.hi > window.lo)) throw DomainError("deposition window is empty");

  const double length = window.length();
  const auto n_bins = static_cast<std::size_t>(std::max(1.0, std::ceil(length / bin - 1e-9)));

  DepositionProfile profile;
  profile.bin_width = bin;
  profile.window = window;
  profile.bins.assign(trace.channels, std::vector<double>(n_bins, 0.0));
  profile.before_window.assign(trace.channels, 0.0);
  profile.after_window.assign(trace.channels, 0.0);

  auto bin_lo = [&](std::size_t k) { return window.lo + static_cast<double>(k) * bin; };
  auto bin_hi = [&](std::size_t k) { return k + 1 == n_bins ? window.hi : bin_lo(k + 1); };

  for (const auto& seg : trace.segments) {
    const double a = std::min(seg.y_from, seg.y_to);
    const double b = std::max(seg.y_from, seg.y_to);
    const std::size_t channels = std::min(seg.volume.size(), trace.channels);

    if (b == a) {
      std::size_t k = n_bins;
      if (a >= window.lo && a <= window.hi) {
        k = std::min(n_bins - 1, static_cast<std::size_t>((a - window.lo) / bin));
      }
      for (std::size_t ch = 0; ch < channels; ++ch) {
        if (a < window.lo) {
          profile.before_window[ch] += seg.volume[ch];
        } else if (a > window.hi) {
          profile.after_window[ch] += seg.volume[ch];
        } else {
          profile.bins[ch][k] += seg.volume[ch];
        }
      }
      continue;
    }

    const double span = b - a;
    const double before = std::max(0.0, std::min(b, window.lo) - a);
    const double after = std::max(0.0, b - std::max(a, window.hi));
    for (std::size_t ch = 0; ch < channels; ++ch) {
      const double density = seg.volume[ch] / span;
      profile.before_window[ch] += density * before;
      profile.after_window[ch] += density * after;
    }

    if (b <= window.lo || a >= window.hi) continue;
    const double first = std::max(a, window.lo);
    const double last = std::min(b, window.hi);
    auto k = static_cast<std::size_t>((first - window.lo) / bin);
    k = std::min(k, n_bins - 1);
    while (k > 0 && bin_lo(k) > first) --k;
    for (; k < n_bins && bin_lo(k) < last; ++k) {
      const double overlap = std::min(last, bin_hi(k)) - std::max(first, bin_lo(k));
      if (overlap <= 0) continue;
      for (std::size_t ch = 0; ch < channels; ++ch) {
        profile.bins[ch][k] += seg.volume[ch] * (overlap / span);
      }
    }
  }
  return profile;
}

}  // namespace lfd
