#include "lfd/width_model.hpp"

#include <algorithm>
#include <cmath>

namespace lfd {

void WidthModel::validate() const {
  if (data.empty()) throw DomainError("width model needs at least one datum");
  for (std::size_t i = 0; i < data.size(); ++i) {
    const auto& d = data[i];
    if (!std::isfinite(d.dr) || d.dr < 0) throw DomainError("width datum dr must be >= 0");
    if (!std::isfinite(d.width) || d.width <= 0) throw DomainError("width datum width must be > 0");
    if (i > 0) {
      if (!(d.dr > data[i - 1].dr)) throw DomainError("width data must have strictly increasing dr");
      if (d.width < data[i - 1].width) throw DomainError("widths must not decrease with dr");
    }
  }
  if (!(w_max >= data.back().width)) throw DomainError("w_max must be >= the widest datum");
  if (!std::isfinite(tip_outer_diameter) || tip_outer_diameter < 0) {
    throw DomainError("tip_outer_diameter must be >= 0");
  }
}

WidthModel default_model() {
  return WidthModel{
      {{15.0, 0.487}, {30.0, 0.562}, {60.0, 0.74}, {66.7, 0.815}, {75.0, 0.95}, {106.67, 0.96}},
      0.96,
      0.9,
  };
}

WidthPrediction predict_width(const WidthModel& model, double dr) {
  if (!std::isfinite(dr) || dr < 0) throw DomainError("dispensing rate must be >= 0");
  const auto& data = model.data;
  if (data.empty()) throw DomainError("width model has no data");

  const auto& first = data.front();
  if (dr < first.dr) {
    const double w = first.dr > 0 ? first.width * (dr / first.dr) : first.width;
    return {std::clamp(w, 0.0, first.width), kLowDr};
  }
  if (dr > data.back().dr) return {model.w_max, kExcessDr};

  auto hi = std::lower_bound(data.begin(), data.end(), dr,
                             [](const WidthDatum& d, double v) { return d.dr < v; });
  if (hi->dr == dr) return {hi->width, kWidthOk};
  const auto lo = std::prev(hi);
  const double t = (dr - lo->dr) / (hi->dr - lo->dr);
  const double w = lo->width + (hi->width - lo->width) * t;
  return {std::clamp(w, lo->width, hi->width), kWidthOk};
}

}  // namespace lfd
