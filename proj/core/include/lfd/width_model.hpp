#pragma once

#include <cstdint>
#include <vector>

#include "lfd/core_model.hpp"

namespace lfd {

struct WidthDatum {
  double dr = 0;     // nL/mm
  double width = 0;  // mm

  bool operator==(const WidthDatum&) const = default;
};

/// Empirical dispensing-rate to linewidth table.
struct WidthModel {
  std::vector<WidthDatum> data;  // strictly increasing dr, non-decreasing width
  double w_max = 0;              // saturation width, mm
  double tip_outer_diameter = 0; // mm

  void validate() const;

  bool operator==(const WidthModel&) const = default;
};

/// Widths measured on nitrocellulose with a 22G tip (0.9 mm OD), single and
/// simultaneous dispensing. Saturates at 0.96 mm.
WidthModel default_model();

enum WidthFlag : std::uint8_t {
  kWidthOk = 0,
  kLowDr = 1u << 0,     // below the table, extrapolated through the origin
  kExcessDr = 1u << 1,  // above the table, clamped to w_max
};

struct WidthPrediction {
  double width = 0;
  std::uint8_t flags = kWidthOk;

  bool low_dr() const { return (flags & kLowDr) != 0; }
  bool excess_dr() const { return (flags & kExcessDr) != 0; }
};

/// Piecewise-linear in dr between table points. Throws DomainError for
/// negative or non-finite dr.
WidthPrediction predict_width(const WidthModel& model, double dr);

}  // namespace lfd
