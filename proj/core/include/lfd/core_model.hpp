#pragma once

// Shared domain types for the dispensing toolchain.
//
// Canonical units throughout the library:
//   length            mm
//   volume            uL
//   linear speed      mm/min
//   volumetric flow   uL/min
//   dispensing rate   nL/mm  (1000 x uL/mm)

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace lfd {

/// Thrown when an argument or value violates a documented domain constraint.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown for malformed input documents (JSON, CSV, images, G-code text).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SyringePumpSpec {
  int steps_per_rev = 200;            // full steps per motor revolution
  int microstepping = 16;             // microsteps per full step
  double syringe_inner_diameter = 0;  // mm
  double leadscrew_lead = 0;          // mm per revolution
  double max_flow_rate = 0;           // uL/min, the E-axis ceiling expressed volumetrically
  std::string label;

  /// Throws DomainError unless all numeric fields are positive and
  /// microstepping is one of 1, 2, 4, 8, 16, 32.
  void validate() const;

  bool operator==(const SyringePumpSpec&) const = default;
};

enum class CalibrationSource { geometric, gravimetric };

struct CalibrationResult {
  double microsteps_per_microliter = 0;
  CalibrationSource source = CalibrationSource::geometric;

  bool operator==(const CalibrationResult&) const = default;
};

const char* to_string(CalibrationSource source);
CalibrationSource calibration_source_from_string(const std::string& text);

/// Per-channel mixing ratios exactly as written in an M165 command
/// (e.g. A50 B50). Normalization happens on demand so the raw values can be
/// written back out unchanged.
class MixVector {
 public:
  MixVector() : raw_{1.0} {}
  explicit MixVector(std::vector<double> raw);

  /// A vector of `channels` entries with everything on `channel`.
  static MixVector single(std::size_t channel, std::size_t channels);

  const std::vector<double>& raw() const { return raw_; }
  std::size_t size() const { return raw_.size(); }

  /// Fractions summing to one.
  std::vector<double> normalized() const;
  double fraction(std::size_t channel) const;

  bool operator==(const MixVector&) const = default;

 private:
  std::vector<double> raw_;
};

struct LineSpec {
  double total_volume = 0;       // uL over travel_distance, all channels
  double travel_distance = 0;    // mm
  double dispensing_speed = 0;   // mm/min (DS)
  MixVector mix;
  double y_start = 0;            // mm, where the metered travel begins
  double prime_length = 0;       // mm of travel before y_start at the same DR

  void validate() const;

  double y_end() const { return y_start + travel_distance; }

  bool operator==(const LineSpec&) const = default;
};

struct Interval {
  double lo = 0;
  double hi = 0;

  double length() const { return hi - lo; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }

  bool operator==(const Interval&) const = default;
};

struct DispensePlan {
  std::vector<LineSpec> lines;  // one entry per simultaneous pass
  Interval membrane_window;
  std::vector<SyringePumpSpec> pump_specs;
  std::vector<CalibrationResult> calibration;
  // Free-form numeric annotations (tip separation, tip outer diameter, ...).
  std::map<std::string, double> metadata;

  std::size_t channel_count() const { return pump_specs.size(); }

  bool operator==(const DispensePlan&) const = default;
};

/// Dispensing rate in nL/mm: 1000 x total_volume / travel_distance.
double dispense_rate(const LineSpec& line);

/// Volumetric flow of one channel in uL/min while the pass travels at DS.
/// Throws std::out_of_range for a channel outside line.mix.
double pump_flow_rate(const LineSpec& line, std::size_t channel);

/// Per-channel dispensing rate (nL/mm) for one channel of a pass.
double channel_dispense_rate(const LineSpec& line, std::size_t channel);

}  // namespace lfd
