#include "lfd/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace lfd {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0; }

}  // namespace

void SyringePumpSpec::validate() const {
  if (steps_per_rev <= 0) throw DomainError("steps_per_rev must be positive");
  constexpr int kAllowed[] = {1, 2, 4, 8, 16, 32};
  if (std::find(std::begin(kAllowed), std::end(kAllowed), microstepping) == std::end(kAllowed)) {
    throw DomainError("microstepping must be one of 1, 2, 4, 8, 16, 32 (got " +
                      std::to_string(microstepping) + ")");
  }
  if (!positive_finite(syringe_inner_diameter)) {
    throw DomainError("syringe_inner_diameter must be positive");
  }
  if (!positive_finite(leadscrew_lead)) throw DomainError("leadscrew_lead must be positive");
  if (!positive_finite(max_flow_rate)) throw DomainError("max_flow_rate must be positive");
}

const char* to_string(CalibrationSource source) {
  switch (source) {
    case CalibrationSource::geometric:
      return "geometric";
    case CalibrationSource::gravimetric:
      return "gravimetric";
  }
  return "geometric";
}

CalibrationSource calibration_source_from_string(const std::string& text) {
  if (text == "geometric") return CalibrationSource::geometric;
  if (text == "gravimetric") return CalibrationSource::gravimetric;
  throw DomainError("unknown calibration source '" + text + "'");
}

MixVector::MixVector(std::vector<double> raw) : raw_(std::move(raw)) {
  if (raw_.empty()) throw DomainError("mix vector needs at least one channel");
  bool any_positive = false;
  for (double r : raw_) {
    if (!std::isfinite(r) || r < 0) throw DomainError("mix ratios must be finite and non-negative");
    any_positive = any_positive || r > 0;
  }
  if (!any_positive) throw DomainError("mix vector needs at least one positive ratio");
}

MixVector MixVector::single(std::size_t channel, std::size_t channels) {
  if (channel >= channels) throw std::out_of_range("mix channel out of range");
  std::vector<double> raw(channels, 0.0);
  raw[channel] = 100.0;
  return MixVector(std::move(raw));
}

std::vector<double> MixVector::normalized() const {
  const double total = std::accumulate(raw_.begin(), raw_.end(), 0.0);
  std::vector<double> out(raw_.size());
  std::transform(raw_.begin(), raw_.end(), out.begin(), [total](double r) { return r / total; });
  return out;
}

double MixVector::fraction(std::size_t channel) const {
  if (channel >= raw_.size()) throw std::out_of_range("mix channel out of range");
  const double total = std::accumulate(raw_.begin(), raw_.end(), 0.0);
  return raw_[channel] / total;
}

void LineSpec::validate() const {
  if (!std::isfinite(total_volume) || total_volume < 0) {
    throw DomainError("total_volume must be non-negative");
  }
  if (!positive_finite(travel_distance)) throw DomainError("travel_distance must be positive");
  if (!positive_finite(dispensing_speed)) throw DomainError("dispensing_speed must be positive");
  if (!std::isfinite(prime_length) || prime_length < 0) {
    throw DomainError("prime_length must be non-negative");
  }
  if (!std::isfinite(y_start)) throw DomainError("y_start must be finite");
}

double dispense_rate(const LineSpec& line) {
  if (!(line.travel_distance > 0)) throw DomainError("travel_distance must be positive");
  return 1000.0 * line.total_volume / line.travel_distance;
}

double pump_flow_rate(const LineSpec& line, std::size_t channel) {
  return line.mix.fraction(channel) * line.total_volume * line.dispensing_speed /
         line.travel_distance;
}

double channel_dispense_rate(const LineSpec& line, std::size_t channel) {
  return line.mix.fraction(channel) * dispense_rate(line);
}

}  // namespace lfd
