#include "lfd/diagnostics.hpp"

namespace lfd {

const char* to_string(Severity severity) {
  switch (severity) {
    case Severity::info:
      return "info";
    case Severity::warning:
      return "warning";
    case Severity::error:
      return "error";
  }
  return "info";
}

std::string describe(const Diagnostic& d, const char* location_label) {
  std::string out = std::string(to_string(d.severity)) + "[" + d.code + "]";
  if (d.location) out += std::string(" ") + location_label + " " + std::to_string(*d.location);
  out += ": " + d.message;
  return out;
}

}  // namespace lfd
