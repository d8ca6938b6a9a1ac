#pragma once

#include <cstddef>
#include <optional>
#include <string>

namespace lfd {

enum class Severity { info, warning, error };

const char* to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::info;
  std::string code;
  std::string message;
  // Plan pass index for compiler diagnostics, 1-based program line for the VM.
  std::optional<std::size_t> location;

  bool operator==(const Diagnostic&) const = default;
};

/// "warning[HIGH_DR] pass 2: ..." style rendering.
std::string describe(const Diagnostic& d, const char* location_label = "pass");

}  // namespace lfd
