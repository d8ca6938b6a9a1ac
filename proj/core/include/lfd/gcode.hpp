#pragma once

// G-code subset used by the dispensing rig: a Marlin printer whose extruder
// output drives one or more syringe pumps through the mixing extruder.

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lfd {

enum class CommandKind { G0, G1, G92, M92, M165, M302, comment, unsupported };

const char* to_string(CommandKind kind);

struct Word {
  char letter = 0;  // upper case
  double value = 0;

  bool operator==(const Word&) const = default;
};

struct Command {
  CommandKind kind = CommandKind::comment;
  std::vector<Word> words;  // in source order, letters unique
  std::string code;         // "G1", "M140", ... empty for comments
  std::string comment;      // text after ';' without the ';'
  std::string raw;          // trimmed source text

  std::optional<double> word(char letter) const;
  bool has(char letter) const { return word(letter).has_value(); }

  bool operator==(const Command&) const = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Parses one line. ';' starts a comment, words are case-insensitive and may
/// be written without separating spaces ("G1Y200E20"). G/M codes outside the
/// supported set parse as `unsupported` and keep their raw text without word
/// parsing. `line_number` is only used in error reports.
Command parse_line(std::string_view text, std::size_t line_number = 0);

/// Canonical text of a command: code followed by words in source order, then
/// "; comment" if any. Unsupported commands reproduce their raw text.
std::string to_text(const Command& cmd);

struct GCodeProgram {
  std::vector<std::string> lines;
  // line index -> plan element that produced it ("header", "pass 0 membrane", ...)
  std::map<std::size_t, std::string> provenance;

  /// Lines joined with '\n', trailing newline included.
  std::string text() const;
};

/// Splits text on newlines ("\r\n" tolerated) and parses every line.
/// Throws ParseError carrying the 1-based line of the first malformed line.
std::vector<Command> parse_program(std::string_view text);
std::vector<Command> parse_program(const GCodeProgram& program);

/// Splits text into lines without parsing.
GCodeProgram program_from_text(std::string_view text);

}  // namespace lfd
