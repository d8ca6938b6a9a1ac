#include "lfd/gcode.hpp"

#include <algorithm>
#include <cctype>

#include "lfd/decimal.hpp"

namespace lfd {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool is_number_char(char c) {
  return (c >= '0' && c <= '9') || c == '.' || c == '+' || c == '-';
}

std::optional<CommandKind> supported_kind(char letter, double number) {
  if (letter == 'G') {
    if (number == 0) return CommandKind::G0;
    if (number == 1) return CommandKind::G1;
    if (number == 92) return CommandKind::G92;
  } else if (letter == 'M') {
    if (number == 92) return CommandKind::M92;
    if (number == 165) return CommandKind::M165;
    if (number == 302) return CommandKind::M302;
  }
  return std::nullopt;
}

}  // namespace

const char* to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::G0:
      return "G0";
    case CommandKind::G1:
      return "G1";
    case CommandKind::G92:
      return "G92";
    case CommandKind::M92:
      return "M92";
    case CommandKind::M165:
      return "M165";
    case CommandKind::M302:
      return "M302";
    case CommandKind::comment:
      return "comment";
    case CommandKind::unsupported:
      return "unsupported";
  }
  return "unsupported";
}

std::optional<double> Command::word(char letter) const {
  for (const auto& w : words) {
    if (w.letter == letter) return w.value;
  }
  return std::nullopt;
}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + message),
      line_(line),
      column_(column) {}

Command parse_line(std::string_view text, std::size_t line_number) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && is_space(text[begin])) ++begin;
  while (end > begin && is_space(text[end - 1])) --end;

  Command cmd;
  cmd.raw = std::string(text.substr(begin, end - begin));

  std::size_t code_end = end;
  if (auto semi = text.substr(0, end).find(';', begin); semi != std::string_view::npos) {
    cmd.comment = std::string(text.substr(semi + 1, end - semi - 1));
    code_end = semi;
  }
  while (code_end > begin && is_space(text[code_end - 1])) --code_end;
  if (code_end == begin) {
    cmd.kind = CommandKind::comment;
    return cmd;
  }

  auto fail = [&](const std::string& msg, std::size_t pos) -> ParseError {
    return ParseError(msg, line_number, pos + 1);
  };

  std::size_t pos = begin;
  const char code_letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
  if (!std::isalpha(static_cast<unsigned char>(code_letter))) {
    throw fail("expected a command letter", pos);
  }
  ++pos;
  const std::size_t number_start = pos;
  while (pos < code_end && is_number_char(text[pos])) ++pos;
  const auto code_number = parse_decimal(text.substr(number_start, pos - number_start));
  if (!code_number) throw fail("malformed command number", number_start);

  cmd.code = std::string(1, code_letter) + format_decimal(*code_number);
  const auto kind = supported_kind(code_letter, *code_number);
  if (!kind) {
    cmd.kind = CommandKind::unsupported;
    return cmd;
  }
  cmd.kind = *kind;

  while (pos < code_end) {
    if (is_space(text[pos])) {
      ++pos;
      continue;
    }
    const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[pos])));
    if (!std::isalpha(static_cast<unsigned char>(letter))) {
      throw fail("expected a word letter", pos);
    }
    const std::size_t value_start = ++pos;
    while (pos < code_end && is_number_char(text[pos])) ++pos;
    const auto value = parse_decimal(text.substr(value_start, pos - value_start));
    if (!value) throw fail(std::string("malformed number for word ") + letter, value_start);
    if (cmd.has(letter)) throw fail(std::string("duplicate word ") + letter, value_start - 1);
    cmd.words.push_back({letter, *value});
  }
  return cmd;
}

std::string to_text(const Command& cmd) {
  if (cmd.kind == CommandKind::unsupported) return cmd.raw;
  std::string out = cmd.code;
  for (const auto& w : cmd.words) {
    out += ' ';
    out += w.letter;
    out += format_decimal(w.value);
  }
  if (cmd.kind == CommandKind::comment) return cmd.raw.empty() ? std::string() : ";" + cmd.comment;
  if (!cmd.comment.empty()) out += " ;" + cmd.comment;
  return out;
}

std::string GCodeProgram::text() const {
  std::string out;
  for (const auto& line : lines) {
    out += line;
    out += '\n';
  }
  return out;
}

GCodeProgram program_from_text(std::string_view text) {
  GCodeProgram program;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    program.lines.emplace_back(line);
    start = nl + 1;
  }
  return program;
}

std::vector<Command> parse_program(const GCodeProgram& program) {
  std::vector<Command> out;
  out.reserve(program.lines.size());
  for (std::size_t i = 0; i < program.lines.size(); ++i) {
    out.push_back(parse_line(program.lines[i], i + 1));
  }
  return out;
}

std::vector<Command> parse_program(std::string_view text) {
  return parse_program(program_from_text(text));
}

}  // namespace lfd
