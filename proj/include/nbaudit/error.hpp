#ifndef NBAUDIT_ERROR_HPP
#define NBAUDIT_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nbaudit {

/// Broad failure category; the CLI maps these onto exit codes.
enum class ErrorKind {
  usage,    // bad command line
  config,   // invalid run configuration
  schema,   // column/attribute layout does not match
  parse,    // unparseable file content
  io,       // file could not be read or written
  data,     // well-formed input that violates a precondition
  overflow  // combinatorial cap exceeded
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::usage: return "usage";
    case ErrorKind::config: return "config";
    case ErrorKind::schema: return "schema";
    case ErrorKind::parse: return "parse";
    case ErrorKind::io: return "io";
    case ErrorKind::data: return "data";
    case ErrorKind::overflow: return "overflow";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  /// Parse error tied to a 1-based data row (header excluded) or input line.
  Error(ErrorKind kind, const std::string& what, std::size_t row)
      : std::runtime_error(what + " (row " + std::to_string(row) + ")"),
        kind_(kind), row_(row) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> row() const noexcept { return row_; }

private:
  ErrorKind kind_;
  std::optional<std::size_t> row_;
};

}  // namespace nbaudit

#endif  // NBAUDIT_ERROR_HPP
