#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ndproof {

/// Raised by the formula and proof-text parsers, and by document validation.
///
/// `code` is one of the stable parse codes (E_SYNTAX, E_OPEN_FORMULA,
/// E_UNKNOWN_RULE, E_NUMBERING, E_STRUCTURE, E_UNCLOSED_SUBPROOF,
/// E_SIGNATURE). `offset` is a byte offset into the formula text; `line` and
/// `column` are 1-based positions in a proof file and are 0 when the error did
/// not come from proof text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string code, std::string message, std::size_t offset = 0,
             std::vector<std::string> expected = {})
      : std::runtime_error(message),
        code_(std::move(code)),
        offset_(offset),
        expected_(std::move(expected)) {}

  const std::string& code() const noexcept { return code_; }
  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

  ParseError& at_line(std::size_t line, std::size_t column) {
    line_ = line;
    column_ = column;
    return *this;
  }

 private:
  std::string code_;
  std::size_t offset_ = 0;
  std::vector<std::string> expected_;
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// Substituting a term would place one of its variables under a quantifier
/// that binds it.
class CaptureError : public std::runtime_error {
 public:
  CaptureError(std::string variable, std::string quantifier, std::size_t position)
      : std::runtime_error("substitution for '" + variable + "' is captured by " + quantifier +
                           " at node " + std::to_string(position)),
        variable_(std::move(variable)),
        quantifier_(std::move(quantifier)),
        position_(position) {}

  const std::string& variable() const noexcept { return variable_; }
  /// The capturing binder, rendered like "∀y".
  const std::string& quantifier() const noexcept { return quantifier_; }
  /// Pre-order index of the capturing quantifier node in the formula.
  std::size_t position() const noexcept { return position_; }

 private:
  std::string variable_;
  std::string quantifier_;
  std::size_t position_;
};

/// Symbol used inconsistently, or not interpreted by a structure.
class SignatureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structure enumeration would exceed the configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ndproof
