#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nomprop {

enum class ErrorKind {
  InvalidName,
  DuplicateWireName,
  UnknownGenerator,
  SeqArityMismatch,
  SeqDomainMismatch,
  TensorOverlap,
  BoundaryMismatch,
  TypeMismatch,
  ModelMismatch,
  UnknownTheory,
  InvalidTheory,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Byte offsets into a parsed input, start <= end <= input length.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(what), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::vector<std::string> expected, std::string found);

  const std::vector<std::string>& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::vector<std::string> expected_;
  std::string found_;
};

}  // namespace nomprop
