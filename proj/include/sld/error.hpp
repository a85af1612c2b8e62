#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sld {

/// Error categories raised while reading CIM/E text.
enum class ParseErrorKind {
  UnterminatedBlock,
  HeaderMismatch,
  UnknownEntity,
  DuplicateId,
  DuplicateBlock,
  BadRecord,
};

/// Error categories raised while assembling the component graph.
enum class GraphErrorKind {
  DanglingNode,
  DuplicateComponentId,
  UnknownComponent,
};

/// Error categories raised while computing a layout.
enum class LayoutErrorKind {
  TooManyLevels,
  NoBuses,
};

std::string_view to_string(ParseErrorKind k);
std::string_view to_string(GraphErrorKind k);
std::string_view to_string(LayoutErrorKind k);

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& msg);
  ParseErrorKind kind() const { return kind_; }
  /// 1-based line of the offending input, 0 when not line-specific.
  int line() const { return line_; }

 private:
  ParseErrorKind kind_;
  int line_;
};

class GraphError : public std::runtime_error {
 public:
  GraphError(GraphErrorKind kind, const std::string& msg);
  GraphErrorKind kind() const { return kind_; }

 private:
  GraphErrorKind kind_;
};

class LayoutError : public std::runtime_error {
 public:
  LayoutError(LayoutErrorKind kind, const std::string& msg);
  LayoutErrorKind kind() const { return kind_; }

 private:
  LayoutErrorKind kind_;
};

}  // namespace sld
