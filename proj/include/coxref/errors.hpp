#pragma once

#include <stdexcept>
#include <string>

namespace coxref {

/// A mathematically invalid request, e.g. asking for minimal non-affine
/// subgroups of an affine group.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configurable search or enumeration cap was hit.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed Coxeter matrix input. Row/column are 1-based, 0 when not applicable.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, int row = 0, int col = 0)
      : std::invalid_argument(row > 0 ? what + " at (" + std::to_string(row) + "," + std::to_string(col) + ")" : what),
        row_(row),
        col_(col) {}
  int row() const { return row_; }
  int col() const { return col_; }

 private:
  int row_;
  int col_;
};

}  // namespace coxref
