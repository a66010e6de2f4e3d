#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pqpierce {

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when an operation is handed a variant mix it does not support
/// (e.g. polygons together with boxes).
class UnsupportedBody : public std::invalid_argument {
 public:
  explicit UnsupportedBody(const std::string& what) : std::invalid_argument(what) {}
};

class EmptyBody : public std::invalid_argument {
 public:
  EmptyBody(const std::string& what, std::size_t index = 0)
      : std::invalid_argument(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// An enumeration or search exceeded its configured resource cap.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A family fails a property an operation requires as hypothesis. Carries the
/// lexicographically first violating subset.
class PropertyViolation : public std::runtime_error {
 public:
  PropertyViolation(const std::string& what, std::vector<std::size_t> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::vector<std::size_t>& witness() const { return witness_; }

 private:
  std::vector<std::size_t> witness_;
};

}  // namespace pqpierce
