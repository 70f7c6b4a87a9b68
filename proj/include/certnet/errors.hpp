#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace certnet {

/// Malformed input text (formula, degree literal, network or kb file).
/// `offset` is a character offset for single-expression input and a
/// 1-based line number for file input (see `what()` for which).
struct parse_error : std::runtime_error {
  parse_error(std::size_t offset, const std::string& message)
      : std::runtime_error(message), offset(offset) {}
  std::size_t offset;
};

/// A formula mentions an attribute the vocabulary does not declare.
struct unknown_atom_error : std::runtime_error {
  explicit unknown_atom_error(std::string atom_name)
      : std::runtime_error("unknown atom: " + atom_name),
        atom(std::move(atom_name)) {}
  std::string atom;
};

/// World enumeration refused: the vocabulary exceeds the configured cap.
struct guard_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Semantic misuse: out-of-range degree, ordering violation, vocabulary
/// mismatch, table coverage gap.
struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace certnet
