#pragma once

#include <stdexcept>
#include <string>

namespace sawlab {

// Thrown when a group-spec string does not conform to the grammar.
class SpecParseError : public std::runtime_error {
 public:
  SpecParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A finitely presented input for which no exact word-problem strategy exists.
class UnsupportedPresentationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adding the requested relators leaves the supported group catalog.
class UnsupportedQuotientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A word that is trivial in the base group failed to be trivial in the
// alleged quotient.
class QuotientRelationViolatedError : public std::runtime_error {
 public:
  QuotientRelationViolatedError(const std::string& what, std::string witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}

  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// Anything else that makes a request unanswerable (missing distinguished
// generator, mismatched cutoffs, ...).
class InvalidRequestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sawlab
