#pragma once

#include <stdexcept>
#include <string>

namespace lpa {

// Malformed input text: bad JSON, bad schema, bad expression syntax.
class ParseError : public std::runtime_error {
public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally valid input that violates a semantic rule or an operation
// precondition: dangling endpoints, duplicate ids, unknown identifiers,
// field/graph mismatches, failed preconditions.
class SemanticError : public std::runtime_error {
public:
  explicit SemanticError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace lpa
