#include "kpdkit/errors.hpp"

namespace kpdkit {

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error(line == 0 ? "parse error at end of input: " + what
                      : "parse error at line " + std::to_string(line) + ": " + what),
      line_(line) {}

DegenerateFactor::DegenerateFactor(std::size_t axis)
    : Error("factor " + std::to_string(axis) + " has zero norm"), axis_(axis) {}

}  // namespace kpdkit
