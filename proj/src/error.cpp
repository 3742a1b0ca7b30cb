#include "roughlab/error.hpp"

namespace roughlab {

DegenerateBlock::DegenerateBlock(std::size_t block)
    : NumericalError("degenerate block " + std::to_string(block) +
                     ": all fine increments are zero (consider the epsilon guard)"),
      block_(block) {}

ParseError::ParseError(const std::string& file, std::size_t line, const std::string& what)
    : IoError(file + ":" + std::to_string(line) + ": " + what), line_(line) {}

int exit_code(ErrorKind kind) noexcept { return static_cast<int>(kind); }

}  // namespace roughlab
