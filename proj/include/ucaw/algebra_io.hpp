#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "ucaw/algebra.hpp"

namespace ucaw {

// Algebra files are UTF-8 JSON:
//
//   {
//     "name": "Z2",
//     "size": 2,
//     "operations": [
//       {"symbol": "mul", "arity": 2, "table": [[0, 1], [1, 0]]},
//       {"symbol": "inv", "arity": 1, "table": [0, 1]},
//       {"symbol": "e", "arity": 0, "table": 0}
//     ]
//   }
//
// "name" is optional. Tables nest to depth = arity with argument 1 outermost;
// arity 0 uses a bare integer.

/// Throws ParseError naming the symbol and the table position at fault.
FiniteAlgebra parse_algebra(std::string_view text);

/// Canonical form: keys in the order shown above, one operation per line,
/// LF line endings, trailing newline, no trailing spaces.
std::string serialize_algebra(const FiniteAlgebra& alg);

FiniteAlgebra load_algebra(const std::filesystem::path& path);

/// Whole file as a string; throws Error when unreadable.
std::string read_text_file(const std::filesystem::path& path);

}  // namespace ucaw
