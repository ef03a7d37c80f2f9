#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "btt/block_linalg.hpp"

namespace btt {

// Text format for real block-vectors:
//
//   btt v1 n=<n> m=<m>
//   <m lines of m numbers>   block 0
//   ...                      block n-1
//
// Numbers are whitespace separated and written with 17 significant digits,
// so a write/read round trip is exact. Lines starting with '#' are comments
// and may appear anywhere; blank lines are ignored.

/// Throws ParseError with a line number on malformed input.
BlockVector read_block_vector(std::istream& in);
BlockVector read_block_vector_file(const std::filesystem::path& path);

/// `comments` are written as "# <text>" lines after the header. The real
/// parts are written; imaginary parts must be zero (DimensionError otherwise).
void write_block_vector(std::ostream& out, const BlockVector& v,
                        const std::vector<std::string>& comments = {});
void write_block_vector_file(const std::filesystem::path& path, const BlockVector& v,
                             const std::vector<std::string>& comments = {});

/// "a+bi", "a-bi", "a", "bi", "i", "-i"; 'j' is accepted for 'i'.
/// Throws ParseError.
Complex parse_complex(std::string_view text);
std::string format_complex(Complex z);

/// %.17g
std::string format_double(double x);

}  // namespace btt
