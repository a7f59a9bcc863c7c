#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "latkit/matrix.hpp"

namespace latkit {

// Text format: optional "#" comment lines, a line "d", then d rows of d
// rationals separated by single spaces. Throws kParse.
struct GramText {
  std::vector<std::string> comments;  // without the leading '#'
  RatMatrix matrix;
};

GramText read_gram_text(std::istream& in);
GramText read_gram_file(const std::string& path);
RatMatrix parse_gram(const std::string& text);

void write_gram_text(std::ostream& out, const GramText& g);
std::string format_gram(const RatMatrix& m);

// Same layout for non-square integer matrices: "r c" header then rows.
// A single number header means square.
IntMatrix read_int_matrix_file(const std::string& path);
IntMatrix parse_int_matrix(const std::string& text);

}  // namespace latkit
