#pragma once

#include "nilform/cdga.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace nilform::cli {

enum ExitCode : int { Success = 0, Usage = 1, InvalidInput = 2, BoundExceeded = 3 };

/// Parses a JSON input document:
///   {"generators": [{"name": "x", "degree": 1}, ...],
///    "differential": [{"generator": "z", "value": [{"coeff": "1/2", "monomial": ["x", "y"]}]}]}
/// Throws ParseError or a validation error.
Cdga parse_input_document(const std::string& text);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilform::cli
