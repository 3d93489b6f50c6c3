#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ratiolim/exact_complex.hpp"

namespace ratiolim {

// Grammar (whitespace ignored, U+2212 accepted as minus):
//   literal := real | real sign imag | [sign] imag
//   imag    := [number] 'i'
//   number  := decimal ['/' decimal]
//   decimal := digits ['.' digits] [('e'|'E') [sign] digits]
// Decimals are converted exactly, so "0.1" is 1/10.
// Errors are Error(parse_error) with a 0-based character position.
ExactComplex parse_complex_literal(std::string_view text);

/// Comma-separated list of literals, e.g. "1,-2,3+2i".
std::vector<ExactComplex> parse_complex_list(std::string_view text);

}  // namespace ratiolim
