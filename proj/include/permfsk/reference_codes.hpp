#pragma once

#include <string>
#include <vector>

#include "permfsk/permcode.hpp"

namespace permfsk {

// Bundled example code books, used by the table/encode/decode commands and
// as fixed test vectors. Row order is part of the book's identity (message
// numbering), so these are stored verbatim rather than re-derived.

// 4 tones, 4 words, minimum distance 4.
CodeBook example_code_m4_d4();

// 4 tones, 12 words, minimum distance 3.
CodeBook example_code_m4_d3();

// 3 tones, 6 words, minimum distance 2 (all permutations of 1..3).
CodeBook example_code_m3_d2();

// 3 tones, 3 words, minimum distance 3 (the cyclic shifts).
CodeBook example_code_m3_d3();

// Lookup by short name; throws std::invalid_argument for unknown names.
CodeBook reference_code_book(const std::string& name);
std::vector<std::string> reference_code_names();

}  // namespace permfsk
