#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "maxdet/sign_matrix.hpp"

namespace maxdet {

// Text format: first line is the order n in decimal, followed by exactly n
// lines of n characters from {+, -}.  Nothing else is allowed, so
// serialization and parsing round-trip bit-exactly.
SignMatrix parse_matrix(std::string_view text);
std::string serialize_matrix(const SignMatrix& m);

SignMatrix read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const SignMatrix& m);

}  // namespace maxdet
