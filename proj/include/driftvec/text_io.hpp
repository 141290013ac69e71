#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace driftvec {

// Streams a text file line by line. Gzip-compressed input (.txt.gz etc.) is
// decompressed transparently; plain files pass through untouched.
// Throws IoError if the file cannot be opened or read.
void for_each_file_line(const std::string& path,
                        const std::function<void(std::string_view)>& fn);

// Splits on ASCII whitespace; never yields empty tokens.
std::vector<std::string_view> split_tokens(std::string_view line);

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

// Strict full-string parses; throw DataError with context on failure.
double parse_double(std::string_view text, const std::string& context);
long long parse_int(std::string_view text, const std::string& context);

// FNV-1a 64-bit digest of a file's bytes (manifest input fingerprints).
std::uint64_t fnv1a_file_digest(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace driftvec
