#include "driftvec/text_io.hpp"

#include <zlib.h>

#include <array>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "driftvec/error.hpp"

namespace driftvec {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

}  // namespace

void for_each_file_line(const std::string& path,
                        const std::function<void(std::string_view)>& fn) {
    // gzopen reads uncompressed files as-is, so one code path covers both.
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) {
        throw IoError("cannot open corpus file: " + path +
                      (errno != 0 ? std::string(" (") + std::strerror(errno) + ")" : ""));
    }
    std::array<char, 1 << 16> chunk;
    std::string pending;
    for (;;) {
        const int n = gzread(file, chunk.data(), static_cast<unsigned>(chunk.size()));
        if (n < 0) {
            int zerr = 0;
            const char* msg = gzerror(file, &zerr);
            std::string detail = (msg != nullptr) ? msg : "read error";
            gzclose(file);
            throw IoError("error reading " + path + ": " + detail);
        }
        if (n == 0) break;
        std::size_t start = 0;
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            if (chunk[i] == '\n') {
                if (!pending.empty()) {
                    pending.append(chunk.data() + start, i - start);
                    fn(pending);
                    pending.clear();
                } else {
                    fn(std::string_view(chunk.data() + start, i - start));
                }
                start = i + 1;
            }
        }
        pending.append(chunk.data() + start, static_cast<std::size_t>(n) - start);
    }
    gzclose(file);
    if (!pending.empty()) fn(pending);
}

std::vector<std::string_view> split_tokens(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_ascii_space(line[i])) ++i;
        const std::size_t begin = i;
        while (i < line.size() && !is_ascii_space(line[i])) ++i;
        if (i > begin) tokens.push_back(line.substr(begin, i - begin));
    }
    return tokens;
}

std::string format_double(double value) {
    std::array<char, 64> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text, const std::string& context) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DataError("bad number '" + std::string(text) + "' in " + context);
    }
    return value;
}

long long parse_int(std::string_view text, const std::string& context) {
    long long value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
        throw DataError("bad integer '" + std::string(text) + "' in " + context);
    }
    return value;
}

std::uint64_t fnv1a_file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file for digest: " + path);
    std::uint64_t hash = 1469598103934665603ULL;
    std::array<char, 1 << 16> chunk;
    while (in.read(chunk.data(), chunk.size()) || in.gcount() > 0) {
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(chunk[i]);
            hash *= 1099511628211ULL;
        }
    }
    return hash;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open file for writing: " + path);
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace driftvec
