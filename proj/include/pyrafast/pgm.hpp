#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pyrafast/image.hpp"

namespace pyrafast {

/// Parse failure for PGM input. `offset` is the byte position in the input
/// buffer where the problem was detected (for truncation, the position of
/// the first missing byte).
struct PgmParseError : std::runtime_error {
    std::size_t offset;
    PgmParseError(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (byte offset " + std::to_string(off) + ")"),
          offset(off) {}
};

namespace detail {

inline bool pgm_ws(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

// Skip whitespace and '#' comments (comment runs to end of line).
inline void pgm_skip(std::span<const std::uint8_t> b, std::size_t& pos) {
    while (pos < b.size()) {
        if (pgm_ws(b[pos])) {
            ++pos;
        } else if (b[pos] == '#') {
            while (pos < b.size() && b[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
}

inline long pgm_int(std::span<const std::uint8_t> b, std::size_t& pos, const char* field) {
    pgm_skip(b, pos);
    if (pos >= b.size())
        throw PgmParseError(std::string("PGM: missing ") + field, pos);
    if (b[pos] < '0' || b[pos] > '9')
        throw PgmParseError(std::string("PGM: expected digit for ") + field, pos);
    long v = 0;
    while (pos < b.size() && b[pos] >= '0' && b[pos] <= '9') {
        v = v * 10 + (b[pos] - '0');
        if (v > 1'000'000'000L)
            throw PgmParseError(std::string("PGM: ") + field + " out of range", pos);
        ++pos;
    }
    return v;
}

}  // namespace detail

/// Decode a PGM image (binary "P5" or ASCII "P2", maxval <= 255).
/// Header comments are honored. Malformed input throws PgmParseError
/// naming the offending byte offset.
inline GrayImage load_pgm(std::span<const std::uint8_t> bytes) {
    using detail::pgm_int;
    std::size_t pos = 0;
    if (bytes.size() < 2)
        throw PgmParseError("PGM: truncated magic", bytes.size());
    if (bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2'))
        throw PgmParseError("PGM: bad magic, want P5 or P2", 0);
    const bool binary = bytes[1] == '5';
    pos = 2;

    const long w = pgm_int(bytes, pos, "width");
    const long h = pgm_int(bytes, pos, "height");
    const long maxval = pgm_int(bytes, pos, "maxval");
    if (w <= 0 || h <= 0)
        throw PgmParseError("PGM: non-positive dimensions", pos);
    if (maxval <= 0 || maxval > 255)
        throw PgmParseError("PGM: maxval must be in [1,255], got " + std::to_string(maxval),
                            pos);

    GrayImage img(static_cast<int>(w), static_cast<int>(h));
    const std::size_t count = img.size();

    if (binary) {
        // Exactly one whitespace byte separates the maxval from the payload.
        if (pos >= bytes.size() || !detail::pgm_ws(bytes[pos]))
            throw PgmParseError("PGM: missing whitespace before P5 payload", pos);
        ++pos;
        if (bytes.size() - pos < count)
            throw PgmParseError("PGM: P5 payload truncated", pos + (bytes.size() - pos));
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint8_t v = bytes[pos + i];
            if (v > maxval)
                throw PgmParseError("PGM: sample exceeds maxval", pos + i);
            img.data[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            detail::pgm_skip(bytes, pos);
            if (pos >= bytes.size())
                throw PgmParseError("PGM: P2 payload truncated", pos);
            const std::size_t at = pos;
            const long v = pgm_int(bytes, pos, "sample");
            if (v > maxval)
                throw PgmParseError("PGM: sample exceeds maxval", at);
            img.data[i] = static_cast<std::uint8_t>(v);
        }
    }
    return img;
}

/// Encode as binary PGM (P5, maxval 255).
inline std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    if (img.width <= 0 || img.height <= 0)
        throw std::invalid_argument("encode_pgm: empty image");
    const std::string header = "P5\n" + std::to_string(img.width) + " " +
                               std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.data.begin(), img.data.end());
    return out;
}

inline GrayImage load_pgm_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes);
}

inline void save_pgm_file(const GrayImage& img, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(img);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

}  // namespace pyrafast
