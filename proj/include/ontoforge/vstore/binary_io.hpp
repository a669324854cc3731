#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "ontoforge/error.hpp"

// Little-endian fixed-width encoding for the store files.
namespace ontoforge::binio {

inline void write_le(std::ostream& out, std::uint64_t v, int bytes) {
    char buf[8];
    for (int i = 0; i < bytes; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, bytes);
}

inline void write_u8(std::ostream& out, std::uint8_t v) { write_le(out, v, 1); }
inline void write_u32(std::ostream& out, std::uint32_t v) { write_le(out, v, 4); }
inline void write_u64(std::ostream& out, std::uint64_t v) { write_le(out, v, 8); }
inline void write_f32(std::ostream& out, float v) { write_le(out, std::bit_cast<std::uint32_t>(v), 4); }

inline void read_exact(std::istream& in, char* buf, std::size_t n, const char* what) {
    in.read(buf, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) throw IoError(std::string("truncated file while reading ") + what);
}

inline std::uint64_t read_le(std::istream& in, int bytes) {
    unsigned char buf[8];
    read_exact(in, reinterpret_cast<char*>(buf), static_cast<std::size_t>(bytes), "integer");
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

inline std::uint8_t read_u8(std::istream& in) { return static_cast<std::uint8_t>(read_le(in, 1)); }
inline std::uint32_t read_u32(std::istream& in) { return static_cast<std::uint32_t>(read_le(in, 4)); }
inline std::uint64_t read_u64(std::istream& in) { return read_le(in, 8); }
inline float read_f32(std::istream& in) { return std::bit_cast<float>(read_u32(in)); }

inline void expect_eof(std::istream& in, const char* what) {
    if (in.peek() != std::char_traits<char>::eof()) throw IoError(std::string("trailing bytes in ") + what + " file");
}

} // namespace ontoforge::binio
