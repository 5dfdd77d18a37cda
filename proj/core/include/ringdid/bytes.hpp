#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ringdid {

using Bytes = std::vector<unsigned char>;
using BytesView = std::span<const unsigned char>;

inline BytesView as_bytes(std::string_view s) {
    return {reinterpret_cast<const unsigned char*>(s.data()), s.size()};
}

inline std::string to_string(BytesView b) {
    return {reinterpret_cast<const char*>(b.data()), b.size()};
}

inline void append(Bytes& out, BytesView b) {
    out.insert(out.end(), b.begin(), b.end());
}

inline void append_u16be(Bytes& out, std::uint16_t v) {
    out.push_back(static_cast<unsigned char>(v >> 8));
    out.push_back(static_cast<unsigned char>(v & 0xff));
}

inline void append_u32be(Bytes& out, std::uint32_t v) {
    for (int shift = 24; shift >= 0; shift -= 8)
        out.push_back(static_cast<unsigned char>((v >> shift) & 0xff));
}

inline void append_u64le(Bytes& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
}

inline std::uint16_t read_u16be(BytesView b) {
    return static_cast<std::uint16_t>((b[0] << 8) | b[1]);
}

std::string to_hex(BytesView b);
Bytes from_hex(std::string_view hex);  // asserts on malformed input; test/tooling helper

}  // namespace ringdid
