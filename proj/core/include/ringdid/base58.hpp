#pragma once

#include <string>
#include <string_view>

#include "ringdid/bytes.hpp"
#include "ringdid/result.hpp"

namespace ringdid {

/// The Bitcoin/IPFS alphabet: 0, O, I and l are excluded.
extern const char kBase58Alphabet[59];

bool is_base58_char(char c);

/// Canonical big-integer base58. Leading zero bytes map to leading '1's;
/// the empty input maps to the empty string.
std::string base58_encode(BytesView data);

/// Inverse of base58_encode. A character outside the alphabet fails with its
/// position in the input.
Result<Bytes> base58_decode(std::string_view text);

}  // namespace ringdid
