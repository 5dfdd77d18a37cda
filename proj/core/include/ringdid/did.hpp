#pragma once

#include <string>
#include <string_view>

#include "ringdid/base58.hpp"
#include "ringdid/group.hpp"
#include "ringdid/ring.hpp"

namespace ringdid {

inline constexpr std::string_view kRingMethod = "ring";
inline constexpr std::size_t kRingIdMinLength = 40;
inline constexpr std::size_t kRingIdMaxLength = 48;

/// Bytes of randomness mixed into a ring identifier: 256 bits, comfortably
/// above the 128-bit floor, and fixed-width so the hashed concatenation stays
/// injective.
inline constexpr std::size_t kIdentifierRandomBytes = 32;
inline constexpr std::size_t kIdentifierRandomMinBytes = kSecurityBits / 8;

/// A parsed decentralised identifier `did:<method>:<id>`.
struct Did {
    std::string method;
    std::string id;

    bool is_ring() const { return method == kRingMethod; }
    bool operator==(const Did& other) const = default;
    auto operator<=>(const Did& other) const = default;
};

/// A DID plus an optional `#fragment`, as used by service entries. The
/// fragment is carried opaquely.
struct DidUrl {
    Did did;
    std::string fragment;

    bool operator==(const DidUrl& other) const = default;
};

/// Strict parser. The scheme and method must be lowercase; for the `ring`
/// method the id must be 40-48 base58 characters. Each failure carries the
/// offending offset where one exists.
Result<Did> parse_did(std::string_view text);

Result<DidUrl> parse_did_url(std::string_view text);

/// Inverse of parse_did; refuses identifiers that would not parse back.
Result<std::string> format_did(const Did& did);

std::string format_did_url(const DidUrl& url);

/// Method-specific identifier for a ring DID: the first 256 bits of the
/// 512-bit hash over pk_s || r || "ring" || pk_1 || ... || pk_n (fixed-width
/// key encodings, ring keys in ring order), base58-encoded. Deterministic in
/// its inputs.
Result<std::string> generate_ring_identifier(const GroupElement& signer_pk, BytesView randomness,
                                             const Ring& ring);

/// Draws fresh 32-byte randomness and retries on the (cryptographically
/// negligible) chance the encoding falls outside the 40-48 character bounds.
Result<std::string> new_ring_identifier(const GroupElement& signer_pk, const Ring& ring,
                                        Entropy& entropy);

/// Validates a bare method-specific id against the ring grammar.
Status check_ring_idstring(std::string_view id);

}  // namespace ringdid
