#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ringdid/group.hpp"
#include "ringdid/ring.hpp"

namespace ringdid {

enum class Verdict { accept, reject };

enum class SchemeKind { aos, borromean };

const char* scheme_name(SchemeKind scheme);
Result<SchemeKind> parse_scheme(std::string_view name);

/// AOS ring signature: the challenge anchored at ring index 0 plus one
/// response per ring member, the signer's slot holding the closing response.
/// Nothing in the structure depends on which member signed.
struct AosSignature {
    Scalar e1;
    std::vector<Scalar> responses;

    bool operator==(const AosSignature& other) const = default;
};

/// Borromean signature over one or more sub-rings sharing a base challenge.
/// responses[i][j] answers for key j of sub-ring i; the layout is implicit in
/// the response shape.
struct BorromeanSignature {
    Scalar e0;
    std::vector<std::vector<Scalar>> responses;

    std::vector<std::size_t> sub_ring_layout() const;
    bool operator==(const BorromeanSignature& other) const = default;
};

/// Sign m for the ring. The signer commits at their slot, the challenge chain
/// is hashed forward around the ring (each challenge binds the ring, the
/// message and the previous commitment), non-signer responses are uniform,
/// and the signer's response closes the loop as z = r - e*sk.
Result<AosSignature> aos_sign(const SignerPosition& signer, BytesView message, const Ring& ring,
                              Entropy& entropy);

/// Recomputes the challenge chain from e1 and every response around the full
/// ring; accepts iff the chain closes. Takes no signer index. A response
/// count that does not match the ring is malformed, which is distinct from a
/// cryptographic reject.
Result<Verdict> aos_verify(const Ring& ring, BytesView message, const AosSignature& sig);

/// Borromean signing over several sub-rings, one signer position per
/// sub-ring. Each sub-ring chains commitments forward from a challenge
/// derived from the shared e0, and e0 itself is the hash of every sub-ring's
/// final commitment.
Result<BorromeanSignature> borromean_sign(std::span<const SignerPosition> signers,
                                          BytesView message, std::span<const Ring> rings,
                                          Entropy& entropy);

Result<Verdict> borromean_verify(std::span<const Ring> rings, BytesView message,
                                 const BorromeanSignature& sig);

/// Wire format. One version byte selects the scheme:
///   0x01 AOS:       [0x01][ring size u16be][e1][responses...]
///   0x02 Borromean, single sub-ring: [0x02][ring size u16be][e0][responses...]
///   0x03 Borromean, general: [0x03][sub-ring count u16be][sizes u16be...][e0][responses...]
/// All scalars are canonical 32-byte encodings; responses follow ring order.
Bytes encode_signature(const AosSignature& sig);
Bytes encode_signature(const BorromeanSignature& sig);

inline constexpr unsigned char kWireAos = 0x01;
inline constexpr unsigned char kWireBorromeanSingle = 0x02;
inline constexpr unsigned char kWireBorromeanMulti = 0x03;

struct DecodedSignature {
    SchemeKind scheme;
    AosSignature aos;             // set when scheme == aos
    BorromeanSignature borromean; // set when scheme == borromean
};

Result<DecodedSignature> decode_signature(BytesView wire);

/// Verifies a wire-encoded signature of either scheme against a single ring.
Result<Verdict> verify_wire(const Ring& ring, BytesView message, BytesView wire);

}  // namespace ringdid
