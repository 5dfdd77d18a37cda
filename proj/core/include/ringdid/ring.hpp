#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ringdid/group.hpp"

namespace ringdid {

/// An ordered set of at least two distinct public keys. Construction sorts
/// the keys ascending by canonical encoding, so any permutation of the same
/// key set yields a byte-identical ring; indexing is 0-based.
class Ring {
public:
    /// Sorts, rejects rings of fewer than two keys and duplicate keys.
    static Result<Ring> create(std::vector<GroupElement> keys);

    /// Decodes a flat concatenation of fixed-width key encodings (the wire
    /// form embedded in DID documents) and canonicalizes it.
    static Result<Ring> from_concatenated(BytesView data);

    std::size_t size() const { return keys_.size(); }
    const GroupElement& operator[](std::size_t i) const { return keys_[i]; }
    const std::vector<GroupElement>& keys() const { return keys_; }

    std::optional<std::size_t> index_of(const GroupElement& pk) const;

    /// Fixed-width key encodings concatenated in ring order.
    Bytes encoded() const;

    bool operator==(const Ring& other) const = default;

private:
    Ring() = default;
    std::vector<GroupElement> keys_;
};

/// A signer's slot in a ring: the index s together with the secret key whose
/// public key sits at that index. The binding is checked at signing time.
struct SignerPosition {
    std::size_t index;
    Scalar secret;
};

}  // namespace ringdid
