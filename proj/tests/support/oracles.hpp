#pragma once

// Test-only reference implementations, kept deliberately independent of the
// library code paths they are used to check.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ringdid/bytes.hpp"

namespace oracle {

using BigInt = boost::multiprecision::cpp_int;

/// The group order, written out in decimal rather than derived from the
/// library.
inline const BigInt& order() {
    static const BigInt q(
        "7237005577332262213973186563042994240857116359379907606001950938285454250989");
    return q;
}

BigInt from_le(ringdid::BytesView bytes);
ringdid::Bytes to_le32(BigInt value);

inline BigInt mod_add(const BigInt& a, const BigInt& b) { return (a + b) % order(); }
inline BigInt mod_sub(const BigInt& a, const BigInt& b) {
    return ((a - b) % order() + order()) % order();
}
inline BigInt mod_mul(const BigInt& a, const BigInt& b) { return (a * b) % order(); }
inline BigInt mod_neg(const BigInt& a) { return (order() - a % order()) % order(); }

/// Big-integer route through base58, structurally unlike the byte-array long
/// division in the library.
std::string base58_encode(ringdid::BytesView data);
std::optional<ringdid::Bytes> base58_decode(std::string_view text);

/// Literal transcription of the ring DID grammar: the "did:ring:" prefix
/// followed by 40 to 48 characters of the base58 set.
bool matches_ring_did_grammar(std::string_view text);

/// Nearest-centroid classifier over normalized byte histograms; the baseline
/// distinguisher for signer anonymity checks. Returns held-out accuracy.
double byte_frequency_classifier_accuracy(
    const std::vector<std::vector<ringdid::Bytes>>& per_signer_samples, double train_fraction);

}  // namespace oracle
