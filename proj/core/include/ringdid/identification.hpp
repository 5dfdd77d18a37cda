#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ringdid/registry.hpp"
#include "ringdid/ring_signature.hpp"

namespace ringdid {

/// How long an issued challenge stays answerable.
inline constexpr std::int64_t kChallengeWindowMs = 300'000;
inline constexpr std::size_t kChallengeNonceBytes = 32;
inline constexpr std::size_t kChallengeNonceMinBytes = 16;

struct Challenge {
    Bytes nonce;  // at least 16 bytes
    std::string context;
    std::int64_t issued_at_ms = 0;

    bool operator==(const Challenge& other) const = default;
};

/// What the holder hands back: the ring DID, a wire-encoded ring signature
/// and the echoed challenge. Deliberately nothing else; the signer's
/// credential never appears.
struct Presentation {
    Did ring_did;
    Bytes signature;
    Challenge challenge;

    bool operator==(const Presentation& other) const = default;
};

/// JSON envelope {challenge:{context,issuedAt,nonce},ringDid,signature} with
/// nonce and signature base58-encoded.
std::string presentation_to_json(const Presentation& presentation);
Result<Presentation> presentation_from_json(std::string_view text);
std::string challenge_to_json(const Challenge& challenge);
Result<Challenge> challenge_from_json(std::string_view text);

/// The bytes a presentation signs: canonical serialization of the ring DID,
/// the challenge nonce and the verifier context, binding the proof to both
/// ring identity and session.
Bytes presentation_message(const Did& ring_did, const Challenge& challenge);

/// The holder's credential secrets, keyed by credential DID.
class Wallet {
public:
    void add_credential(Did credential_did, const KeyPair& keypair);
    std::size_t size() const { return credentials_.size(); }

    /// First owned key that is a member of the ring.
    std::optional<SignerPosition> position_in(const Ring& ring) const;

private:
    std::vector<std::pair<Did, KeyPair>> credentials_;
};

/// Resolves the ring, locates an owned key and answers the challenge with a
/// ring signature over presentation_message. The resulting presentation
/// carries no trace of which credential signed.
Result<Presentation> holder_respond(const Wallet& wallet, const Did& ring_did,
                                    const Challenge& challenge, const Registry& registry,
                                    Entropy& entropy, SchemeKind scheme = SchemeKind::aos);

/// Issues single-use challenges and checks presentations against them.
/// check() outcomes depend only on presentation validity, challenge
/// freshness and ring resolvability:
///   - unknown, expired or already-used challenge  -> replay error
///   - unresolvable ring                           -> resolution_failed error
///   - anything wrong with the signature or echo   -> Verdict::reject
class Verifier {
public:
    explicit Verifier(std::int64_t window_ms = kChallengeWindowMs);

    Result<Challenge> issue(std::string context, Entropy& entropy);
    /// Test seam: issue with an explicit timestamp.
    Result<Challenge> issue_at(std::string context, Entropy& entropy, std::int64_t issued_at_ms);

    Result<Verdict> check(const Registry& registry, const Presentation& presentation,
                          const Challenge& expected);
    Result<Verdict> check_at(const Registry& registry, const Presentation& presentation,
                             const Challenge& expected, std::int64_t now_ms);

private:
    std::int64_t window_ms_;
    std::map<Bytes, std::pair<std::int64_t, bool>> issued_;  // nonce -> (issued_at, used)
};

}  // namespace ringdid
