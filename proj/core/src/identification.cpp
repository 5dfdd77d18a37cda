#include "ringdid/identification.hpp"

#include <json.hpp>

#include "ringdid/base58.hpp"
#include "ringdid/time_util.hpp"

namespace ringdid {

using nlohmann::json;

namespace {

std::string did_string(const Did& did) { return "did:" + did.method + ":" + did.id; }

}  // namespace

std::string challenge_to_json(const Challenge& challenge) {
    json j;
    j["context"] = challenge.context;
    j["issuedAt"] = iso8601_utc(challenge.issued_at_ms);
    j["nonce"] = base58_encode(challenge.nonce);
    return j.dump(2) + "\n";
}

Result<Challenge> challenge_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return make_error(Errc::malformed_json, "challenge must be a JSON object");
    for (const char* field : {"context", "issuedAt", "nonce"})
        if (!j.contains(field) || !j[field].is_string())
            return make_error(Errc::missing_field,
                              std::string("challenge needs string field \"") + field + "\"");
    Challenge challenge;
    challenge.context = j["context"].get<std::string>();
    auto nonce = base58_decode(j["nonce"].get<std::string>());
    if (!nonce.ok()) return std::move(nonce).take_error();
    challenge.nonce = std::move(nonce).value();
    if (challenge.nonce.size() < kChallengeNonceMinBytes)
        return make_error(Errc::randomness_too_short,
                          "challenge nonce must be at least " +
                              std::to_string(kChallengeNonceMinBytes) + " bytes");
    auto issued = parse_iso8601(j["issuedAt"].get<std::string>());
    if (!issued.ok()) return std::move(issued).take_error();
    challenge.issued_at_ms = issued.value();
    return challenge;
}

std::string presentation_to_json(const Presentation& presentation) {
    json j;
    j["challenge"] = json::parse(challenge_to_json(presentation.challenge));
    j["ringDid"] = did_string(presentation.ring_did);
    j["signature"] = base58_encode(presentation.signature);
    return j.dump(2) + "\n";
}

Result<Presentation> presentation_from_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return make_error(Errc::malformed_json, "presentation must be a JSON object");
    if (!j.contains("challenge"))
        return make_error(Errc::missing_field, "presentation needs field \"challenge\"");
    for (const char* field : {"ringDid", "signature"})
        if (!j.contains(field) || !j[field].is_string())
            return make_error(Errc::missing_field,
                              std::string("presentation needs string field \"") + field + "\"");

    Presentation presentation;
    auto challenge = challenge_from_json(j["challenge"].dump());
    if (!challenge.ok()) return std::move(challenge).take_error();
    presentation.challenge = std::move(challenge).value();

    auto did = parse_did(j["ringDid"].get<std::string>());
    if (!did.ok()) return std::move(did).take_error();
    presentation.ring_did = std::move(did).value();

    auto signature = base58_decode(j["signature"].get<std::string>());
    if (!signature.ok()) return std::move(signature).take_error();
    presentation.signature = std::move(signature).value();
    return presentation;
}

Bytes presentation_message(const Did& ring_did, const Challenge& challenge) {
    json j;
    j["context"] = challenge.context;
    j["nonce"] = base58_encode(challenge.nonce);
    j["ringDid"] = did_string(ring_did);
    std::string text = j.dump();
    return Bytes(text.begin(), text.end());
}

void Wallet::add_credential(Did credential_did, const KeyPair& keypair) {
    credentials_.emplace_back(std::move(credential_did), keypair);
}

std::optional<SignerPosition> Wallet::position_in(const Ring& ring) const {
    for (const auto& [did, keypair] : credentials_)
        if (auto index = ring.index_of(keypair.pk))
            return SignerPosition{*index, keypair.sk};
    return std::nullopt;
}

Result<Presentation> holder_respond(const Wallet& wallet, const Did& ring_did,
                                    const Challenge& challenge, const Registry& registry,
                                    Entropy& entropy, SchemeKind scheme) {
    auto ring = registry.resolve_ring_keys(ring_did);
    if (!ring.ok()) return std::move(ring).take_error();

    auto position = wallet.position_in(ring.value());
    if (!position)
        return make_error(Errc::no_membership,
                          "wallet holds no key belonging to " + did_string(ring_did));

    Bytes message = presentation_message(ring_did, challenge);
    Bytes wire;
    if (scheme == SchemeKind::aos) {
        auto sig = aos_sign(*position, message, ring.value(), entropy);
        if (!sig.ok()) return std::move(sig).take_error();
        wire = encode_signature(sig.value());
    } else {
        const Ring& r = ring.value();
        auto sig = borromean_sign({&*position, 1}, message, {&r, 1}, entropy);
        if (!sig.ok()) return std::move(sig).take_error();
        wire = encode_signature(sig.value());
    }
    return Presentation{ring_did, std::move(wire), challenge};
}

Verifier::Verifier(std::int64_t window_ms) : window_ms_(window_ms) {}

Result<Challenge> Verifier::issue(std::string context, Entropy& entropy) {
    return issue_at(std::move(context), entropy, now_ms());
}

Result<Challenge> Verifier::issue_at(std::string context, Entropy& entropy,
                                     std::int64_t issued_at_ms) {
    Challenge challenge;
    challenge.nonce.resize(kChallengeNonceBytes);
    if (!entropy.fill(challenge.nonce))
        return make_error(Errc::entropy_exhausted, "entropy source exhausted drawing a nonce");
    challenge.context = std::move(context);
    challenge.issued_at_ms = issued_at_ms;
    issued_[challenge.nonce] = {issued_at_ms, false};
    return challenge;
}

Result<Verdict> Verifier::check(const Registry& registry, const Presentation& presentation,
                                const Challenge& expected) {
    return check_at(registry, presentation, expected, now_ms());
}

Result<Verdict> Verifier::check_at(const Registry& registry, const Presentation& presentation,
                                   const Challenge& expected, std::int64_t now_ms_value) {
    auto issued = issued_.find(expected.nonce);
    if (issued == issued_.end())
        return make_error(Errc::replay, "challenge was not issued by this verifier");
    if (issued->second.second)
        return make_error(Errc::replay, "challenge was already answered");
    if (now_ms_value - issued->second.first > window_ms_)
        return make_error(Errc::replay, "challenge expired");

    // the echoed challenge must match what was issued; the signature is
    // always verified against the expected challenge, never the echo
    if (!(presentation.challenge == expected)) return Verdict::reject;

    auto ring = registry.resolve_ring_keys(presentation.ring_did);
    if (!ring.ok())
        return make_error(Errc::resolution_failed,
                          "cannot resolve " + did_string(presentation.ring_did) + ": " +
                              ring.error().message);

    Bytes message = presentation_message(presentation.ring_did, expected);
    auto verdict = verify_wire(ring.value(), message, presentation.signature);
    if (!verdict.ok()) return Verdict::reject;  // malformed counts as invalid here
    if (verdict.value() == Verdict::accept) issued->second.second = true;
    return verdict.value();
}

}  // namespace ringdid
