#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ringdid/did.hpp"
#include "ringdid/ring.hpp"
#include "ringdid/ring_signature.hpp"

namespace ringdid {

inline constexpr std::string_view kDidContextV1 = "https://www.w3.org/ns/did/v1";
inline constexpr std::string_view kLinkedDomains = "LinkedDomains";

/// Non-normative verification method type names, one per supported scheme.
inline constexpr std::string_view kAosVerificationType = "AosRingSignature2024";
inline constexpr std::string_view kBorromeanVerificationType = "BorromeanRingSignature2024";

bool is_known_verification_type(std::string_view type);
std::string_view verification_type_for(SchemeKind scheme);

struct AuthenticationMethod {
    Did id;
    std::string type;
    Did controller;
    std::string public_key_base58;  // the serialized ring: ordered key encodings, base58

    bool operator==(const AuthenticationMethod& other) const = default;
};

struct ServiceEndpointEntry {
    DidUrl id;                 // endpoint DID plus a #cred-k fragment
    std::string type;          // always "LinkedDomains"
    Did service_endpoint;      // DID of the constituent credential

    bool operator==(const ServiceEndpointEntry& other) const = default;
};

/// A did:ring DID document: one ring-verification authentication method and
/// one LinkedDomains service per constituent credential. Unknown fields
/// encountered while parsing are preserved verbatim in `extras`.
struct DidDocument {
    std::vector<std::string> context;
    Did id;
    std::vector<AuthenticationMethod> authentication;
    std::vector<ServiceEndpointEntry> services;
    std::map<std::string, std::string> extras;  // field name -> raw JSON

    Status validate() const;
    bool operator==(const DidDocument& other) const = default;
};

/// Resolvable record for a single constituent credential, carrying the one
/// public key the ring is assembled from.
struct CredentialDocument {
    std::vector<std::string> context;
    Did id;
    std::string public_key_base58;  // a single key
    std::map<std::string, std::string> extras;

    Result<GroupElement> key() const;
    Status validate() const;
    bool operator==(const CredentialDocument& other) const = default;
};

/// Builds the document for a ring whose credential DIDs are already aligned
/// with the sorted ring keys. Service fragments are #cred-k with k the
/// 1-based ring position.
Result<DidDocument> create_ring_document(const Ring& ring, std::span<const Did> credential_dids,
                                         std::string_view identifier,
                                         std::string_view verification_type = kAosVerificationType);

/// Convenience for callers holding unsorted (credential DID, key) pairs:
/// sorts by key encoding, builds the ring, and aligns the DIDs.
Result<DidDocument> make_ring_document(std::vector<std::pair<Did, GroupElement>> credentials,
                                       std::string_view identifier,
                                       std::string_view verification_type = kAosVerificationType);

/// Deterministic key-ordered JSON; two equal documents serialize to
/// byte-identical text.
Result<std::string> serialize_document(const DidDocument& doc);
Result<DidDocument> parse_document(std::string_view text);

/// Recovers the ring from the authentication method's publicKeyBase58.
Result<Ring> extract_ring(const DidDocument& doc);

CredentialDocument create_credential_document(Did id, const GroupElement& pk);
Result<std::string> serialize_credential(const CredentialDocument& doc);
Result<CredentialDocument> parse_credential(std::string_view text);

}  // namespace ringdid
