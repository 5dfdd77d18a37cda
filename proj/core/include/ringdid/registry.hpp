#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "ringdid/document.hpp"
#include "ringdid/ring_signature.hpp"

namespace ringdid {

enum class RecordStatus { active, revoked };

/// One registry entry. Versions increase strictly with every mutation and a
/// revoked record never returns to active.
struct RegistryRecord {
    Did did;
    std::variant<DidDocument, CredentialDocument> document;
    RecordStatus status = RecordStatus::active;
    std::uint64_t version = 1;
    std::int64_t created_ms = 0;
    std::int64_t updated_ms = 0;
    std::optional<std::int64_t> revoked_ms;

    bool is_ring_document() const { return std::holds_alternative<DidDocument>(document); }
    const DidDocument* ring_document() const { return std::get_if<DidDocument>(&document); }
    const CredentialDocument* credential_document() const {
        return std::get_if<CredentialDocument>(&document);
    }
};

/// Canonical byte serialization of a ring-update request; the ring signature
/// authorizing the update is computed over exactly these bytes. Binding the
/// current version prevents replaying an old authorization.
Bytes update_payload_bytes(const Did& ring_did, std::span<const Did> add,
                           std::span<const Did> remove, std::uint64_t base_version);

/// The verifiable data registry: DID -> document records, with the did:ring
/// lifecycle on top. Backed either by memory or by a directory of one JSON
/// file per record plus an index:
///   <root>/records/<method-specific-id>.json
///   <root>/index.json
/// Operations on a single DID are linearizable; cross-DID operations impose
/// no ordering.
class Registry {
public:
    static Registry in_memory();
    static Result<Registry> open(const std::filesystem::path& root);

    Registry(Registry&&) noexcept;
    Registry& operator=(Registry&&) noexcept;
    ~Registry();

    /// Registers a validated ring document. Service endpoints may be
    /// unregistered at this point; binding is checked lazily on resolution.
    Result<RegistryRecord> register_ring(const DidDocument& doc);
    Result<RegistryRecord> register_credential(const CredentialDocument& doc);

    Result<RegistryRecord> resolve(const Did& did) const;

    /// Walks every service endpoint of a ring document, resolves each
    /// credential, and rebuilds the ring from the resolved keys. Any
    /// unresolvable endpoint fails the whole ring; a mismatch against the
    /// embedded ring is an integrity error.
    Result<Ring> resolve_ring_keys(const Did& ring_did) const;

    /// Applies add/remove endpoint changes, authorized by a ring signature of
    /// the current ring over update_payload_bytes(..., current version). The
    /// identifier is untouched; the embedded ring and services stay in step.
    Result<RegistryRecord> update_ring(const Did& ring_did, std::span<const Did> add,
                                       std::span<const Did> remove,
                                       const AosSignature& authorization);

    /// Flips a constituent credential to revoked. Ring DIDs themselves are
    /// never revocable; rings containing the credential become unresolvable.
    Result<RegistryRecord> revoke_credential(const Did& credential_did);

    std::vector<Did> list() const;

private:
    Registry();
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace ringdid
