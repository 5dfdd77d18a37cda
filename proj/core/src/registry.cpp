#include "ringdid/registry.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "ringdid/time_util.hpp"

namespace ringdid {

using nlohmann::json;

namespace {

std::string did_string(const Did& did) { return "did:" + did.method + ":" + did.id; }

Result<std::string> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(Errc::io_error, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

Status write_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return make_error(Errc::io_error, "cannot open " + path.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    out.flush();
    if (!out) return make_error(Errc::io_error, "failed writing " + path.string());
    return {};
}

Result<json> record_to_json(const RegistryRecord& record) {
    json j;
    j["did"] = did_string(record.did);
    j["kind"] = record.is_ring_document() ? "ring" : "credential";
    j["status"] = record.status == RecordStatus::active ? "active" : "revoked";
    j["version"] = record.version;
    j["created"] = iso8601_utc(record.created_ms);
    j["updated"] = iso8601_utc(record.updated_ms);
    if (record.revoked_ms) j["revoked"] = iso8601_utc(*record.revoked_ms);

    Result<std::string> text = record.is_ring_document()
                                   ? serialize_document(*record.ring_document())
                                   : serialize_credential(*record.credential_document());
    if (!text.ok()) return std::move(text).take_error();
    j["document"] = json::parse(text.value());
    return j;
}

Result<RegistryRecord> record_from_json(const json& j) {
    RegistryRecord record;
    auto fail = [](const char* what) -> Error {
        return make_error(Errc::wrong_field_type, std::string("record envelope: ") + what);
    };
    if (!j.is_object()) return fail("not an object");
    if (!j.contains("did") || !j["did"].is_string()) return fail("missing did");
    if (!j.contains("kind") || !j["kind"].is_string()) return fail("missing kind");
    if (!j.contains("status") || !j["status"].is_string()) return fail("missing status");
    if (!j.contains("version") || !j["version"].is_number_unsigned()) return fail("missing version");
    if (!j.contains("document")) return fail("missing document");

    auto did = parse_did(j["did"].get<std::string>());
    if (!did.ok()) return std::move(did).take_error();
    record.did = std::move(did).value();

    record.status =
        j["status"].get<std::string>() == "revoked" ? RecordStatus::revoked : RecordStatus::active;
    record.version = j["version"].get<std::uint64_t>();

    for (auto [field, target] : {std::pair{"created", &record.created_ms},
                                 std::pair{"updated", &record.updated_ms}}) {
        if (!j.contains(field) || !j[field].is_string()) return fail("missing timestamp");
        auto ms = parse_iso8601(j[field].get<std::string>());
        if (!ms.ok()) return std::move(ms).take_error();
        *target = ms.value();
    }
    if (j.contains("revoked")) {
        auto ms = parse_iso8601(j["revoked"].get<std::string>());
        if (!ms.ok()) return std::move(ms).take_error();
        record.revoked_ms = ms.value();
    }

    std::string document_text = j["document"].dump();
    if (j["kind"].get<std::string>() == "ring") {
        auto doc = parse_document(document_text);
        if (!doc.ok()) return std::move(doc).take_error();
        record.document = std::move(doc).value();
    } else {
        auto doc = parse_credential(document_text);
        if (!doc.ok()) return std::move(doc).take_error();
        record.document = std::move(doc).value();
    }
    return record;
}

}  // namespace

Bytes update_payload_bytes(const Did& ring_did, std::span<const Did> add,
                           std::span<const Did> remove, std::uint64_t base_version) {
    json j;
    j["ringDid"] = did_string(ring_did);
    j["baseVersion"] = base_version;
    j["add"] = json::array();
    for (const Did& did : add) j["add"].push_back(did_string(did));
    j["remove"] = json::array();
    for (const Did& did : remove) j["remove"].push_back(did_string(did));
    std::string text = j.dump();
    return Bytes(text.begin(), text.end());
}

struct Registry::Impl {
    mutable std::mutex mu;
    std::map<std::string, RegistryRecord> records;       // full DID string -> record
    std::map<std::string, std::string> files;            // method-specific id -> full DID string
    std::optional<std::filesystem::path> root;

    Status persist(const RegistryRecord& record) {
        if (!root) return {};
        auto j = record_to_json(record);
        if (!j.ok()) return j.error();
        auto path = *root / "records" / (record.did.id + ".json");
        if (auto st = write_file(path, j.value().dump(2) + "\n"); !st.ok()) return st;
        return persist_index();
    }

    Status persist_index() {
        if (!root) return {};
        json index;
        index["records"] = json::object();
        for (const auto& [msid, did] : files) index["records"][msid] = did;
        return write_file(*root / "index.json", index.dump(2) + "\n");
    }

    Result<RegistryRecord*> find_mut(const Did& did) {
        auto it = records.find(did_string(did));
        if (it == records.end())
            return make_error(Errc::not_found, "no record for " + did_string(did));
        return &it->second;
    }

    Result<const RegistryRecord*> find(const Did& did) const {
        auto it = records.find(did_string(did));
        if (it == records.end())
            return make_error(Errc::not_found, "no record for " + did_string(did));
        return &it->second;
    }

    Result<RegistryRecord> insert(RegistryRecord record) {
        std::string key = did_string(record.did);
        if (records.contains(key))
            return make_error(Errc::conflict, key + " is already registered");
        if (auto it = files.find(record.did.id); it != files.end() && it->second != key)
            return make_error(Errc::conflict, "method-specific id '" + record.did.id +
                                                  "' is already in use by " + it->second);
        std::int64_t now = now_ms();
        record.created_ms = now;
        record.updated_ms = now;
        files[record.did.id] = key;
        auto [it, inserted] = records.emplace(key, std::move(record));
        if (auto st = persist(it->second); !st.ok()) return st.error();
        return it->second;
    }
};

Registry::Registry() : impl_(std::make_unique<Impl>()) {}
Registry::Registry(Registry&&) noexcept = default;
Registry& Registry::operator=(Registry&&) noexcept = default;
Registry::~Registry() = default;

Registry Registry::in_memory() { return Registry(); }

Result<Registry> Registry::open(const std::filesystem::path& root) {
    Registry registry;
    registry.impl_->root = root;

    std::error_code ec;
    std::filesystem::create_directories(root / "records", ec);
    if (ec)
        return make_error(Errc::io_error,
                          "cannot create registry directory " + root.string() + ": " + ec.message());

    auto index_path = root / "index.json";
    if (!std::filesystem::exists(index_path)) {
        if (auto st = registry.impl_->persist_index(); !st.ok()) return st.error();
        return registry;
    }

    auto text = read_file(index_path);
    if (!text.ok()) return std::move(text).take_error();
    json index = json::parse(text.value(), nullptr, false);
    if (index.is_discarded() || !index.is_object() || !index.contains("records"))
        return make_error(Errc::io_error, "corrupt registry index at " + index_path.string());

    for (const auto& [msid, did] : index["records"].items()) {
        auto record_text = read_file(root / "records" / (msid + ".json"));
        if (!record_text.ok()) return std::move(record_text).take_error();
        json j = json::parse(record_text.value(), nullptr, false);
        if (j.is_discarded())
            return make_error(Errc::io_error, "corrupt registry record " + msid + ".json");
        auto record = record_from_json(j);
        if (!record.ok()) return std::move(record).take_error();
        registry.impl_->files[msid] = did.get<std::string>();
        registry.impl_->records[did.get<std::string>()] = std::move(record).value();
    }
    return registry;
}

Result<RegistryRecord> Registry::register_ring(const DidDocument& doc) {
    if (auto st = doc.validate(); !st.ok()) return st.error();
    std::lock_guard lock(impl_->mu);
    RegistryRecord record;
    record.did = doc.id;
    record.document = doc;
    return impl_->insert(std::move(record));
}

Result<RegistryRecord> Registry::register_credential(const CredentialDocument& doc) {
    if (auto st = doc.validate(); !st.ok()) return st.error();
    if (doc.id.is_ring())
        return make_error(Errc::operation_not_permitted,
                          "credential documents cannot use the ring method");
    std::lock_guard lock(impl_->mu);
    RegistryRecord record;
    record.did = doc.id;
    record.document = doc;
    return impl_->insert(std::move(record));
}

Result<RegistryRecord> Registry::resolve(const Did& did) const {
    std::lock_guard lock(impl_->mu);
    auto record = impl_->find(did);
    if (!record.ok()) return std::move(record).take_error();
    if (record.value()->status == RecordStatus::revoked)
        return make_error(Errc::revoked,
                          did_string(did) + " was revoked at " +
                              iso8601_utc(record.value()->revoked_ms.value_or(0)));
    return *record.value();
}

Result<Ring> Registry::resolve_ring_keys(const Did& ring_did) const {
    auto record = resolve(ring_did);
    if (!record.ok()) return std::move(record).take_error();
    const DidDocument* doc = record.value().ring_document();
    if (!doc)
        return make_error(Errc::document_invalid,
                          did_string(ring_did) + " does not resolve to a ring document");

    auto embedded = extract_ring(*doc);
    if (!embedded.ok()) return embedded;

    std::vector<GroupElement> keys;
    keys.reserve(doc->services.size());
    for (const auto& service : doc->services) {
        auto endpoint = resolve(service.service_endpoint);
        if (!endpoint.ok())
            return make_error(Errc::unresolvable_ring,
                              "endpoint " + did_string(service.service_endpoint) +
                                  " is unresolvable: " + endpoint.error().message);
        const CredentialDocument* cred = endpoint.value().credential_document();
        if (!cred)
            return make_error(Errc::unresolvable_ring,
                              "endpoint " + did_string(service.service_endpoint) +
                                  " is not a credential document");
        auto key = cred->key();
        if (!key.ok()) return std::move(key).take_error();
        keys.push_back(key.value());
    }

    auto resolved = Ring::create(std::move(keys));
    if (!resolved.ok()) return resolved;
    if (!(resolved.value() == embedded.value()))
        return make_error(Errc::integrity_mismatch,
                          "embedded ring does not match the endpoint-resolved keys");
    return resolved;
}

Result<RegistryRecord> Registry::update_ring(const Did& ring_did, std::span<const Did> add,
                                             std::span<const Did> remove,
                                             const AosSignature& authorization) {
    std::lock_guard lock(impl_->mu);
    auto found = impl_->find_mut(ring_did);
    if (!found.ok()) return std::move(found).take_error();
    RegistryRecord& record = *found.value();
    const DidDocument* doc = record.ring_document();
    if (!doc)
        return make_error(Errc::operation_not_permitted,
                          "update_ring applies only to ring documents");

    auto current_ring = extract_ring(*doc);
    if (!current_ring.ok()) return std::move(current_ring).take_error();

    Bytes payload = update_payload_bytes(ring_did, add, remove, record.version);
    auto verdict = aos_verify(current_ring.value(), payload, authorization);
    if (!verdict.ok() || verdict.value() != Verdict::accept)
        return make_error(Errc::unauthorized,
                          "update is not authorized by the current ring");

    // start from the current (did, key) alignment: service k <-> ring key k
    std::vector<std::pair<Did, GroupElement>> credentials;
    for (std::size_t k = 0; k < doc->services.size(); ++k)
        credentials.emplace_back(doc->services[k].service_endpoint, current_ring.value()[k]);

    for (const Did& did : remove) {
        auto it = std::find_if(credentials.begin(), credentials.end(),
                               [&](const auto& c) { return c.first == did; });
        if (it == credentials.end())
            return make_error(Errc::not_found,
                              did_string(did) + " is not an endpoint of this ring");
        credentials.erase(it);
    }

    for (const Did& did : add) {
        auto already = std::find_if(credentials.begin(), credentials.end(),
                                    [&](const auto& c) { return c.first == did; });
        if (already != credentials.end())
            return make_error(Errc::conflict, did_string(did) + " is already an endpoint");
        auto it = impl_->records.find(did_string(did));
        if (it == impl_->records.end())
            return make_error(Errc::not_found, "endpoint " + did_string(did) + " is not registered");
        if (it->second.status == RecordStatus::revoked)
            return make_error(Errc::revoked, "endpoint " + did_string(did) + " is revoked");
        const CredentialDocument* cred = it->second.credential_document();
        if (!cred)
            return make_error(Errc::operation_not_permitted,
                              did_string(did) + " is not a credential document");
        auto key = cred->key();
        if (!key.ok()) return std::move(key).take_error();
        credentials.emplace_back(did, key.value());
    }

    if (credentials.size() < 2)
        return make_error(Errc::ring_too_small,
                          "update would shrink the ring to " + std::to_string(credentials.size()) +
                              " keys");

    auto updated = make_ring_document(std::move(credentials), doc->id.id,
                                      doc->authentication.front().type);
    if (!updated.ok()) return std::move(updated).take_error();

    record.document = std::move(updated).value();
    record.version += 1;
    record.updated_ms = now_ms();
    if (auto st = impl_->persist(record); !st.ok()) return st.error();
    return record;
}

Result<RegistryRecord> Registry::revoke_credential(const Did& credential_did) {
    std::lock_guard lock(impl_->mu);
    auto found = impl_->find_mut(credential_did);
    if (!found.ok()) return std::move(found).take_error();
    RegistryRecord& record = *found.value();
    if (record.is_ring_document())
        return make_error(Errc::operation_not_permitted,
                          "a did:ring DID cannot be deleted or revoked");
    if (record.status == RecordStatus::revoked)
        return make_error(Errc::already_revoked,
                          did_string(credential_did) + " is already revoked");

    record.status = RecordStatus::revoked;
    record.revoked_ms = now_ms();
    record.updated_ms = *record.revoked_ms;
    record.version += 1;
    if (auto st = impl_->persist(record); !st.ok()) return st.error();
    return record;
}

std::vector<Did> Registry::list() const {
    std::lock_guard lock(impl_->mu);
    std::vector<Did> out;
    out.reserve(impl_->records.size());
    for (const auto& [key, record] : impl_->records) out.push_back(record.did);
    return out;
}

}  // namespace ringdid
