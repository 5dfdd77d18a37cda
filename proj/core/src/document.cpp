#include "ringdid/document.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "ringdid/base58.hpp"

namespace ringdid {

using nlohmann::json;

namespace {

const std::set<std::string_view> kRingDocumentFields = {"@context", "id", "authenticationMethod",
                                                        "service"};
const std::set<std::string_view> kCredentialFields = {"@context", "id", "publicKeyBase58"};

Result<json> parse_json(std::string_view text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) {
        // re-parse with exceptions to recover the error offset
        try {
            auto reparsed = json::parse(text);
            (void)reparsed;
        } catch (const json::parse_error& e) {
            return make_error(Errc::malformed_json, e.what(),
                              e.byte > 0 ? e.byte - 1 : std::size_t{0});
        }
        return make_error(Errc::malformed_json, "unparseable JSON");
    }
    return j;
}

Result<const json*> require_field(const json& j, std::string_view name, json::value_t type,
                                  const char* type_name) {
    auto it = j.find(name);
    if (it == j.end())
        return make_error(Errc::missing_field, "missing required field \"" + std::string(name) + "\"");
    if (it->type() != type &&
        !(type == json::value_t::string && it->is_string()))  // keep it simple for strings
        return make_error(Errc::wrong_field_type,
                          "field \"" + std::string(name) + "\" must be " + type_name);
    return &*it;
}

Result<Did> did_field(const json& j, std::string_view name) {
    auto field = require_field(j, name, json::value_t::string, "a string");
    if (!field.ok()) return std::move(field).take_error();
    auto did = parse_did(field.value()->get<std::string>());
    if (!did.ok()) {
        Error e = std::move(did).take_error();
        e.message = "field \"" + std::string(name) + "\": " + e.message;
        return e;
    }
    return did;
}

Result<std::vector<std::string>> context_field(const json& j) {
    auto field = require_field(j, "@context", json::value_t::array, "an array");
    if (!field.ok()) return std::move(field).take_error();
    std::vector<std::string> context;
    for (const auto& entry : *field.value()) {
        if (!entry.is_string())
            return make_error(Errc::wrong_field_type, "\"@context\" entries must be strings");
        context.push_back(entry.get<std::string>());
    }
    return context;
}

void collect_extras(const json& j, const std::set<std::string_view>& known,
                    std::map<std::string, std::string>& extras) {
    for (const auto& [key, value] : j.items())
        if (!known.contains(key)) extras[key] = value.dump();
}

json extras_to_json(const std::map<std::string, std::string>& extras, json j) {
    for (const auto& [key, value] : extras) j[key] = json::parse(value);
    return j;
}

Status check_context(const std::vector<std::string>& context) {
    if (std::find(context.begin(), context.end(), kDidContextV1) == context.end())
        return make_error(Errc::document_invalid,
                          "\"@context\" must include " + std::string(kDidContextV1));
    return {};
}

}  // namespace

bool is_known_verification_type(std::string_view type) {
    return type == kAosVerificationType || type == kBorromeanVerificationType;
}

std::string_view verification_type_for(SchemeKind scheme) {
    return scheme == SchemeKind::aos ? kAosVerificationType : kBorromeanVerificationType;
}

Status DidDocument::validate() const {
    if (auto st = check_context(context); !st.ok()) return st;
    if (!id.is_ring())
        return make_error(Errc::document_invalid, "document id must use the ring method");
    if (auto st = check_ring_idstring(id.id); !st.ok()) return st;

    if (authentication.size() != 1)
        return make_error(Errc::document_invalid,
                          "exactly one authentication method is required, got " +
                              std::to_string(authentication.size()));
    const auto& auth = authentication.front();
    if (!is_known_verification_type(auth.type))
        return make_error(Errc::unknown_verification_method,
                          "unknown verification method type \"" + auth.type + "\"");
    if (!auth.id.is_ring() || !auth.controller.is_ring())
        return make_error(Errc::document_invalid,
                          "authentication method id and controller must be ring DIDs");

    auto ring = extract_ring(*this);
    if (!ring.ok()) return ring.error();

    if (services.size() < 2)
        return make_error(Errc::ring_too_small, "a ring document needs at least 2 services");
    if (services.size() != ring.value().size())
        return make_error(Errc::correspondence_mismatch,
                          std::to_string(services.size()) + " services for a ring of " +
                              std::to_string(ring.value().size()) + " keys");

    std::set<std::string> fragments;
    for (const auto& service : services) {
        if (service.type != kLinkedDomains)
            return make_error(Errc::wrong_service_type,
                              "service type must be \"LinkedDomains\", got \"" + service.type +
                                  "\"");
        if (service.id.fragment.empty())
            return make_error(Errc::document_invalid, "service ids need a fragment");
        if (!fragments.insert(service.id.fragment).second)
            return make_error(Errc::document_invalid,
                              "duplicate service fragment #" + service.id.fragment);
    }
    return {};
}

Result<GroupElement> CredentialDocument::key() const {
    auto raw = base58_decode(public_key_base58);
    if (!raw.ok()) return std::move(raw).take_error();
    return GroupElement::decode_nonidentity(raw.value());
}

Status CredentialDocument::validate() const {
    if (auto st = check_context(context); !st.ok()) return st;
    if (auto k = key(); !k.ok()) return k.error();
    return {};
}

Result<DidDocument> create_ring_document(const Ring& ring, std::span<const Did> credential_dids,
                                         std::string_view identifier,
                                         std::string_view verification_type) {
    if (credential_dids.size() < 2)
        return make_error(Errc::ring_too_small, "a ring document needs at least 2 credentials");
    if (credential_dids.size() != ring.size())
        return make_error(Errc::correspondence_mismatch,
                          std::to_string(credential_dids.size()) + " credential DIDs for a ring of " +
                              std::to_string(ring.size()) + " keys");
    if (auto st = check_ring_idstring(identifier); !st.ok()) return st.error();
    if (!is_known_verification_type(verification_type))
        return make_error(Errc::unknown_verification_method,
                          "unknown verification method type \"" + std::string(verification_type) +
                              "\"");

    Did self{std::string(kRingMethod), std::string(identifier)};

    DidDocument doc;
    doc.context = {std::string(kDidContextV1)};
    doc.id = self;
    doc.authentication = {AuthenticationMethod{
        self,
        std::string(verification_type),
        self,  // controller defaults to the document itself
        base58_encode(ring.encoded()),
    }};
    for (std::size_t k = 0; k < credential_dids.size(); ++k) {
        const Did& cred = credential_dids[k];
        doc.services.push_back(ServiceEndpointEntry{
            DidUrl{cred, "cred-" + std::to_string(k + 1)},
            std::string(kLinkedDomains),
            cred,
        });
    }

    if (auto st = doc.validate(); !st.ok()) return st.error();
    return doc;
}

Result<DidDocument> make_ring_document(std::vector<std::pair<Did, GroupElement>> credentials,
                                       std::string_view identifier,
                                       std::string_view verification_type) {
    std::sort(credentials.begin(), credentials.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });

    std::vector<GroupElement> keys;
    std::vector<Did> dids;
    keys.reserve(credentials.size());
    dids.reserve(credentials.size());
    for (auto& [did, key] : credentials) {
        keys.push_back(key);
        dids.push_back(std::move(did));
    }

    auto ring = Ring::create(std::move(keys));
    if (!ring.ok()) return std::move(ring).take_error();
    return create_ring_document(ring.value(), dids, identifier, verification_type);
}

Result<std::string> serialize_document(const DidDocument& doc) {
    if (auto st = doc.validate(); !st.ok()) return st.error();

    json j;
    j["@context"] = doc.context;
    j["id"] = "did:" + doc.id.method + ":" + doc.id.id;
    j["authenticationMethod"] = json::array();
    for (const auto& auth : doc.authentication) {
        j["authenticationMethod"].push_back({
            {"id", "did:" + auth.id.method + ":" + auth.id.id},
            {"type", auth.type},
            {"controller", "did:" + auth.controller.method + ":" + auth.controller.id},
            {"publicKeyBase58", auth.public_key_base58},
        });
    }
    j["service"] = json::array();
    for (const auto& service : doc.services) {
        j["service"].push_back({
            {"id", format_did_url(service.id)},
            {"type", service.type},
            {"serviceEndpoint",
             "did:" + service.service_endpoint.method + ":" + service.service_endpoint.id},
        });
    }
    return extras_to_json(doc.extras, std::move(j)).dump(2) + "\n";
}

Result<DidDocument> parse_document(std::string_view text) {
    auto parsed = parse_json(text);
    if (!parsed.ok()) return std::move(parsed).take_error();
    const json& j = parsed.value();
    if (!j.is_object()) return make_error(Errc::malformed_json, "document must be a JSON object");

    DidDocument doc;

    auto context = context_field(j);
    if (!context.ok()) return std::move(context).take_error();
    doc.context = std::move(context).value();

    auto id = did_field(j, "id");
    if (!id.ok()) return std::move(id).take_error();
    doc.id = std::move(id).value();

    auto methods = require_field(j, "authenticationMethod", json::value_t::array, "an array");
    if (!methods.ok()) return std::move(methods).take_error();
    for (const auto& entry : *methods.value()) {
        if (!entry.is_object())
            return make_error(Errc::wrong_field_type,
                              "\"authenticationMethod\" entries must be objects");
        AuthenticationMethod auth;
        auto auth_id = did_field(entry, "id");
        if (!auth_id.ok()) return std::move(auth_id).take_error();
        auth.id = std::move(auth_id).value();

        auto type = require_field(entry, "type", json::value_t::string, "a string");
        if (!type.ok()) return std::move(type).take_error();
        auth.type = type.value()->get<std::string>();

        auto controller = did_field(entry, "controller");
        if (!controller.ok()) return std::move(controller).take_error();
        auth.controller = std::move(controller).value();

        auto ring_b58 = require_field(entry, "publicKeyBase58", json::value_t::string, "a string");
        if (!ring_b58.ok()) return std::move(ring_b58).take_error();
        auth.public_key_base58 = ring_b58.value()->get<std::string>();

        doc.authentication.push_back(std::move(auth));
    }

    auto services = require_field(j, "service", json::value_t::array, "an array");
    if (!services.ok()) return std::move(services).take_error();
    for (const auto& entry : *services.value()) {
        if (!entry.is_object())
            return make_error(Errc::wrong_field_type, "\"service\" entries must be objects");
        ServiceEndpointEntry service;

        auto sid = require_field(entry, "id", json::value_t::string, "a string");
        if (!sid.ok()) return std::move(sid).take_error();
        auto url = parse_did_url(sid.value()->get<std::string>());
        if (!url.ok()) return std::move(url).take_error();
        service.id = std::move(url).value();

        auto type = require_field(entry, "type", json::value_t::string, "a string");
        if (!type.ok()) return std::move(type).take_error();
        service.type = type.value()->get<std::string>();
        if (service.type != kLinkedDomains)
            return make_error(Errc::wrong_service_type,
                              "service type must be \"LinkedDomains\", got \"" + service.type +
                                  "\"");

        auto endpoint = did_field(entry, "serviceEndpoint");
        if (!endpoint.ok()) return std::move(endpoint).take_error();
        service.service_endpoint = std::move(endpoint).value();

        doc.services.push_back(std::move(service));
    }

    collect_extras(j, kRingDocumentFields, doc.extras);

    if (auto st = doc.validate(); !st.ok()) return st.error();
    return doc;
}

Result<Ring> extract_ring(const DidDocument& doc) {
    if (doc.authentication.size() != 1)
        return make_error(Errc::document_invalid,
                          "exactly one authentication method is required, got " +
                              std::to_string(doc.authentication.size()));
    auto raw = base58_decode(doc.authentication.front().public_key_base58);
    if (!raw.ok())
        return make_error(Errc::undecodable_ring,
                          "publicKeyBase58: " + std::move(raw).take_error().message);
    auto ring = Ring::from_concatenated(raw.value());
    if (!ring.ok()) {
        Error e = std::move(ring).take_error();
        if (e.code == Errc::ring_too_small) return e;
        return make_error(Errc::undecodable_ring, "publicKeyBase58: " + e.message);
    }
    return ring;
}

CredentialDocument create_credential_document(Did id, const GroupElement& pk) {
    CredentialDocument doc;
    doc.context = {std::string(kDidContextV1)};
    doc.id = std::move(id);
    doc.public_key_base58 = base58_encode(pk.bytes());
    return doc;
}

Result<std::string> serialize_credential(const CredentialDocument& doc) {
    if (auto st = doc.validate(); !st.ok()) return st.error();
    json j;
    j["@context"] = doc.context;
    j["id"] = "did:" + doc.id.method + ":" + doc.id.id;
    j["publicKeyBase58"] = doc.public_key_base58;
    return extras_to_json(doc.extras, std::move(j)).dump(2) + "\n";
}

Result<CredentialDocument> parse_credential(std::string_view text) {
    auto parsed = parse_json(text);
    if (!parsed.ok()) return std::move(parsed).take_error();
    const json& j = parsed.value();
    if (!j.is_object()) return make_error(Errc::malformed_json, "document must be a JSON object");

    CredentialDocument doc;
    auto context = context_field(j);
    if (!context.ok()) return std::move(context).take_error();
    doc.context = std::move(context).value();

    auto id = did_field(j, "id");
    if (!id.ok()) return std::move(id).take_error();
    doc.id = std::move(id).value();

    auto key = require_field(j, "publicKeyBase58", json::value_t::string, "a string");
    if (!key.ok()) return std::move(key).take_error();
    doc.public_key_base58 = key.value()->get<std::string>();

    collect_extras(j, kCredentialFields, doc.extras);

    if (auto st = doc.validate(); !st.ok()) return st.error();
    return doc;
}

}  // namespace ringdid
