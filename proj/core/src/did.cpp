#include "ringdid/did.hpp"

#include <cctype>

namespace ringdid {

namespace {

bool is_lower_alnum(char c) { return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'); }

// permissive set for methods this library does not own: letters, digits,
// '.', '-', '_' and ':' (nested namespaces)
bool is_generic_id_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_' ||
           c == ':';
}

bool is_fragment_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_';
}

Status check_method(std::string_view method, std::size_t base) {
    if (method.empty())
        return make_error(Errc::bad_method_character, "method name must not be empty", base);
    for (std::size_t i = 0; i < method.size(); ++i) {
        char c = method[i];
        if (c >= 'A' && c <= 'Z')
            return make_error(Errc::lowercase_violation, "method name must be lowercase",
                              base + i);
        if (!is_lower_alnum(c))
            return make_error(Errc::bad_method_character,
                              std::string("invalid method character '") + c + "'", base + i);
    }
    return {};
}

Status check_id(std::string_view method, std::string_view id, std::size_t base) {
    if (id.empty())
        return make_error(Errc::empty_id, "method-specific id must not be empty", base);
    if (method == kRingMethod) {
        if (id.size() < kRingIdMinLength || id.size() > kRingIdMaxLength)
            return make_error(Errc::bad_id_length,
                              "ring id must be 40-48 characters, got " + std::to_string(id.size()),
                              base);
        for (std::size_t i = 0; i < id.size(); ++i)
            if (!is_base58_char(id[i]))
                return make_error(Errc::bad_id_character,
                                  std::string("'") + id[i] + "' is not a base58 character",
                                  base + i);
        return {};
    }
    for (std::size_t i = 0; i < id.size(); ++i)
        if (!is_generic_id_char(id[i]))
            return make_error(Errc::bad_id_character,
                              std::string("invalid id character '") + id[i] + "'", base + i);
    return {};
}

}  // namespace

Status check_ring_idstring(std::string_view id) { return check_id(kRingMethod, id, 0); }

Result<Did> parse_did(std::string_view text) {
    constexpr std::string_view scheme = "did:";
    if (text.size() < scheme.size() || text.substr(0, scheme.size()) != scheme) {
        // distinguish a case-mangled scheme from garbage
        if (text.size() >= scheme.size()) {
            std::string_view head = text.substr(0, scheme.size());
            bool same_ignoring_case = true;
            for (std::size_t i = 0; i < scheme.size(); ++i)
                if (std::tolower(static_cast<unsigned char>(head[i])) != scheme[i])
                    same_ignoring_case = false;
            if (same_ignoring_case) {
                std::size_t pos = 0;
                while (pos < scheme.size() && head[pos] == scheme[pos]) ++pos;
                return make_error(Errc::lowercase_violation, "the did scheme must be lowercase",
                                  pos);
            }
        }
        return make_error(Errc::bad_prefix, "identifier must start with 'did:'", 0);
    }

    std::size_t method_start = scheme.size();
    std::size_t sep = text.find(':', method_start);
    if (sep == std::string_view::npos)
        return make_error(Errc::bad_prefix, "missing ':' between method and id", text.size());

    std::string_view method = text.substr(method_start, sep - method_start);
    std::string_view id = text.substr(sep + 1);

    if (auto st = check_method(method, method_start); !st.ok()) return st.error();
    if (auto st = check_id(method, id, sep + 1); !st.ok()) return st.error();

    return Did{std::string(method), std::string(id)};
}

Result<DidUrl> parse_did_url(std::string_view text) {
    std::size_t hash = text.find('#');
    if (hash == std::string_view::npos) {
        auto did = parse_did(text);
        if (!did.ok()) return std::move(did).take_error();
        return DidUrl{std::move(did).value(), ""};
    }
    auto did = parse_did(text.substr(0, hash));
    if (!did.ok()) return std::move(did).take_error();
    std::string_view fragment = text.substr(hash + 1);
    if (fragment.empty())
        return make_error(Errc::bad_id_character, "empty fragment", hash + 1);
    for (std::size_t i = 0; i < fragment.size(); ++i)
        if (!is_fragment_char(fragment[i]))
            return make_error(Errc::bad_id_character,
                              std::string("invalid fragment character '") + fragment[i] + "'",
                              hash + 1 + i);
    return DidUrl{std::move(did).value(), std::string(fragment)};
}

Result<std::string> format_did(const Did& did) {
    if (auto st = check_method(did.method, 0); !st.ok()) return st.error();
    if (auto st = check_id(did.method, did.id, 0); !st.ok()) return st.error();
    return "did:" + did.method + ":" + did.id;
}

std::string format_did_url(const DidUrl& url) {
    std::string out = "did:" + url.did.method + ":" + url.did.id;
    if (!url.fragment.empty()) {
        out += '#';
        out += url.fragment;
    }
    return out;
}

Result<std::string> generate_ring_identifier(const GroupElement& signer_pk, BytesView randomness,
                                             const Ring& ring) {
    if (randomness.size() < kIdentifierRandomMinBytes)
        return make_error(Errc::randomness_too_short,
                          "identifier randomness must be at least " +
                              std::to_string(kIdentifierRandomMinBytes) + " bytes, got " +
                              std::to_string(randomness.size()));
    if (!ring.index_of(signer_pk))
        return make_error(Errc::not_in_ring, "the signer key is not a member of the ring");

    Bytes preimage;
    preimage.reserve(kElementBytes * (ring.size() + 1) + randomness.size() + 4);
    append(preimage, signer_pk.bytes());
    append(preimage, randomness);
    append(preimage, as_bytes(kRingMethod));
    append(preimage, ring.encoded());

    auto digest = sha512_raw(preimage);
    std::string id = base58_encode(BytesView(digest.data(), 32));
    if (id.size() < kRingIdMinLength || id.size() > kRingIdMaxLength)
        return make_error(Errc::degenerate_identifier,
                          "identifier encoding fell outside the 40-48 character bounds");
    return id;
}

Result<std::string> new_ring_identifier(const GroupElement& signer_pk, const Ring& ring,
                                        Entropy& entropy) {
    for (int attempt = 0; attempt < 8; ++attempt) {
        std::array<unsigned char, kIdentifierRandomBytes> randomness;
        if (!entropy.fill(randomness))
            return make_error(Errc::entropy_exhausted,
                              "entropy source exhausted drawing identifier randomness");
        auto id = generate_ring_identifier(signer_pk, randomness, ring);
        if (id.ok() || id.code() != Errc::degenerate_identifier) return id;
    }
    return make_error(Errc::degenerate_identifier, "identifier generation kept degenerating");
}

}  // namespace ringdid
