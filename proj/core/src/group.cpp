#include "ringdid/group.hpp"

#include <sodium.h>

#include <cassert>
#include <cstring>
#include <mutex>
#include <stdexcept>

namespace ringdid {

namespace {

void ensure_sodium() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (sodium_init() < 0) throw std::runtime_error("sodium_init failed");
    });
}

// Group order q = 2^252 + 27742317777372353535851937790883648493, little-endian.
constexpr std::array<unsigned char, kScalarBytes> kOrderLe = {
    0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
    0xa2, 0xde, 0xf9, 0xde, 0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
    0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x10,
};

bool is_canonical_scalar(BytesView b) {
    // little-endian compare against q, most significant byte first
    for (std::size_t i = kScalarBytes; i-- > 0;) {
        if (b[i] < kOrderLe[i]) return true;
        if (b[i] > kOrderLe[i]) return false;
    }
    return false;  // equal to q
}

}  // namespace

std::string to_hex(BytesView b) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(b.size() * 2);
    for (unsigned char c : b) {
        out.push_back(digits[c >> 4]);
        out.push_back(digits[c & 0xf]);
    }
    return out;
}

Bytes from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    assert(hex.size() % 2 == 0);
    Bytes out;
    out.reserve(hex.size() / 2);
    for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
        int hi = nibble(hex[i]), lo = nibble(hex[i + 1]);
        assert(hi >= 0 && lo >= 0);
        out.push_back(static_cast<unsigned char>((hi << 4) | lo));
    }
    return out;
}

const char* errc_name(Errc code) {
    switch (code) {
        case Errc::entropy_exhausted: return "entropy_exhausted";
        case Errc::wrong_length: return "wrong_length";
        case Errc::invalid_scalar_encoding: return "invalid_scalar_encoding";
        case Errc::invalid_element_encoding: return "invalid_element_encoding";
        case Errc::identity_forbidden: return "identity_forbidden";
        case Errc::key_mismatch: return "key_mismatch";
        case Errc::ring_too_small: return "ring_too_small";
        case Errc::duplicate_key: return "duplicate_key";
        case Errc::signer_binding: return "signer_binding";
        case Errc::malformed_signature: return "malformed_signature";
        case Errc::layout_mismatch: return "layout_mismatch";
        case Errc::invalid_base58_character: return "invalid_base58_character";
        case Errc::bad_prefix: return "bad_prefix";
        case Errc::lowercase_violation: return "lowercase_violation";
        case Errc::bad_method_character: return "bad_method_character";
        case Errc::bad_id_length: return "bad_id_length";
        case Errc::bad_id_character: return "bad_id_character";
        case Errc::empty_id: return "empty_id";
        case Errc::not_in_ring: return "not_in_ring";
        case Errc::randomness_too_short: return "randomness_too_short";
        case Errc::degenerate_identifier: return "degenerate_identifier";
        case Errc::malformed_json: return "malformed_json";
        case Errc::missing_field: return "missing_field";
        case Errc::wrong_field_type: return "wrong_field_type";
        case Errc::wrong_service_type: return "wrong_service_type";
        case Errc::undecodable_ring: return "undecodable_ring";
        case Errc::correspondence_mismatch: return "correspondence_mismatch";
        case Errc::document_invalid: return "document_invalid";
        case Errc::unknown_verification_method: return "unknown_verification_method";
        case Errc::not_found: return "not_found";
        case Errc::revoked: return "revoked";
        case Errc::already_revoked: return "already_revoked";
        case Errc::conflict: return "conflict";
        case Errc::unresolvable_ring: return "unresolvable_ring";
        case Errc::integrity_mismatch: return "integrity_mismatch";
        case Errc::unauthorized: return "unauthorized";
        case Errc::operation_not_permitted: return "operation_not_permitted";
        case Errc::io_error: return "io_error";
        case Errc::no_membership: return "no_membership";
        case Errc::replay: return "replay";
        case Errc::resolution_failed: return "resolution_failed";
        case Errc::bad_config: return "bad_config";
    }
    return "unknown";
}

std::string Error::describe() const {
    std::string out = errc_name(code);
    out += ": ";
    out += message;
    if (position) {
        out += " (at offset ";
        out += std::to_string(*position);
        out += ")";
    }
    return out;
}

// --- entropy ---------------------------------------------------------------

bool SystemEntropy::fill(std::span<unsigned char> dest) {
    ensure_sodium();
    randombytes_buf(dest.data(), dest.size());
    return true;
}

SeededEntropy::SeededEntropy(std::uint64_t seed) {
    ensure_sodium();
    Bytes material;
    append(material, as_bytes("ringdid.seed.v1"));
    append_u64le(material, seed);
    auto digest = sha512_raw(material);
    std::memcpy(key_.data(), digest.data(), key_.size());
}

SeededEntropy::SeededEntropy(const std::array<unsigned char, 32>& key) : key_(key) {
    ensure_sodium();
}

bool SeededEntropy::fill(std::span<unsigned char> dest) {
    for (unsigned char& byte : dest) {
        if (used_ == block_.size()) {
            unsigned char nonce[crypto_stream_chacha20_NONCEBYTES] = {};
            for (int i = 0; i < 8; ++i)
                nonce[i] = static_cast<unsigned char>((next_block_ >> (8 * i)) & 0xff);
            crypto_stream_chacha20(block_.data(), block_.size(), nonce, key_.data());
            ++next_block_;
            used_ = 0;
        }
        byte = block_[used_++];
    }
    return true;
}

// --- scalars ---------------------------------------------------------------

Scalar Scalar::one() { return from_u64(1); }

Scalar Scalar::from_u64(std::uint64_t v) {
    Scalar s;
    for (int i = 0; i < 8; ++i)
        s.repr_[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    return s;
}

Result<Scalar> Scalar::from_bytes(BytesView b) {
    if (b.size() != kScalarBytes)
        return make_error(Errc::wrong_length,
                          "scalar encoding must be 32 bytes, got " + std::to_string(b.size()));
    if (!is_canonical_scalar(b))
        return make_error(Errc::invalid_scalar_encoding, "scalar not canonically reduced");
    Scalar s;
    std::memcpy(s.repr_.data(), b.data(), kScalarBytes);
    return s;
}

Scalar Scalar::reduce_wide(BytesView wide64) {
    ensure_sodium();
    assert(wide64.size() == 64);
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.repr_.data(), wide64.data());
    return s;
}

Result<Scalar> Scalar::random(Entropy& entropy) {
    std::array<unsigned char, 64> wide;
    if (!entropy.fill(wide))
        return make_error(Errc::entropy_exhausted, "entropy source exhausted drawing a scalar");
    return reduce_wide(wide);
}

Result<Scalar> Scalar::random_nonzero(Entropy& entropy) {
    // zero comes up with probability ~2^-252; the loop is for correctness only
    for (int attempt = 0; attempt < 128; ++attempt) {
        auto s = random(entropy);
        if (!s.ok()) return s;
        if (!s.value().is_zero()) return s;
    }
    return make_error(Errc::entropy_exhausted, "entropy source kept producing zero scalars");
}

Scalar Scalar::add(const Scalar& other) const {
    ensure_sodium();
    Scalar out;
    crypto_core_ristretto255_scalar_add(out.repr_.data(), repr_.data(), other.repr_.data());
    return out;
}

Scalar Scalar::sub(const Scalar& other) const {
    ensure_sodium();
    Scalar out;
    crypto_core_ristretto255_scalar_sub(out.repr_.data(), repr_.data(), other.repr_.data());
    return out;
}

Scalar Scalar::mul(const Scalar& other) const {
    ensure_sodium();
    Scalar out;
    crypto_core_ristretto255_scalar_mul(out.repr_.data(), repr_.data(), other.repr_.data());
    return out;
}

Scalar Scalar::negate() const {
    ensure_sodium();
    Scalar out;
    crypto_core_ristretto255_scalar_negate(out.repr_.data(), repr_.data());
    return out;
}

bool Scalar::is_zero() const {
    unsigned char acc = 0;
    for (unsigned char c : repr_) acc |= c;
    return acc == 0;
}

const std::array<unsigned char, kScalarBytes>& Scalar::order_bytes() { return kOrderLe; }

// --- group elements --------------------------------------------------------

GroupElement GroupElement::identity() { return GroupElement(); }

GroupElement GroupElement::generator() { return base_mul(Scalar::one()); }

Result<GroupElement> GroupElement::decode(BytesView b) {
    ensure_sodium();
    if (b.size() != kElementBytes)
        return make_error(Errc::wrong_length,
                          "element encoding must be 32 bytes, got " + std::to_string(b.size()));
    GroupElement e;
    std::memcpy(e.repr_.data(), b.data(), kElementBytes);
    if (crypto_core_ristretto255_is_valid_point(e.repr_.data()) != 1)
        return make_error(Errc::invalid_element_encoding,
                          "bytes are not a canonical group element encoding");
    return e;
}

Result<GroupElement> GroupElement::decode_nonidentity(BytesView b) {
    auto e = decode(b);
    if (!e.ok()) return e;
    if (e.value().is_identity())
        return make_error(Errc::identity_forbidden, "the identity element is not a valid key");
    return e;
}

GroupElement GroupElement::base_mul(const Scalar& e) {
    ensure_sodium();
    GroupElement out;
    if (e.is_zero()) return out;
    if (crypto_scalarmult_ristretto255_base(out.repr_.data(), e.bytes().data()) != 0)
        out = GroupElement();  // only reachable for a zero exponent
    return out;
}

GroupElement GroupElement::mul(const Scalar& e) const {
    ensure_sodium();
    GroupElement out;
    if (e.is_zero() || is_identity()) return out;
    if (crypto_scalarmult_ristretto255(out.repr_.data(), e.bytes().data(), repr_.data()) != 0)
        out = GroupElement();  // result was the identity
    return out;
}

GroupElement GroupElement::add(const GroupElement& other) const {
    ensure_sodium();
    GroupElement out;
    if (crypto_core_ristretto255_add(out.repr_.data(), repr_.data(), other.repr_.data()) != 0)
        throw std::logic_error("group add on malformed element");
    return out;
}

GroupElement GroupElement::sub(const GroupElement& other) const {
    ensure_sodium();
    GroupElement out;
    if (crypto_core_ristretto255_sub(out.repr_.data(), repr_.data(), other.repr_.data()) != 0)
        throw std::logic_error("group sub on malformed element");
    return out;
}

bool GroupElement::is_identity() const {
    unsigned char acc = 0;
    for (unsigned char c : repr_) acc |= c;
    return acc == 0;
}

// --- key generation and hashing ---------------------------------------------

Result<KeyPair> gen_keypair(Entropy& entropy) {
    auto sk = Scalar::random_nonzero(entropy);
    if (!sk.ok()) return std::move(sk).take_error();
    return KeyPair{sk.value(), GroupElement::base_mul(sk.value())};
}

GroupElement commit(const Scalar& r) { return GroupElement::base_mul(r); }

namespace {

// tag and every input are length-prefixed, so distinct input splits can never
// collide on the same digest stream
Bytes frame(std::string_view domain_tag, std::span<const BytesView> inputs) {
    assert(!domain_tag.empty());
    Bytes framed;
    append_u64le(framed, domain_tag.size());
    append(framed, as_bytes(domain_tag));
    for (BytesView input : inputs) {
        append_u64le(framed, input.size());
        append(framed, input);
    }
    return framed;
}

}  // namespace

std::array<unsigned char, 64> sha512_raw(BytesView data) {
    ensure_sodium();
    std::array<unsigned char, 64> digest;
    crypto_hash_sha512(digest.data(), data.data(), data.size());
    return digest;
}

std::array<unsigned char, 64> tagged_hash512(std::string_view domain_tag,
                                             std::span<const BytesView> inputs) {
    return sha512_raw(frame(domain_tag, inputs));
}

std::array<unsigned char, 64> tagged_hash512(std::string_view domain_tag,
                                             std::initializer_list<BytesView> inputs) {
    return tagged_hash512(domain_tag, std::span<const BytesView>(inputs.begin(), inputs.size()));
}

std::array<unsigned char, 32> tagged_hash256(std::string_view domain_tag,
                                             std::span<const BytesView> inputs) {
    ensure_sodium();
    Bytes framed = frame(domain_tag, inputs);
    std::array<unsigned char, 32> digest;
    crypto_hash_sha256(digest.data(), framed.data(), framed.size());
    return digest;
}

Scalar hash_to_scalar(std::string_view domain_tag, std::span<const BytesView> inputs) {
    return Scalar::reduce_wide(tagged_hash512(domain_tag, inputs));
}

Scalar hash_to_scalar(std::string_view domain_tag, std::initializer_list<BytesView> inputs) {
    return hash_to_scalar(domain_tag, std::span<const BytesView>(inputs.begin(), inputs.size()));
}

}  // namespace ringdid
