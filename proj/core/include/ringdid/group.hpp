#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <string_view>

#include "ringdid/bytes.hpp"
#include "ringdid/result.hpp"

namespace ringdid {

inline constexpr std::size_t kScalarBytes = 32;
inline constexpr std::size_t kElementBytes = 32;

/// Minimum security parameter in bits. Key generation and identifier
/// randomness are sized off this floor.
inline constexpr unsigned kSecurityBits = 128;

/// Source of randomness, passed explicitly to every randomized operation so
/// callers control determinism. fill() returns false once the source is
/// exhausted (only bounded test sources ever are).
class Entropy {
public:
    virtual ~Entropy() = default;
    virtual bool fill(std::span<unsigned char> dest) = 0;
};

/// OS randomness; never exhausts.
class SystemEntropy final : public Entropy {
public:
    bool fill(std::span<unsigned char> dest) override;
};

/// Deterministic stream-cipher expansion of a seed. Two instances built from
/// the same seed produce identical byte streams.
class SeededEntropy final : public Entropy {
public:
    explicit SeededEntropy(std::uint64_t seed);
    explicit SeededEntropy(const std::array<unsigned char, 32>& key);

    bool fill(std::span<unsigned char> dest) override;

private:
    std::array<unsigned char, 32> key_;
    std::array<unsigned char, 64> block_{};
    std::uint64_t next_block_ = 0;
    std::size_t used_ = 64;  // forces a refill on first use
};

/// Integer modulo the group order q, canonically reduced at all times.
/// Byte encoding is 32 bytes little-endian.
class Scalar {
public:
    Scalar() : repr_{} {}

    static Scalar zero() { return Scalar(); }
    static Scalar one();
    static Scalar from_u64(std::uint64_t v);

    /// Rejects anything that is not exactly 32 bytes of a canonical value < q.
    static Result<Scalar> from_bytes(BytesView b);

    /// Uniform reduction of a 64-byte value modulo q.
    static Scalar reduce_wide(BytesView wide64);

    /// Uniform over [0, q).
    static Result<Scalar> random(Entropy& entropy);
    /// Uniform over [1, q); what secret keys are drawn from.
    static Result<Scalar> random_nonzero(Entropy& entropy);

    Scalar add(const Scalar& other) const;
    Scalar sub(const Scalar& other) const;
    Scalar mul(const Scalar& other) const;
    Scalar negate() const;

    bool is_zero() const;
    BytesView bytes() const { return repr_; }

    bool operator==(const Scalar& other) const { return repr_ == other.repr_; }

    /// Little-endian bytes of the group order q, for independent oracles.
    static const std::array<unsigned char, kScalarBytes>& order_bytes();

private:
    std::array<unsigned char, kScalarBytes> repr_;
};

/// Element of the fixed prime-order group, held in its canonical fixed-width
/// encoding. decode() validates group membership, so an instance always holds
/// a well-formed element; equality and ordering are byte order on encodings.
class GroupElement {
public:
    GroupElement() : repr_{} {}  // the identity

    static GroupElement identity();
    static GroupElement generator();

    /// Validates length and group membership. The identity is a legitimate
    /// element and decodes fine here; use decode_nonidentity for key material.
    static Result<GroupElement> decode(BytesView b);

    /// decode() plus rejection of the identity, which is never a valid
    /// public key.
    static Result<GroupElement> decode_nonidentity(BytesView b);

    /// g^e.
    static GroupElement base_mul(const Scalar& e);

    /// this^e (identity when e = 0).
    GroupElement mul(const Scalar& e) const;

    GroupElement add(const GroupElement& other) const;
    GroupElement sub(const GroupElement& other) const;

    bool is_identity() const;
    BytesView bytes() const { return repr_; }

    bool operator==(const GroupElement& other) const { return repr_ == other.repr_; }
    auto operator<=>(const GroupElement& other) const { return repr_ <=> other.repr_; }

private:
    std::array<unsigned char, kElementBytes> repr_;
};

struct KeyPair {
    Scalar sk;
    GroupElement pk;
};

/// Draws sk uniform over [1, q) and derives pk = g^sk.
Result<KeyPair> gen_keypair(Entropy& entropy);

/// Commitment c = g^r.
GroupElement commit(const Scalar& r);

/// Domain-separated hash onto the scalar field: SHA-512 over the tag and each
/// input, all length-prefixed, reduced modulo q. Distinct tags give
/// independent functions; the tag must be non-empty.
Scalar hash_to_scalar(std::string_view domain_tag, std::span<const BytesView> inputs);
Scalar hash_to_scalar(std::string_view domain_tag, std::initializer_list<BytesView> inputs);

/// Same length-prefixed serialization, full-width digests. Both output widths
/// are exposed; signature challenges reduce the 512-bit one.
std::array<unsigned char, 64> tagged_hash512(std::string_view domain_tag,
                                             std::span<const BytesView> inputs);
std::array<unsigned char, 64> tagged_hash512(std::string_view domain_tag,
                                             std::initializer_list<BytesView> inputs);
std::array<unsigned char, 32> tagged_hash256(std::string_view domain_tag,
                                             std::span<const BytesView> inputs);

/// Raw (untagged) SHA-512 of a plain concatenation. The DID identifier
/// generator hashes a fixed-width concatenation, so no framing is added here.
std::array<unsigned char, 64> sha512_raw(BytesView data);

}  // namespace ringdid
