#include "ringdid/ring_signature.hpp"

#include <limits>

namespace ringdid {

namespace {

constexpr std::string_view kTagAosChallenge = "ringdid.aos.challenge.v1";
constexpr std::string_view kTagBorromeanDigest = "ringdid.borromean.digest.v1";
constexpr std::string_view kTagBorromeanChallenge = "ringdid.borromean.challenge.v1";
constexpr std::string_view kTagBorromeanBase = "ringdid.borromean.e0.v1";

// e_{i+1} = H(ring, m, c_i); binding the ring keeps a signature from being
// replayed against a different key set
Scalar aos_challenge(BytesView ring_bytes, BytesView message, const GroupElement& commitment) {
    return hash_to_scalar(kTagAosChallenge, {ring_bytes, message, commitment.bytes()});
}

// c = g^z * pk^e, the verifier's reconstruction of a commitment
GroupElement reconstruct(const Scalar& z, const GroupElement& pk, const Scalar& e) {
    return GroupElement::base_mul(z).add(pk.mul(e));
}

Status check_signer(const SignerPosition& signer, const Ring& ring) {
    if (signer.index >= ring.size())
        return make_error(Errc::signer_binding,
                          "signer index " + std::to_string(signer.index) +
                              " out of range for ring of " + std::to_string(ring.size()));
    if (!(GroupElement::base_mul(signer.secret) == ring[signer.index]))
        return make_error(Errc::signer_binding,
                          "secret key does not match the ring key at the signer index");
    return {};
}

// shared message digest binding m and every sub-ring
std::array<unsigned char, 64> borromean_digest(std::span<const Ring> rings, BytesView message) {
    std::vector<Bytes> ring_bytes;
    ring_bytes.reserve(rings.size());
    std::vector<BytesView> inputs;
    inputs.reserve(rings.size() + 1);
    inputs.push_back(message);
    for (const Ring& ring : rings) {
        ring_bytes.push_back(ring.encoded());
        inputs.emplace_back(ring_bytes.back());
    }
    return tagged_hash512(kTagBorromeanDigest, inputs);
}

Scalar borromean_challenge(BytesView digest, const GroupElement& commitment, std::uint32_t ring_index,
                           std::uint32_t position) {
    Bytes indices;
    append_u32be(indices, ring_index);
    append_u32be(indices, position);
    return hash_to_scalar(kTagBorromeanChallenge, {digest, commitment.bytes(), BytesView(indices)});
}

Scalar borromean_ring_entry(BytesView digest, const Scalar& e0, std::uint32_t ring_index) {
    Bytes index;
    append_u32be(index, ring_index);
    return hash_to_scalar(kTagBorromeanChallenge, {digest, e0.bytes(), BytesView(index)});
}

Scalar borromean_base(BytesView digest, std::span<const GroupElement> finals) {
    std::vector<BytesView> inputs;
    inputs.reserve(finals.size() + 1);
    inputs.push_back(digest);
    for (const GroupElement& c : finals) inputs.push_back(c.bytes());
    return hash_to_scalar(kTagBorromeanBase, inputs);
}

}  // namespace

const char* scheme_name(SchemeKind scheme) {
    return scheme == SchemeKind::aos ? "aos" : "borromean";
}

Result<SchemeKind> parse_scheme(std::string_view name) {
    if (name == "aos") return SchemeKind::aos;
    if (name == "borromean") return SchemeKind::borromean;
    return make_error(Errc::bad_config, "unknown scheme '" + std::string(name) + "'");
}

std::vector<std::size_t> BorromeanSignature::sub_ring_layout() const {
    std::vector<std::size_t> layout;
    layout.reserve(responses.size());
    for (const auto& sub : responses) layout.push_back(sub.size());
    return layout;
}

// --- AOS ---------------------------------------------------------------------

Result<AosSignature> aos_sign(const SignerPosition& signer, BytesView message, const Ring& ring,
                              Entropy& entropy) {
    if (auto st = check_signer(signer, ring); !st.ok()) return st.error();

    const std::size_t n = ring.size();
    const std::size_t s = signer.index;
    const Bytes ring_bytes = ring.encoded();

    auto nonce = Scalar::random_nonzero(entropy);
    if (!nonce.ok()) return std::move(nonce).take_error();

    std::vector<Scalar> challenges(n);
    std::vector<Scalar> responses(n);

    // commit at the signer's slot and walk the ring forward from there
    challenges[(s + 1) % n] = aos_challenge(ring_bytes, message, commit(nonce.value()));
    for (std::size_t step = 1; step < n; ++step) {
        std::size_t i = (s + step) % n;
        auto z = Scalar::random(entropy);
        if (!z.ok()) return std::move(z).take_error();
        responses[i] = z.value();
        GroupElement c = reconstruct(responses[i], ring[i], challenges[i]);
        challenges[(i + 1) % n] = aos_challenge(ring_bytes, message, c);
    }

    // close the loop: z_s = r - e_s * sk
    responses[s] = nonce.value().sub(challenges[s].mul(signer.secret));

    return AosSignature{challenges[0], std::move(responses)};
}

Result<Verdict> aos_verify(const Ring& ring, BytesView message, const AosSignature& sig) {
    if (sig.responses.size() != ring.size())
        return make_error(Errc::malformed_signature,
                          "signature carries " + std::to_string(sig.responses.size()) +
                              " responses for a ring of " + std::to_string(ring.size()));

    const Bytes ring_bytes = ring.encoded();
    Scalar e = sig.e1;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        GroupElement c = reconstruct(sig.responses[i], ring[i], e);
        e = aos_challenge(ring_bytes, message, c);
    }
    return e == sig.e1 ? Verdict::accept : Verdict::reject;
}

// --- Borromean ----------------------------------------------------------------

Result<BorromeanSignature> borromean_sign(std::span<const SignerPosition> signers,
                                          BytesView message, std::span<const Ring> rings,
                                          Entropy& entropy) {
    if (rings.empty())
        return make_error(Errc::layout_mismatch, "at least one sub-ring is required");
    if (signers.size() != rings.size())
        return make_error(Errc::layout_mismatch,
                          std::to_string(signers.size()) + " signers for " +
                              std::to_string(rings.size()) + " sub-rings");
    for (std::size_t i = 0; i < rings.size(); ++i)
        if (auto st = check_signer(signers[i], rings[i]); !st.ok()) return st.error();

    const auto digest = borromean_digest(rings, message);

    std::vector<Scalar> nonces(rings.size());
    std::vector<std::vector<Scalar>> responses(rings.size());
    std::vector<GroupElement> finals(rings.size());

    // first pass: from each signer's commitment forward to the sub-ring's end
    for (std::size_t i = 0; i < rings.size(); ++i) {
        const Ring& ring = rings[i];
        const std::size_t s = signers[i].index;
        responses[i].resize(ring.size());

        auto nonce = Scalar::random_nonzero(entropy);
        if (!nonce.ok()) return std::move(nonce).take_error();
        nonces[i] = nonce.value();

        GroupElement c = commit(nonces[i]);
        for (std::size_t j = s + 1; j < ring.size(); ++j) {
            Scalar e = borromean_challenge(digest, c, static_cast<std::uint32_t>(i),
                                           static_cast<std::uint32_t>(j));
            auto z = Scalar::random(entropy);
            if (!z.ok()) return std::move(z).take_error();
            responses[i][j] = z.value();
            c = reconstruct(responses[i][j], ring[j], e);
        }
        finals[i] = c;
    }

    Scalar e0 = borromean_base(digest, finals);

    // second pass: from the shared challenge forward to each signer's slot
    for (std::size_t i = 0; i < rings.size(); ++i) {
        const Ring& ring = rings[i];
        const std::size_t s = signers[i].index;

        Scalar e = borromean_ring_entry(digest, e0, static_cast<std::uint32_t>(i));
        for (std::size_t j = 0; j < s; ++j) {
            auto z = Scalar::random(entropy);
            if (!z.ok()) return std::move(z).take_error();
            responses[i][j] = z.value();
            GroupElement c = reconstruct(responses[i][j], ring[j], e);
            e = borromean_challenge(digest, c, static_cast<std::uint32_t>(i),
                                    static_cast<std::uint32_t>(j + 1));
        }
        responses[i][s] = nonces[i].sub(e.mul(signers[i].secret));
    }

    return BorromeanSignature{e0, std::move(responses)};
}

Result<Verdict> borromean_verify(std::span<const Ring> rings, BytesView message,
                                 const BorromeanSignature& sig) {
    if (rings.empty())
        return make_error(Errc::layout_mismatch, "at least one sub-ring is required");
    if (sig.responses.size() != rings.size())
        return make_error(Errc::malformed_signature,
                          "signature carries " + std::to_string(sig.responses.size()) +
                              " sub-rings, expected " + std::to_string(rings.size()));
    for (std::size_t i = 0; i < rings.size(); ++i)
        if (sig.responses[i].size() != rings[i].size())
            return make_error(Errc::malformed_signature,
                              "sub-ring " + std::to_string(i) + " carries " +
                                  std::to_string(sig.responses[i].size()) +
                                  " responses for a ring of " + std::to_string(rings[i].size()));

    const auto digest = borromean_digest(rings, message);

    std::vector<GroupElement> finals(rings.size());
    for (std::size_t i = 0; i < rings.size(); ++i) {
        const Ring& ring = rings[i];
        Scalar e = borromean_ring_entry(digest, sig.e0, static_cast<std::uint32_t>(i));
        GroupElement c = GroupElement::identity();
        for (std::size_t j = 0; j < ring.size(); ++j) {
            c = reconstruct(sig.responses[i][j], ring[j], e);
            if (j + 1 < ring.size())
                e = borromean_challenge(digest, c, static_cast<std::uint32_t>(i),
                                        static_cast<std::uint32_t>(j + 1));
        }
        finals[i] = c;
    }

    return borromean_base(digest, finals) == sig.e0 ? Verdict::accept : Verdict::reject;
}

// --- wire format ---------------------------------------------------------------

namespace {

void append_scalar(Bytes& out, const Scalar& s) { append(out, s.bytes()); }

Result<Scalar> read_scalar(BytesView wire, std::size_t& off) {
    if (off + kScalarBytes > wire.size())
        return make_error(Errc::malformed_signature, "signature truncated");
    auto s = Scalar::from_bytes(wire.subspan(off, kScalarBytes));
    if (!s.ok())
        return make_error(Errc::malformed_signature, "non-canonical scalar in signature");
    off += kScalarBytes;
    return s;
}

}  // namespace

Bytes encode_signature(const AosSignature& sig) {
    Bytes out;
    out.reserve(3 + kScalarBytes * (sig.responses.size() + 1));
    out.push_back(kWireAos);
    append_u16be(out, static_cast<std::uint16_t>(sig.responses.size()));
    append_scalar(out, sig.e1);
    for (const Scalar& z : sig.responses) append_scalar(out, z);
    return out;
}

Bytes encode_signature(const BorromeanSignature& sig) {
    Bytes out;
    if (sig.responses.size() == 1) {
        out.push_back(kWireBorromeanSingle);
        append_u16be(out, static_cast<std::uint16_t>(sig.responses[0].size()));
    } else {
        out.push_back(kWireBorromeanMulti);
        append_u16be(out, static_cast<std::uint16_t>(sig.responses.size()));
        for (const auto& sub : sig.responses)
            append_u16be(out, static_cast<std::uint16_t>(sub.size()));
    }
    append_scalar(out, sig.e0);
    for (const auto& sub : sig.responses)
        for (const Scalar& z : sub) append_scalar(out, z);
    return out;
}

Result<DecodedSignature> decode_signature(BytesView wire) {
    if (wire.size() < 3) return make_error(Errc::malformed_signature, "signature too short");
    const unsigned char version = wire[0];
    std::size_t off = 1;

    std::vector<std::size_t> layout;
    if (version == kWireAos || version == kWireBorromeanSingle) {
        layout.push_back(read_u16be(wire.subspan(off, 2)));
        off += 2;
    } else if (version == kWireBorromeanMulti) {
        std::size_t count = read_u16be(wire.subspan(off, 2));
        off += 2;
        if (count == 0)
            return make_error(Errc::malformed_signature, "zero sub-rings");
        if (off + 2 * count > wire.size())
            return make_error(Errc::malformed_signature, "signature truncated");
        for (std::size_t i = 0; i < count; ++i) {
            layout.push_back(read_u16be(wire.subspan(off, 2)));
            off += 2;
        }
    } else {
        return make_error(Errc::malformed_signature,
                          "unknown signature version byte " + std::to_string(version));
    }

    std::size_t total = 0;
    for (std::size_t size : layout) {
        if (size == 0) return make_error(Errc::malformed_signature, "empty sub-ring layout");
        total += size;
    }
    if (wire.size() != off + kScalarBytes * (total + 1))
        return make_error(Errc::malformed_signature,
                          "signature length does not match its layout");

    auto anchor = read_scalar(wire, off);
    if (!anchor.ok()) return std::move(anchor).take_error();

    DecodedSignature decoded;
    if (version == kWireAos) {
        decoded.scheme = SchemeKind::aos;
        decoded.aos.e1 = anchor.value();
        decoded.aos.responses.reserve(layout[0]);
        for (std::size_t i = 0; i < layout[0]; ++i) {
            auto z = read_scalar(wire, off);
            if (!z.ok()) return std::move(z).take_error();
            decoded.aos.responses.push_back(z.value());
        }
    } else {
        decoded.scheme = SchemeKind::borromean;
        decoded.borromean.e0 = anchor.value();
        for (std::size_t size : layout) {
            std::vector<Scalar> sub;
            sub.reserve(size);
            for (std::size_t i = 0; i < size; ++i) {
                auto z = read_scalar(wire, off);
                if (!z.ok()) return std::move(z).take_error();
                sub.push_back(z.value());
            }
            decoded.borromean.responses.push_back(std::move(sub));
        }
    }
    return decoded;
}

Result<Verdict> verify_wire(const Ring& ring, BytesView message, BytesView wire) {
    auto decoded = decode_signature(wire);
    if (!decoded.ok()) return std::move(decoded).take_error();
    if (decoded.value().scheme == SchemeKind::aos)
        return aos_verify(ring, message, decoded.value().aos);
    return borromean_verify({&ring, 1}, message, decoded.value().borromean);
}

}  // namespace ringdid
