#pragma once

// Shared fixtures for the test suites.

#include <vector>

#include "ringdid/group.hpp"
#include "ringdid/ring.hpp"

namespace testing {

/// Entropy that dries up after a byte budget; for exercising randomness
/// failure paths.
class BoundedEntropy final : public ringdid::Entropy {
public:
    BoundedEntropy(std::uint64_t seed, std::size_t budget_bytes)
        : inner_(seed), remaining_(budget_bytes) {}

    bool fill(std::span<unsigned char> dest) override {
        if (dest.size() > remaining_) return false;
        remaining_ -= dest.size();
        return inner_.fill(dest);
    }

private:
    ringdid::SeededEntropy inner_;
    std::size_t remaining_;
};

inline std::vector<ringdid::KeyPair> make_keypairs(std::size_t n, ringdid::Entropy& entropy) {
    std::vector<ringdid::KeyPair> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(ringdid::gen_keypair(entropy).value());
    return out;
}

inline ringdid::Ring make_ring(const std::vector<ringdid::KeyPair>& keypairs) {
    std::vector<ringdid::GroupElement> keys;
    keys.reserve(keypairs.size());
    for (const auto& kp : keypairs) keys.push_back(kp.pk);
    return ringdid::Ring::create(std::move(keys)).value();
}

inline ringdid::SignerPosition position_of(const ringdid::KeyPair& kp, const ringdid::Ring& ring) {
    return ringdid::SignerPosition{ring.index_of(kp.pk).value(), kp.sk};
}

inline ringdid::Bytes random_bytes(std::size_t n, ringdid::Entropy& entropy) {
    ringdid::Bytes out(n);
    entropy.fill(out);
    return out;
}

}  // namespace testing
