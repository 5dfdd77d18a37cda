#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <set>

namespace oracle {

BigInt from_le(ringdid::BytesView bytes) {
    BigInt value = 0;
    for (std::size_t i = bytes.size(); i-- > 0;) {
        value <<= 8;
        value += bytes[i];
    }
    return value;
}

ringdid::Bytes to_le32(BigInt value) {
    ringdid::Bytes out(32, 0);
    for (std::size_t i = 0; i < 32; ++i) {
        out[i] = static_cast<unsigned char>(value & 0xff);
        value >>= 8;
    }
    return out;
}

namespace {
constexpr std::string_view kAlphabet = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";
}

std::string base58_encode(ringdid::BytesView data) {
    std::size_t zeros = 0;
    while (zeros < data.size() && data[zeros] == 0) ++zeros;

    BigInt value = 0;
    for (unsigned char byte : data) value = value * 256 + byte;

    std::string digits;
    while (value > 0) {
        digits.push_back(kAlphabet[static_cast<unsigned>(value % 58)]);
        value /= 58;
    }
    std::reverse(digits.begin(), digits.end());
    return std::string(zeros, '1') + digits;
}

std::optional<ringdid::Bytes> base58_decode(std::string_view text) {
    std::size_t ones = 0;
    while (ones < text.size() && text[ones] == '1') ++ones;

    BigInt value = 0;
    for (char c : text) {
        std::size_t digit = kAlphabet.find(c);
        if (digit == std::string_view::npos) return std::nullopt;
        value = value * 58 + static_cast<unsigned>(digit);
    }

    ringdid::Bytes big_endian;
    while (value > 0) {
        big_endian.push_back(static_cast<unsigned char>(value & 0xff));
        value >>= 8;
    }
    std::reverse(big_endian.begin(), big_endian.end());

    ringdid::Bytes out(ones, 0);
    out.insert(out.end(), big_endian.begin(), big_endian.end());
    return out;
}

bool matches_ring_did_grammar(std::string_view text) {
    constexpr std::string_view prefix = "did:ring:";
    if (text.size() < prefix.size() || text.substr(0, prefix.size()) != prefix) return false;
    std::string_view id = text.substr(prefix.size());
    if (id.size() < 40 || id.size() > 48) return false;
    static const std::set<char> allowed(kAlphabet.begin(), kAlphabet.end());
    return std::all_of(id.begin(), id.end(), [](char c) { return allowed.contains(c); });
}

double byte_frequency_classifier_accuracy(
    const std::vector<std::vector<ringdid::Bytes>>& per_signer_samples, double train_fraction) {
    const std::size_t signers = per_signer_samples.size();

    auto histogram = [](const ringdid::Bytes& sample) {
        std::array<double, 256> h{};
        for (unsigned char byte : sample) h[byte] += 1.0;
        if (!sample.empty())
            for (double& v : h) v /= static_cast<double>(sample.size());
        return h;
    };

    std::vector<std::array<double, 256>> centroids(signers, std::array<double, 256>{});
    std::vector<std::size_t> split(signers);
    for (std::size_t s = 0; s < signers; ++s) {
        split[s] = static_cast<std::size_t>(
            std::floor(static_cast<double>(per_signer_samples[s].size()) * train_fraction));
        for (std::size_t i = 0; i < split[s]; ++i) {
            auto h = histogram(per_signer_samples[s][i]);
            for (int b = 0; b < 256; ++b) centroids[s][b] += h[b];
        }
        if (split[s] > 0)
            for (double& v : centroids[s]) v /= static_cast<double>(split[s]);
    }

    std::size_t correct = 0, total = 0;
    for (std::size_t s = 0; s < signers; ++s) {
        for (std::size_t i = split[s]; i < per_signer_samples[s].size(); ++i) {
            auto h = histogram(per_signer_samples[s][i]);
            double best = 0;
            std::size_t best_signer = 0;
            for (std::size_t c = 0; c < signers; ++c) {
                double dist = 0;
                for (int b = 0; b < 256; ++b) {
                    double d = h[b] - centroids[c][b];
                    dist += d * d;
                }
                if (c == 0 || dist < best) {
                    best = dist;
                    best_signer = c;
                }
            }
            correct += best_signer == s ? 1 : 0;
            total += 1;
        }
    }
    return total > 0 ? static_cast<double>(correct) / static_cast<double>(total) : 0.0;
}

}  // namespace oracle
