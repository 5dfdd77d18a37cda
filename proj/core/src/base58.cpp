#include "ringdid/base58.hpp"

#include <algorithm>
#include <array>

namespace ringdid {

const char kBase58Alphabet[59] = "123456789ABCDEFGHJKLMNPQRSTUVWXYZabcdefghijkmnopqrstuvwxyz";

namespace {

std::array<signed char, 256> build_reverse_table() {
    std::array<signed char, 256> table;
    table.fill(-1);
    for (int i = 0; i < 58; ++i)
        table[static_cast<unsigned char>(kBase58Alphabet[i])] = static_cast<signed char>(i);
    return table;
}

const std::array<signed char, 256> kReverse = build_reverse_table();

}  // namespace

bool is_base58_char(char c) { return kReverse[static_cast<unsigned char>(c)] >= 0; }

std::string base58_encode(BytesView data) {
    std::size_t zeros = 0;
    while (zeros < data.size() && data[zeros] == 0) ++zeros;

    // repeated long division of the big-endian integer by 58
    Bytes digits;  // base58 digits, least significant first
    Bytes num(data.begin() + zeros, data.end());
    while (!num.empty()) {
        unsigned rem = 0;
        Bytes quotient;
        quotient.reserve(num.size());
        for (unsigned char byte : num) {
            unsigned acc = rem * 256 + byte;
            unsigned char q = static_cast<unsigned char>(acc / 58);
            rem = acc % 58;
            if (!quotient.empty() || q != 0) quotient.push_back(q);
        }
        digits.push_back(static_cast<unsigned char>(rem));
        num = std::move(quotient);
    }

    std::string out(zeros, '1');
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) out.push_back(kBase58Alphabet[*it]);
    return out;
}

Result<Bytes> base58_decode(std::string_view text) {
    std::size_t ones = 0;
    while (ones < text.size() && text[ones] == '1') ++ones;

    Bytes num;  // big-endian accumulator
    for (std::size_t pos = 0; pos < text.size(); ++pos) {
        signed char digit = kReverse[static_cast<unsigned char>(text[pos])];
        if (digit < 0)
            return make_error(Errc::invalid_base58_character,
                              std::string("'") + text[pos] + "' is not in the base58 alphabet",
                              pos);
        if (pos < ones) continue;  // leading '1's handled as zero bytes below
        unsigned carry = static_cast<unsigned>(digit);
        for (auto it = num.rbegin(); it != num.rend(); ++it) {
            unsigned acc = static_cast<unsigned>(*it) * 58 + carry;
            *it = static_cast<unsigned char>(acc & 0xff);
            carry = acc >> 8;
        }
        while (carry != 0) {
            num.insert(num.begin(), static_cast<unsigned char>(carry & 0xff));
            carry >>= 8;
        }
    }

    Bytes out(ones, 0);
    append(out, num);
    return out;
}

}  // namespace ringdid
