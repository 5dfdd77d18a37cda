#include "ringdid/ring.hpp"

#include <algorithm>

namespace ringdid {

Result<Ring> Ring::create(std::vector<GroupElement> keys) {
    if (keys.size() < 2)
        return make_error(Errc::ring_too_small,
                          "a ring needs at least 2 keys, got " + std::to_string(keys.size()));
    for (const auto& key : keys)
        if (key.is_identity())
            return make_error(Errc::identity_forbidden, "the identity element is not a valid key");

    std::sort(keys.begin(), keys.end());
    auto dup = std::adjacent_find(keys.begin(), keys.end());
    if (dup != keys.end())
        return make_error(Errc::duplicate_key, "ring keys must be unique");

    Ring ring;
    ring.keys_ = std::move(keys);
    return ring;
}

Result<Ring> Ring::from_concatenated(BytesView data) {
    if (data.size() % kElementBytes != 0)
        return make_error(Errc::wrong_length,
                          "ring encoding length " + std::to_string(data.size()) +
                              " is not a multiple of " + std::to_string(kElementBytes));
    std::vector<GroupElement> keys;
    keys.reserve(data.size() / kElementBytes);
    for (std::size_t off = 0; off < data.size(); off += kElementBytes) {
        auto key = GroupElement::decode_nonidentity(data.subspan(off, kElementBytes));
        if (!key.ok()) return std::move(key).take_error();
        keys.push_back(key.value());
    }
    return create(std::move(keys));
}

std::optional<std::size_t> Ring::index_of(const GroupElement& pk) const {
    auto it = std::lower_bound(keys_.begin(), keys_.end(), pk);
    if (it != keys_.end() && *it == pk) return static_cast<std::size_t>(it - keys_.begin());
    return std::nullopt;
}

Bytes Ring::encoded() const {
    Bytes out;
    out.reserve(keys_.size() * kElementBytes);
    for (const auto& key : keys_) append(out, key.bytes());
    return out;
}

}  // namespace ringdid
