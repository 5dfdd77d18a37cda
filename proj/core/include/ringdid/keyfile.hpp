#pragma once

#include <filesystem>
#include <optional>

#include "ringdid/group.hpp"

namespace ringdid {

/// Contents of a key file: field-tagged text, one key per file.
///   pk: <base58>
///   sk: <base58>   (absent in public-only files)
struct KeyFile {
    GroupElement pk;
    std::optional<Scalar> sk;
};

std::string keyfile_text(const KeyPair& kp, bool include_secret);

/// Parses and validates; when both lines are present the pair is checked to
/// satisfy pk = g^sk.
Result<KeyFile> parse_keyfile(std::string_view text);

Status write_keyfile(const std::filesystem::path& path, const KeyPair& kp, bool include_secret);
Result<KeyFile> read_keyfile(const std::filesystem::path& path);

}  // namespace ringdid
