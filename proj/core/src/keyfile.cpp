#include "ringdid/keyfile.hpp"

#include <fstream>
#include <sstream>

#include "ringdid/base58.hpp"

namespace ringdid {

std::string keyfile_text(const KeyPair& kp, bool include_secret) {
    std::string out = "pk: " + base58_encode(kp.pk.bytes()) + "\n";
    if (include_secret) out += "sk: " + base58_encode(kp.sk.bytes()) + "\n";
    return out;
}

Result<KeyFile> parse_keyfile(std::string_view text) {
    std::optional<GroupElement> pk;
    std::optional<Scalar> sk;

    std::istringstream lines{std::string(text)};
    std::string line;
    while (std::getline(lines, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::string_view view = line;
        if (view.rfind("pk: ", 0) == 0) {
            auto raw = base58_decode(view.substr(4));
            if (!raw.ok()) return std::move(raw).take_error();
            auto elem = GroupElement::decode_nonidentity(raw.value());
            if (!elem.ok()) return std::move(elem).take_error();
            pk = elem.value();
        } else if (view.rfind("sk: ", 0) == 0) {
            auto raw = base58_decode(view.substr(4));
            if (!raw.ok()) return std::move(raw).take_error();
            auto scalar = Scalar::from_bytes(raw.value());
            if (!scalar.ok()) return std::move(scalar).take_error();
            sk = scalar.value();
        } else {
            return make_error(Errc::wrong_field_type, "unrecognized key file line: " + line);
        }
    }

    if (!pk) return make_error(Errc::missing_field, "key file has no 'pk:' line");
    if (sk && !(GroupElement::base_mul(*sk) == *pk))
        return make_error(Errc::key_mismatch, "secret key does not derive the stored public key");
    return KeyFile{*pk, sk};
}

Status write_keyfile(const std::filesystem::path& path, const KeyPair& kp, bool include_secret) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) return make_error(Errc::io_error, "cannot open " + path.string() + " for writing");
    out << keyfile_text(kp, include_secret);
    out.flush();
    if (!out) return make_error(Errc::io_error, "failed writing " + path.string());
    return {};
}

Result<KeyFile> read_keyfile(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return make_error(Errc::io_error, "cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_keyfile(buffer.str());
}

}  // namespace ringdid
