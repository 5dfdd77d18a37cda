#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "ringdid/base58.hpp"
#include "ringdid/keyfile.hpp"
#include "support/helpers.hpp"

using namespace ringdid;

TEST_CASE("key files round-trip through text and disk") {
    SeededEntropy entropy(21);
    KeyPair kp = gen_keypair(entropy).value();

    std::string full = keyfile_text(kp, true);
    auto parsed = parse_keyfile(full);
    REQUIRE(parsed.ok());
    CHECK(parsed.value().pk == kp.pk);
    REQUIRE(parsed.value().sk.has_value());
    CHECK(*parsed.value().sk == kp.sk);

    std::string public_only = keyfile_text(kp, false);
    auto pub = parse_keyfile(public_only);
    REQUIRE(pub.ok());
    CHECK_FALSE(pub.value().sk.has_value());

    auto dir = std::filesystem::temp_directory_path() / "ringdid-keyfile-test";
    std::filesystem::create_directories(dir);
    auto path = dir / "k.key";
    REQUIRE(write_keyfile(path, kp, true).ok());
    auto read_back = read_keyfile(path);
    REQUIRE(read_back.ok());
    CHECK(read_back.value().pk == kp.pk);
    std::filesystem::remove_all(dir);
}

TEST_CASE("mismatched key pairs are refused") {
    SeededEntropy entropy(22);
    KeyPair a = gen_keypair(entropy).value();
    KeyPair b = gen_keypair(entropy).value();

    std::string text = "pk: " + base58_encode(a.pk.bytes()) + "\nsk: " +
                       base58_encode(b.sk.bytes()) + "\n";
    auto parsed = parse_keyfile(text);
    REQUIRE_FALSE(parsed.ok());
    CHECK(parsed.code() == Errc::key_mismatch);
}

TEST_CASE("malformed key files get specific errors") {
    CHECK(parse_keyfile("").code() == Errc::missing_field);
    CHECK(parse_keyfile("pk: 0OIl\n").code() == Errc::invalid_base58_character);
    CHECK(parse_keyfile("nonsense line\n").code() == Errc::wrong_field_type);

    Bytes identity(32, 0);
    std::string id_key = "pk: " + base58_encode(identity) + "\n";
    CHECK(parse_keyfile(id_key).code() == Errc::identity_forbidden);

    CHECK(read_keyfile("/nonexistent/path/k.key").code() == Errc::io_error);
}
