// ringdid - command line surface for the did:ring toolkit.
//
// Exit codes, kept stable for scripting:
//    0  success
//    1  internal error
//    2  usage error
//    3  signature rejected
//    4  not found
//    5  revoked
//    6  conflict
//    7  unauthorized
//    8  validation error
//    9  resolution failure
//   10  replayed or stale challenge
//   11  I/O error
//   12  parse or codec error
//   13  randomness failure
//   14  operation not permitted

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "ringdid/base58.hpp"
#include "ringdid/bench.hpp"
#include "ringdid/document.hpp"
#include "ringdid/identification.hpp"
#include "ringdid/keyfile.hpp"
#include "ringdid/registry.hpp"
#include "ringdid/time_util.hpp"

using namespace ringdid;

namespace {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kRejected = 3,
    kNotFound = 4,
    kRevoked = 5,
    kConflict = 6,
    kUnauthorized = 7,
    kValidation = 8,
    kResolution = 9,
    kReplay = 10,
    kIo = 11,
    kCodec = 12,
    kRandomness = 13,
    kNotPermitted = 14,
};

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::entropy_exhausted:
            return kRandomness;
        case Errc::not_found:
            return kNotFound;
        case Errc::revoked:
        case Errc::already_revoked:
            return kRevoked;
        case Errc::conflict:
            return kConflict;
        case Errc::unauthorized:
            return kUnauthorized;
        case Errc::operation_not_permitted:
            return kNotPermitted;
        case Errc::unresolvable_ring:
        case Errc::integrity_mismatch:
        case Errc::resolution_failed:
            return kResolution;
        case Errc::replay:
            return kReplay;
        case Errc::io_error:
            return kIo;
        case Errc::invalid_base58_character:
        case Errc::bad_prefix:
        case Errc::lowercase_violation:
        case Errc::bad_method_character:
        case Errc::bad_id_length:
        case Errc::bad_id_character:
        case Errc::empty_id:
        case Errc::malformed_json:
        case Errc::missing_field:
        case Errc::wrong_field_type:
        case Errc::wrong_service_type:
        case Errc::undecodable_ring:
        case Errc::malformed_signature:
        case Errc::wrong_length:
        case Errc::invalid_scalar_encoding:
        case Errc::invalid_element_encoding:
            return kCodec;
        default:
            return kValidation;
    }
}

struct Fail {
    int code;
    std::string message;
};

[[noreturn]] void fail(const Error& error) {
    throw Fail{exit_code_for(error.code), error.describe()};
}

[[noreturn]] void fail_usage(const std::string& message) { throw Fail{kUsage, message}; }

template <typename T>
T unwrap(Result<T> result) {
    if (!result.ok()) fail(result.error());
    return std::move(result).value();
}

void unwrap_status(const Status& status) {
    if (!status.ok()) fail(status.error());
}

std::string did_str(const Did& did) { return "did:" + did.method + ":" + did.id; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Fail{kIo, "cannot open " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void spit(const std::string& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Fail{kIo, "cannot open " + path + " for writing"};
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out.flush()) throw Fail{kIo, "failed writing " + path};
}

std::string trimmed(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
        text.pop_back();
    std::size_t start = 0;
    while (start < text.size() && (text[start] == ' ' || text[start] == '\n' || text[start] == '\r'))
        ++start;
    return text.substr(start);
}

struct GlobalOptions {
    std::string registry_root;
    std::string scheme = "aos";
    std::string format = "text";
    std::optional<std::uint64_t> seed;

    SchemeKind scheme_kind() const { return unwrap(parse_scheme(scheme)); }

    std::unique_ptr<Entropy> make_entropy() const {
        if (seed) return std::make_unique<SeededEntropy>(*seed);
        return std::make_unique<SystemEntropy>();
    }

    Registry open_registry() const {
        if (registry_root.empty())
            fail_usage("no registry configured; pass --registry or set RINGDID_REGISTRY");
        return unwrap(Registry::open(registry_root));
    }
};

Did credential_did_for(const GroupElement& pk) {
    auto digest = sha512_raw(pk.bytes());
    return Did{"cred", base58_encode(BytesView(digest.data(), 32))};
}

Did parse_did_arg(const std::string& text) { return unwrap(parse_did(text)); }

KeyFile load_keyfile(const std::string& path) { return unwrap(read_keyfile(path)); }

SignerPosition position_for(const KeyFile& key, const Ring& ring) {
    if (!key.sk) fail_usage("key file has no secret key line");
    auto index = ring.index_of(key.pk);
    if (!index)
        fail(make_error(Errc::no_membership, "the key is not a member of the ring"));
    return SignerPosition{*index, *key.sk};
}

Bytes message_bytes(const std::string& message, const std::string& message_file) {
    if (!message_file.empty()) {
        std::string text = slurp(message_file);
        return Bytes(text.begin(), text.end());
    }
    return Bytes(message.begin(), message.end());
}

// --- subcommand bodies -------------------------------------------------------

int cmd_keygen(const GlobalOptions& global, const std::string& out,
               const std::string& public_out) {
    auto entropy = global.make_entropy();
    KeyPair kp = unwrap(gen_keypair(*entropy));
    unwrap_status(write_keyfile(out, kp, true));
    if (!public_out.empty()) unwrap_status(write_keyfile(public_out, kp, false));
    std::cout << "pk: " << base58_encode(kp.pk.bytes()) << "\n";
    std::cout << "did: " << did_str(credential_did_for(kp.pk)) << "\n";
    return kOk;
}

int cmd_register(const GlobalOptions& global, const std::string& key_path,
                 const std::string& did_override) {
    Registry registry = global.open_registry();
    KeyFile key = load_keyfile(key_path);
    Did did = did_override.empty() ? credential_did_for(key.pk) : parse_did_arg(did_override);
    auto record = unwrap(registry.register_credential(create_credential_document(did, key.pk)));
    std::cout << did_str(record.did) << "\n";
    return kOk;
}

int cmd_ring_create(const GlobalOptions& global, const std::vector<std::string>& members,
                    const std::string& key_path) {
    if (members.size() < 2) fail_usage("ring-create needs at least 2 --member DIDs");
    Registry registry = global.open_registry();

    std::vector<std::pair<Did, GroupElement>> credentials;
    for (const std::string& text : members) {
        Did did = parse_did_arg(text);
        auto record = unwrap(registry.resolve(did));
        const CredentialDocument* cred = record.credential_document();
        if (!cred)
            fail(make_error(Errc::operation_not_permitted,
                            did_str(did) + " is not a credential document"));
        credentials.emplace_back(did, unwrap(cred->key()));
    }

    std::vector<GroupElement> keys;
    for (const auto& [did, key] : credentials) keys.push_back(key);
    Ring ring = unwrap(Ring::create(keys));

    GroupElement signer_pk = ring[0];
    if (!key_path.empty()) {
        KeyFile key = load_keyfile(key_path);
        if (!ring.index_of(key.pk))
            fail(make_error(Errc::not_in_ring, "the --key public key is not among the members"));
        signer_pk = key.pk;
    }

    auto entropy = global.make_entropy();
    std::string identifier = unwrap(new_ring_identifier(signer_pk, ring, *entropy));
    DidDocument doc = unwrap(make_ring_document(std::move(credentials), identifier,
                                                verification_type_for(global.scheme_kind())));
    auto record = unwrap(registry.register_ring(doc));
    std::cout << did_str(record.did) << "\n";
    return kOk;
}

int cmd_sign(const GlobalOptions& global, const std::string& ring_did_text,
             const std::string& key_path, const std::string& message,
             const std::string& message_file, const std::string& out) {
    Registry registry = global.open_registry();
    Did ring_did = parse_did_arg(ring_did_text);
    Ring ring = unwrap(registry.resolve_ring_keys(ring_did));
    SignerPosition signer = position_for(load_keyfile(key_path), ring);
    Bytes message_data = message_bytes(message, message_file);

    auto entropy = global.make_entropy();
    Bytes wire;
    if (global.scheme_kind() == SchemeKind::aos) {
        wire = encode_signature(unwrap(aos_sign(signer, message_data, ring, *entropy)));
    } else {
        wire = encode_signature(
            unwrap(borromean_sign({&signer, 1}, message_data, {&ring, 1}, *entropy)));
    }

    std::string encoded = base58_encode(wire);
    if (!out.empty())
        spit(out, encoded + "\n");
    else
        std::cout << encoded << "\n";
    return kOk;
}

int cmd_verify(const GlobalOptions& global, const std::string& ring_did_text,
               const std::string& message, const std::string& message_file,
               const std::string& signature_path) {
    Registry registry = global.open_registry();
    Ring ring = unwrap(registry.resolve_ring_keys(parse_did_arg(ring_did_text)));
    Bytes wire = unwrap(base58_decode(trimmed(slurp(signature_path))));
    Verdict verdict = unwrap(verify_wire(ring, message_bytes(message, message_file), wire));
    if (verdict == Verdict::accept) {
        std::cout << "accept\n";
        return kOk;
    }
    std::cout << "reject\n";
    return kRejected;
}

int cmd_resolve(const GlobalOptions& global, const std::string& did_text, bool keys) {
    Registry registry = global.open_registry();
    Did did = parse_did_arg(did_text);
    if (keys) {
        Ring ring = unwrap(registry.resolve_ring_keys(did));
        for (const GroupElement& key : ring.keys())
            std::cout << base58_encode(key.bytes()) << "\n";
        return kOk;
    }
    auto record = unwrap(registry.resolve(did));
    nlohmann::json j;
    j["did"] = did_str(record.did);
    j["kind"] = record.is_ring_document() ? "ring" : "credential";
    j["status"] = record.status == RecordStatus::active ? "active" : "revoked";
    j["version"] = record.version;
    std::string document_text = record.is_ring_document()
                                    ? unwrap(serialize_document(*record.ring_document()))
                                    : unwrap(serialize_credential(*record.credential_document()));
    if (global.format == "json") {
        j["document"] = nlohmann::json::parse(document_text);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << document_text;
        std::cerr << "status: " << j["status"].get<std::string>()
                  << " version: " << record.version << "\n";
    }
    return kOk;
}

int cmd_update(const GlobalOptions& global, const std::string& ring_did_text,
               const std::vector<std::string>& add, const std::vector<std::string>& remove,
               const std::string& key_path, const std::string& auth_ring_text) {
    Registry registry = global.open_registry();
    Did ring_did = parse_did_arg(ring_did_text);

    std::vector<Did> add_dids, remove_dids;
    for (const auto& text : add) add_dids.push_back(parse_did_arg(text));
    for (const auto& text : remove) remove_dids.push_back(parse_did_arg(text));

    // the payload is always bound to the target ring and its current version;
    // --auth-ring selects which ring actually signs (a mismatch must fail)
    auto current = unwrap(registry.resolve(ring_did));
    Bytes payload = update_payload_bytes(ring_did, add_dids, remove_dids, current.version);

    // authorization verifies against the embedded ring, so sign under that
    // rather than requiring every endpoint to still resolve
    Did auth_ring_did = auth_ring_text.empty() ? ring_did : parse_did_arg(auth_ring_text);
    auto auth_record = unwrap(registry.resolve(auth_ring_did));
    if (!auth_record.ring_document())
        fail(make_error(Errc::operation_not_permitted,
                        did_str(auth_ring_did) + " is not a ring document"));
    Ring auth_ring = unwrap(extract_ring(*auth_record.ring_document()));
    SignerPosition signer = position_for(load_keyfile(key_path), auth_ring);

    auto entropy = global.make_entropy();
    AosSignature authorization = unwrap(aos_sign(signer, payload, auth_ring, *entropy));

    auto record = unwrap(registry.update_ring(ring_did, add_dids, remove_dids, authorization));
    std::cout << did_str(record.did) << " version " << record.version << "\n";
    return kOk;
}

int cmd_revoke(const GlobalOptions& global, const std::string& did_text) {
    Registry registry = global.open_registry();
    auto record = unwrap(registry.revoke_credential(parse_did_arg(did_text)));
    std::cout << did_str(record.did) << " revoked\n";
    return kOk;
}

int cmd_challenge(const GlobalOptions& global, const std::string& context,
                  const std::string& out) {
    auto entropy = global.make_entropy();
    Challenge challenge;
    challenge.nonce.resize(kChallengeNonceBytes);
    if (!entropy->fill(challenge.nonce))
        fail(make_error(Errc::entropy_exhausted, "entropy exhausted"));
    challenge.context = context;
    challenge.issued_at_ms = now_ms();
    std::string text = challenge_to_json(challenge);
    if (!out.empty())
        spit(out, text);
    else
        std::cout << text;
    return kOk;
}

int cmd_respond(const GlobalOptions& global, const std::string& ring_did_text,
                const std::string& key_path, const std::string& challenge_path,
                const std::string& out) {
    Registry registry = global.open_registry();
    Did ring_did = parse_did_arg(ring_did_text);
    Challenge challenge = unwrap(challenge_from_json(slurp(challenge_path)));

    KeyFile key = load_keyfile(key_path);
    if (!key.sk) fail_usage("key file has no secret key line");
    Wallet wallet;
    wallet.add_credential(credential_did_for(key.pk), KeyPair{*key.sk, key.pk});

    auto entropy = global.make_entropy();
    Presentation presentation = unwrap(
        holder_respond(wallet, ring_did, challenge, registry, *entropy, global.scheme_kind()));
    std::string text = presentation_to_json(presentation);
    if (!out.empty())
        spit(out, text);
    else
        std::cout << text;
    return kOk;
}

int cmd_check(const GlobalOptions& global, const std::string& challenge_path,
              const std::string& presentation_path, double window_seconds,
              const std::string& nonce_store) {
    Registry registry = global.open_registry();
    Challenge expected = unwrap(challenge_from_json(slurp(challenge_path)));
    Presentation presentation = unwrap(presentation_from_json(slurp(presentation_path)));

    std::int64_t now = now_ms();
    if (now - expected.issued_at_ms > static_cast<std::int64_t>(window_seconds * 1000))
        fail(make_error(Errc::replay, "challenge expired"));

    // single-use nonces across CLI invocations, tracked next to the registry
    std::string store_path = nonce_store;
    if (store_path.empty() && !global.registry_root.empty())
        store_path = global.registry_root + "/nonces.json";
    nlohmann::json seen = nlohmann::json::object();
    if (!store_path.empty() && std::filesystem::exists(store_path)) {
        seen = nlohmann::json::parse(slurp(store_path), nullptr, false);
        if (seen.is_discarded()) seen = nlohmann::json::object();
    }
    std::string nonce_b58 = base58_encode(expected.nonce);
    if (seen.contains(nonce_b58))
        fail(make_error(Errc::replay, "challenge was already answered"));

    if (!(presentation.challenge == expected)) {
        std::cout << "reject\n";
        return kRejected;
    }

    auto ring = registry.resolve_ring_keys(presentation.ring_did);
    if (!ring.ok())
        fail(make_error(Errc::resolution_failed, "cannot resolve " +
                                                     did_str(presentation.ring_did) + ": " +
                                                     ring.error().message));

    Bytes message = presentation_message(presentation.ring_did, expected);
    auto verdict = verify_wire(ring.value(), message, presentation.signature);
    if (!verdict.ok() || verdict.value() != Verdict::accept) {
        std::cout << "reject\n";
        return kRejected;
    }

    if (!store_path.empty()) {
        seen[nonce_b58] = iso8601_utc(now);
        spit(store_path, seen.dump(2) + "\n");
    }
    std::cout << "accept\n";
    return kOk;
}

int cmd_bench(const GlobalOptions& global, const std::string& sizes, double seconds,
              bool with_identifier, std::uint64_t iterations, unsigned threads) {
    bench::BenchOptions options;
    options.scheme = global.scheme_kind();
    options.seconds_per_cell = seconds;
    options.seed = global.seed;
    options.iterations_per_subrun = iterations;
    options.with_identifier = with_identifier;
    options.threads = threads;

    std::size_t dots = sizes.find("..");
    if (dots == std::string::npos) fail_usage("--sizes must look like 2..10");
    try {
        options.min_size = std::stoul(sizes.substr(0, dots));
        options.max_size = std::stoul(sizes.substr(dots + 2));
    } catch (const std::exception&) {
        fail_usage("--sizes must look like 2..10");
    }

    bench::BenchReport report = unwrap(bench::run_bench(options));
    if (global.format == "json")
        std::cout << bench::report_json(report);
    else if (global.format == "csv")
        std::cout << bench::report_csv(report);
    else
        std::cout << bench::report_text(report);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"did:ring toolkit: ring-signature backed decentralised identifiers"};
    app.require_subcommand(1);

    GlobalOptions global;
    if (const char* env = std::getenv("RINGDID_REGISTRY")) global.registry_root = env;
    app.add_option("--registry", global.registry_root,
                   "registry root directory (env RINGDID_REGISTRY)");
    app.add_option("--scheme", global.scheme, "signature scheme: aos | borromean")
        ->check(CLI::IsMember({"aos", "borromean"}));
    app.add_option("--format", global.format, "output format: text | json | csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    app.add_option("--seed", global.seed, "deterministic entropy seed (testing only)");

    // keygen
    auto* keygen = app.add_subcommand("keygen", "generate a credential key pair");
    std::string keygen_out, keygen_public_out;
    keygen->add_option("--out", keygen_out, "key file to write (pk + sk)")->required();
    keygen->add_option("--public-out", keygen_public_out, "optional public-only key file");

    // register
    auto* reg = app.add_subcommand("register", "register a credential key in the registry");
    std::string reg_key, reg_did;
    reg->add_option("--key", reg_key, "key file (public part is used)")->required();
    reg->add_option("--did", reg_did, "credential DID (default: derived from the key)");

    // ring-create
    auto* ring_create = app.add_subcommand("ring-create", "create and register a did:ring");
    std::vector<std::string> rc_members;
    std::string rc_key;
    ring_create->add_option("--member", rc_members, "credential DID (repeat, at least 2)")
        ->required();
    ring_create->add_option("--key", rc_key, "creator key file; its key seeds the identifier");

    // sign
    auto* sign = app.add_subcommand("sign", "ring-sign a message");
    std::string sign_ring, sign_key, sign_message, sign_message_file, sign_out;
    sign->add_option("--ring-did", sign_ring, "ring DID")->required();
    sign->add_option("--key", sign_key, "signer key file")->required();
    sign->add_option("--message", sign_message, "message string");
    sign->add_option("--message-file", sign_message_file, "message file");
    sign->add_option("--out", sign_out, "write the base58 signature here instead of stdout");

    // verify
    auto* verify = app.add_subcommand("verify", "verify a ring signature");
    std::string verify_ring, verify_message, verify_message_file, verify_signature;
    verify->add_option("--ring-did", verify_ring, "ring DID")->required();
    verify->add_option("--message", verify_message, "message string");
    verify->add_option("--message-file", verify_message_file, "message file");
    verify->add_option("--signature", verify_signature, "base58 signature file")->required();

    // resolve
    auto* resolve = app.add_subcommand("resolve", "resolve a DID to its record");
    std::string resolve_did;
    bool resolve_keys = false;
    resolve->add_option("--did", resolve_did, "DID to resolve")->required();
    resolve->add_flag("--keys", resolve_keys, "resolve ring keys through the service endpoints");

    // update
    auto* update = app.add_subcommand("update", "add/remove ring endpoints (ring-signed)");
    std::string upd_ring, upd_key, upd_auth_ring;
    std::vector<std::string> upd_add, upd_remove;
    update->add_option("--ring-did", upd_ring, "ring DID to update")->required();
    update->add_option("--add", upd_add, "credential DID to add (repeat)");
    update->add_option("--remove", upd_remove, "credential DID to remove (repeat)");
    update->add_option("--key", upd_key, "signer key file (member of the authorizing ring)")
        ->required();
    update->add_option("--auth-ring-did", upd_auth_ring,
                       "ring that signs the authorization (default: the target ring; "
                       "diagnostic)");

    // revoke
    auto* revoke = app.add_subcommand("revoke", "revoke a constituent credential");
    std::string revoke_did;
    revoke->add_option("--did", revoke_did, "credential DID")->required();

    // challenge
    auto* challenge = app.add_subcommand("challenge", "issue an identification challenge");
    std::string ch_context = "identification", ch_out;
    challenge->add_option("--context", ch_context, "verifier context string");
    challenge->add_option("--out", ch_out, "write the challenge JSON here");

    // respond
    auto* respond = app.add_subcommand("respond", "answer a challenge with a presentation");
    std::string resp_ring, resp_key, resp_challenge, resp_out;
    respond->add_option("--ring-did", resp_ring, "ring DID to present")->required();
    respond->add_option("--key", resp_key, "holder key file")->required();
    respond->add_option("--challenge", resp_challenge, "challenge JSON file")->required();
    respond->add_option("--out", resp_out, "write the presentation JSON here");

    // check
    auto* check = app.add_subcommand("check", "verify a presentation against a challenge");
    std::string chk_challenge, chk_presentation, chk_nonce_store;
    double chk_window = 300.0;
    check->add_option("--challenge", chk_challenge, "challenge JSON file")->required();
    check->add_option("--presentation", chk_presentation, "presentation JSON file")->required();
    check->add_option("--window", chk_window, "challenge validity window in seconds");
    check->add_option("--nonce-store", chk_nonce_store,
                      "used-nonce file (default: <registry>/nonces.json)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "throughput benchmark per ring size");
    std::string bench_sizes = "2..10";
    double bench_seconds = 3.0;
    bool bench_identifier = false;
    std::uint64_t bench_iterations = 64;
    unsigned bench_threads = 1;
    bench_cmd->add_option("--sizes", bench_sizes, "ring size range, e.g. 2..10");
    bench_cmd->add_option("--seconds", bench_seconds, "measured seconds per cell");
    bench_cmd->add_flag("--with-identifier", bench_identifier,
                        "also measure identifier generation");
    bench_cmd->add_option("--iterations", bench_iterations,
                          "iterations per sub-run in seeded mode");
    bench_cmd->add_option("--threads", bench_threads, "parallel workers (default 1)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*keygen) return cmd_keygen(global, keygen_out, keygen_public_out);
        if (*reg) return cmd_register(global, reg_key, reg_did);
        if (*ring_create) return cmd_ring_create(global, rc_members, rc_key);
        if (*sign)
            return cmd_sign(global, sign_ring, sign_key, sign_message, sign_message_file,
                            sign_out);
        if (*verify)
            return cmd_verify(global, verify_ring, verify_message, verify_message_file,
                              verify_signature);
        if (*resolve) return cmd_resolve(global, resolve_did, resolve_keys);
        if (*update)
            return cmd_update(global, upd_ring, upd_add, upd_remove, upd_key, upd_auth_ring);
        if (*revoke) return cmd_revoke(global, revoke_did);
        if (*challenge) return cmd_challenge(global, ch_context, ch_out);
        if (*respond) return cmd_respond(global, resp_ring, resp_key, resp_challenge, resp_out);
        if (*check)
            return cmd_check(global, chk_challenge, chk_presentation, chk_window,
                             chk_nonce_store);
        if (*bench_cmd)
            return cmd_bench(global, bench_sizes, bench_seconds, bench_identifier,
                             bench_iterations, bench_threads);
    } catch (const Fail& failure) {
        std::cerr << "error: " << failure.message << "\n";
        return failure.code;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
    return kUsage;
}
