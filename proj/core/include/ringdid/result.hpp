#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace ringdid {

/// Every distinct failure mode surfaced by the library. CLI exit codes and
/// tests key off these, so two different failures never share a value unless
/// they are genuinely the same condition.
enum class Errc {
    // randomness
    entropy_exhausted,

    // group encodings
    wrong_length,
    invalid_scalar_encoding,
    invalid_element_encoding,
    identity_forbidden,
    key_mismatch,

    // ring construction
    ring_too_small,
    duplicate_key,

    // signing / verification shape
    signer_binding,
    malformed_signature,
    layout_mismatch,

    // base58
    invalid_base58_character,

    // DID parsing
    bad_prefix,
    lowercase_violation,
    bad_method_character,
    bad_id_length,
    bad_id_character,
    empty_id,

    // identifier generation
    not_in_ring,
    randomness_too_short,
    degenerate_identifier,

    // documents
    malformed_json,
    missing_field,
    wrong_field_type,
    wrong_service_type,
    undecodable_ring,
    correspondence_mismatch,
    document_invalid,
    unknown_verification_method,

    // registry
    not_found,
    revoked,
    already_revoked,
    conflict,
    unresolvable_ring,
    integrity_mismatch,
    unauthorized,
    operation_not_permitted,
    io_error,

    // identification
    no_membership,
    replay,
    resolution_failed,

    // configuration
    bad_config,
};

const char* errc_name(Errc code);

struct Error {
    Errc code;
    std::string message;
    std::optional<std::size_t> position{};  // offset into the offending input, when known

    std::string describe() const;
};

inline Error make_error(Errc code, std::string message,
                        std::optional<std::size_t> position = std::nullopt) {
    return Error{code, std::move(message), position};
}

/// Minimal value-or-error carrier. Accessing the wrong side is a programmer
/// error and throws std::logic_error rather than silently misbehaving.
template <typename T>
class [[nodiscard]] Result {
public:
    Result(T value) : state_(std::in_place_index<0>, std::move(value)) {}
    Result(Error error) : state_(std::in_place_index<1>, std::move(error)) {}

    bool ok() const { return state_.index() == 0; }
    explicit operator bool() const { return ok(); }

    const T& value() const& {
        require(true);
        return std::get<0>(state_);
    }
    T& value() & {
        require(true);
        return std::get<0>(state_);
    }
    T&& value() && {
        require(true);
        return std::get<0>(std::move(state_));
    }

    const Error& error() const& {
        require(false);
        return std::get<1>(state_);
    }
    Error&& take_error() && {
        require(false);
        return std::get<1>(std::move(state_));
    }

    Errc code() const { return error().code; }

private:
    void require(bool want_value) const {
        if (ok() != want_value)
            throw std::logic_error(want_value
                                       ? "Result::value() on error: " + std::get<1>(state_).describe()
                                       : "Result::error() on success");
    }

    std::variant<T, Error> state_;
};

template <>
class [[nodiscard]] Result<void> {
public:
    Result() = default;
    Result(Error error) : error_(std::move(error)) {}

    bool ok() const { return !error_.has_value(); }
    explicit operator bool() const { return ok(); }

    const Error& error() const& {
        if (ok()) throw std::logic_error("Result::error() on success");
        return *error_;
    }
    Errc code() const { return error().code; }

private:
    std::optional<Error> error_;
};

using Status = Result<void>;

}  // namespace ringdid
