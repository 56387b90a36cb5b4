#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "safegate/error.hpp"

namespace safegate::gateway {

/// Key text is not 32 bytes of url-safe base64.
class KeyError : public Error {
public:
    using Error::Error;
};

/// Token is malformed, was tampered with, or was made with another key.
class AuthenticationError : public Error {
public:
    using Error::Error;
};

/// Token authenticated but is older than the permitted ttl.
class TokenExpired : public Error {
public:
    using Error::Error;
};

[[nodiscard]] std::string base64url_encode(std::span<const std::uint8_t> bytes);
/// Accepts padded or unpadded input; throws InvalidParameter on bad characters.
[[nodiscard]] std::vector<std::uint8_t> base64url_decode(std::string_view text);
[[nodiscard]] std::string base64_encode(std::span<const std::uint8_t> bytes);
[[nodiscard]] std::vector<std::uint8_t> base64_decode(std::string_view text);

/// 32-byte symmetric key: bytes 0..15 sign (HMAC-SHA256), bytes 16..31 encrypt (AES-128-CBC).
class TokenKey {
public:
    [[nodiscard]] static TokenKey parse(std::string_view urlsafe_b64);
    [[nodiscard]] static TokenKey generate();
    /// SAFEGATE_KEY if set, otherwise the key file, which must not be readable by group/others.
    [[nodiscard]] static TokenKey load(const std::optional<std::filesystem::path>& key_path);

    [[nodiscard]] std::string encode() const;
    [[nodiscard]] std::span<const std::uint8_t, 16> signing_key() const {
        return std::span<const std::uint8_t, 16>(bytes_.data(), 16);
    }
    [[nodiscard]] std::span<const std::uint8_t, 16> encryption_key() const {
        return std::span<const std::uint8_t, 16>(bytes_.data() + 16, 16);
    }

private:
    std::array<std::uint8_t, 32> bytes_{};
};

inline constexpr std::uint8_t kTokenVersion = 0x80;
/// Tokens stamped further than this into the future are rejected like tampered ones.
inline constexpr std::int64_t kMaxClockSkewSeconds = 60;

struct EncryptOptions {
    std::optional<std::int64_t> now_seconds;            // default: system clock
    std::optional<std::array<std::uint8_t, 16>> iv;     // default: random
};

/// version | timestamp (u64 BE) | iv | AES-128-CBC(PKCS7) ciphertext | HMAC-SHA256, url-safe base64.
[[nodiscard]] std::string encrypt_frame(std::span<const std::uint8_t> plaintext, const TokenKey& key,
                                        const EncryptOptions& options = {});

struct DecryptOptions {
    std::optional<std::int64_t> ttl_seconds;
    std::optional<std::int64_t> now_seconds;  // default: system clock
};

/// Verifies the MAC before touching the ciphertext. Throws AuthenticationError or TokenExpired.
[[nodiscard]] std::vector<std::uint8_t> decrypt_frame(std::string_view token, const TokenKey& key,
                                                      const DecryptOptions& options = {});

/// Timestamp field of an authenticated token, in seconds.
[[nodiscard]] std::int64_t token_timestamp(std::string_view token, const TokenKey& key);

}  // namespace safegate::gateway
