#include "safegate/gateway/token.hpp"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>
#include <openssl/rand.h>
#include <sys/stat.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <memory>

namespace safegate::gateway {

namespace {

constexpr std::size_t kHeaderSize = 1 + 8 + 16;
constexpr std::size_t kMacSize = 32;

std::int64_t system_now_seconds() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

struct CipherCtxDeleter {
    void operator()(EVP_CIPHER_CTX* ctx) const { EVP_CIPHER_CTX_free(ctx); }
};
using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, CipherCtxDeleter>;

std::array<std::uint8_t, kMacSize> hmac_sha256(std::span<const std::uint8_t, 16> key,
                                               std::span<const std::uint8_t> data) {
    std::array<std::uint8_t, kMacSize> mac{};
    unsigned int len = 0;
    if (HMAC(EVP_sha256(), key.data(), static_cast<int>(key.size()), data.data(), data.size(), mac.data(), &len) ==
            nullptr ||
        len != kMacSize) {
        throw Error("HMAC-SHA256 failed");
    }
    return mac;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    return s.substr(i);
}

// Authenticates the token and returns its raw bytes.
std::vector<std::uint8_t> verified_bytes(std::string_view token, const TokenKey& key) {
    std::vector<std::uint8_t> raw;
    try {
        raw = base64url_decode(token);
    } catch (const InvalidParameter&) {
        throw AuthenticationError("token is not valid url-safe base64");
    }
    if (raw.size() < kHeaderSize + 16 + kMacSize || (raw.size() - kHeaderSize - kMacSize) % 16 != 0) {
        throw AuthenticationError("token has an invalid length");
    }
    if (raw[0] != kTokenVersion) throw AuthenticationError("token has an unsupported version");
    const std::span<const std::uint8_t> signed_part(raw.data(), raw.size() - kMacSize);
    const auto expected = hmac_sha256(key.signing_key(), signed_part);
    if (CRYPTO_memcmp(expected.data(), raw.data() + signed_part.size(), kMacSize) != 0) {
        throw AuthenticationError("token signature does not verify");
    }
    return raw;
}

std::int64_t read_timestamp(const std::vector<std::uint8_t>& raw) {
    std::uint64_t ts = 0;
    for (std::size_t i = 1; i <= 8; ++i) ts = (ts << 8) | raw[i];
    return static_cast<std::int64_t>(ts);
}

}  // namespace

std::string base64_encode(std::span<const std::uint8_t> bytes) {
    std::string out(4 * ((bytes.size() + 2) / 3), '\0');
    const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                  static_cast<int>(bytes.size()));
    out.resize(static_cast<std::size_t>(n));
    return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
    std::string s(text);
    while (s.size() % 4 != 0) s.push_back('=');
    for (const char c : s) {
        const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '+' ||
                        c == '/' || c == '=';
        if (!ok) throw InvalidParameter("invalid base64 character");
    }
    if (s.empty()) return {};
    std::vector<std::uint8_t> out(3 * s.size() / 4);
    const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(s.data()),
                                  static_cast<int>(s.size()));
    if (n < 0) throw InvalidParameter("invalid base64 input");
    std::size_t pad = 0;
    for (std::size_t i = s.size(); i > 0 && s[i - 1] == '='; --i) ++pad;
    if (pad > 2) throw InvalidParameter("invalid base64 padding");
    out.resize(static_cast<std::size_t>(n) - pad);
    return out;
}

std::string base64url_encode(std::span<const std::uint8_t> bytes) {
    std::string s = base64_encode(bytes);
    for (auto& c : s) {
        if (c == '+') c = '-';
        else if (c == '/') c = '_';
    }
    return s;
}

std::vector<std::uint8_t> base64url_decode(std::string_view text) {
    std::string s(text);
    for (auto& c : s) {
        if (c == '-') c = '+';
        else if (c == '_') c = '/';
        else if (c == '+' || c == '/') throw InvalidParameter("invalid url-safe base64 character");
    }
    return base64_decode(s);
}

TokenKey TokenKey::parse(std::string_view urlsafe_b64) {
    std::vector<std::uint8_t> raw;
    try {
        raw = base64url_decode(trim(std::string(urlsafe_b64)));
    } catch (const InvalidParameter& e) {
        throw KeyError(std::string("key is not url-safe base64: ") + e.what());
    }
    if (raw.size() != 32) throw KeyError("key must decode to 32 bytes, got " + std::to_string(raw.size()));
    TokenKey key;
    std::copy(raw.begin(), raw.end(), key.bytes_.begin());
    return key;
}

TokenKey TokenKey::generate() {
    TokenKey key;
    if (RAND_bytes(key.bytes_.data(), static_cast<int>(key.bytes_.size())) != 1) throw Error("RAND_bytes failed");
    return key;
}

TokenKey TokenKey::load(const std::optional<std::filesystem::path>& key_path) {
    if (const char* env = std::getenv("SAFEGATE_KEY"); env != nullptr && *env != '\0') return parse(env);
    if (!key_path) throw KeyError("no key: set SAFEGATE_KEY or configure key_path");
    struct stat st {};
    if (::stat(key_path->c_str(), &st) != 0) throw KeyError("cannot stat key file " + key_path->string());
    if ((st.st_mode & 077) != 0) {
        throw KeyError("key file " + key_path->string() + " must not be accessible by group or others (chmod 600)");
    }
    std::ifstream in(*key_path);
    std::string text;
    std::getline(in, text);
    if (!in && !in.eof()) throw KeyError("cannot read key file " + key_path->string());
    return parse(text);
}

std::string TokenKey::encode() const { return base64url_encode(bytes_); }

std::string encrypt_frame(std::span<const std::uint8_t> plaintext, const TokenKey& key, const EncryptOptions& options) {
    std::array<std::uint8_t, 16> iv{};
    if (options.iv) {
        iv = *options.iv;
    } else if (RAND_bytes(iv.data(), static_cast<int>(iv.size())) != 1) {
        throw Error("RAND_bytes failed");
    }
    const auto now = static_cast<std::uint64_t>(options.now_seconds.value_or(system_now_seconds()));

    std::vector<std::uint8_t> out;
    out.reserve(kHeaderSize + plaintext.size() + 16 + kMacSize);
    out.push_back(kTokenVersion);
    for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(now >> shift));
    out.insert(out.end(), iv.begin(), iv.end());

    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, key.encryption_key().data(), iv.data()) != 1) {
        throw Error("AES-128-CBC init failed");
    }
    std::vector<std::uint8_t> cipher(plaintext.size() + 16);
    int len = 0;
    int total = 0;
    if (EVP_EncryptUpdate(ctx.get(), cipher.data(), &len, plaintext.data(), static_cast<int>(plaintext.size())) != 1) {
        throw Error("AES-128-CBC update failed");
    }
    total = len;
    if (EVP_EncryptFinal_ex(ctx.get(), cipher.data() + total, &len) != 1) throw Error("AES-128-CBC final failed");
    total += len;
    out.insert(out.end(), cipher.begin(), cipher.begin() + total);

    const auto mac = hmac_sha256(key.signing_key(), out);
    out.insert(out.end(), mac.begin(), mac.end());
    return base64url_encode(out);
}

std::vector<std::uint8_t> decrypt_frame(std::string_view token, const TokenKey& key, const DecryptOptions& options) {
    const auto raw = verified_bytes(token, key);
    const std::int64_t ts = read_timestamp(raw);
    const std::int64_t now = options.now_seconds.value_or(system_now_seconds());
    if (ts > now + kMaxClockSkewSeconds) throw AuthenticationError("token timestamp is in the future");
    if (options.ttl_seconds && ts + *options.ttl_seconds < now) {
        throw TokenExpired("token is older than " + std::to_string(*options.ttl_seconds) + " s");
    }

    const std::uint8_t* iv = raw.data() + 9;
    const std::uint8_t* cipher = raw.data() + kHeaderSize;
    const auto cipher_len = static_cast<int>(raw.size() - kHeaderSize - kMacSize);
    CipherCtx ctx(EVP_CIPHER_CTX_new());
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_128_cbc(), nullptr, key.encryption_key().data(), iv) != 1) {
        throw Error("AES-128-CBC init failed");
    }
    std::vector<std::uint8_t> plain(static_cast<std::size_t>(cipher_len) + 16);
    int len = 0;
    if (EVP_DecryptUpdate(ctx.get(), plain.data(), &len, cipher, cipher_len) != 1) {
        throw AuthenticationError("token ciphertext is invalid");
    }
    int total = len;
    if (EVP_DecryptFinal_ex(ctx.get(), plain.data() + total, &len) != 1) {
        throw AuthenticationError("token padding is invalid");
    }
    total += len;
    plain.resize(static_cast<std::size_t>(total));
    return plain;
}

std::int64_t token_timestamp(std::string_view token, const TokenKey& key) {
    return read_timestamp(verified_bytes(token, key));
}

}  // namespace safegate::gateway
