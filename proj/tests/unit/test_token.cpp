#include <gtest/gtest.h>

#include <sys/stat.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "safegate/gateway/token.hpp"

using namespace safegate;
using namespace safegate::gateway;
using safegate::testing::Gen;

namespace {

constexpr std::int64_t kNow = 1'617'278'400;

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

nlohmann::json reference() {
    std::ifstream in(std::string(SAFEGATE_FIXTURE_DIR) + "/fernet_reference.json");
    std::stringstream ss;
    ss << in.rdbuf();
    return nlohmann::json::parse(ss.str());
}

std::array<std::uint8_t, 16> iv_from_hex(const std::string& hex) {
    std::array<std::uint8_t, 16> iv{};
    for (std::size_t i = 0; i < 16; ++i) iv[i] = static_cast<std::uint8_t>(std::stoi(hex.substr(2 * i, 2), nullptr, 16));
    return iv;
}

// Flip one bit inside the decoded token and re-encode it.
std::string flip_bit(const std::string& token, std::size_t bit) {
    auto raw = base64url_decode(token);
    raw[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
    return base64url_encode(raw);
}

}  // namespace

TEST(Base64, RoundTripsAndRejectsGarbage) {
    Gen gen(59);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint8_t> b(static_cast<std::size_t>(gen.uniform(0, 64)));
        for (auto& x : b) x = static_cast<std::uint8_t>(gen.uniform(0, 255));
        EXPECT_EQ(base64url_decode(base64url_encode(b)), b);
        EXPECT_EQ(base64_decode(base64_encode(b)), b);
    }
    EXPECT_EQ(base64url_encode(bytes_of("\xfb\xff")), "-_8=");
    EXPECT_THROW((void)base64url_decode("ab+/"), InvalidParameter);
    EXPECT_THROW((void)base64url_decode("a$=="), InvalidParameter);
}

TEST(Token, ReferenceVectorFromIndependentImplementation) {
    const auto ref = reference();
    const auto key = TokenKey::parse(ref["key"].get<std::string>());
    const auto plain = base64_decode(ref["plaintext_b64"].get<std::string>());
    const std::int64_t ts = ref["timestamp"].get<std::int64_t>();
    EXPECT_EQ(decrypt_frame(ref["token"].get<std::string>(), key, {.ttl_seconds = {}, .now_seconds = ts}), plain);
    EXPECT_EQ(token_timestamp(ref["token"].get<std::string>(), key), ts);
    const auto made = encrypt_frame(plain, key, {.now_seconds = ts, .iv = iv_from_hex(ref["iv_hex"].get<std::string>())});
    EXPECT_EQ(made, ref["token"].get<std::string>());
}

TEST(Token, RoundTripsRandomPayloads) {
    const auto key = TokenKey::generate();
    Gen gen(61);
    for (int t = 0; t < 200; ++t) {
        std::vector<std::uint8_t> b(static_cast<std::size_t>(gen.uniform(0, 3000)));
        for (auto& x : b) x = static_cast<std::uint8_t>(gen.uniform(0, 255));
        const auto tok = encrypt_frame(b, key, {.now_seconds = kNow});
        EXPECT_EQ(decrypt_frame(tok, key, {.now_seconds = kNow}), b);
    }
}

TEST(Token, FreshIvPerToken) {
    const auto key = TokenKey::generate();
    const auto msg = bytes_of("same frame");
    EXPECT_NE(encrypt_frame(msg, key, {.now_seconds = kNow}), encrypt_frame(msg, key, {.now_seconds = kNow}));
}

TEST(Token, EverySingleBitFlipFailsAuthentication) {
    const auto key = TokenKey::generate();
    const auto tok = encrypt_frame(bytes_of("door: open"), key, {.now_seconds = kNow});
    const std::size_t bits = base64url_decode(tok).size() * 8;
    for (std::size_t bit = 0; bit < bits; ++bit) {
        EXPECT_THROW((void)decrypt_frame(flip_bit(tok, bit), key, {.now_seconds = kNow}), AuthenticationError)
            << "bit " << bit;
    }
}

TEST(Token, WrongKeyAndMalformedInput) {
    const auto a = TokenKey::generate();
    const auto b = TokenKey::generate();
    const auto tok = encrypt_frame(bytes_of("x"), a, {.now_seconds = kNow});
    EXPECT_THROW((void)decrypt_frame(tok, b, {.now_seconds = kNow}), AuthenticationError);
    EXPECT_THROW((void)decrypt_frame("", a, {.now_seconds = kNow}), AuthenticationError);
    EXPECT_THROW((void)decrypt_frame("not a token!", a, {.now_seconds = kNow}), AuthenticationError);
    EXPECT_THROW((void)decrypt_frame(tok.substr(0, 40), a, {.now_seconds = kNow}), AuthenticationError);
}

TEST(Token, TimeToLiveAndFutureSkew) {
    const auto key = TokenKey::generate();
    const auto tok = encrypt_frame(bytes_of("x"), key, {.now_seconds = kNow});
    EXPECT_NO_THROW((void)decrypt_frame(tok, key, {.ttl_seconds = 300, .now_seconds = kNow + 300}));
    EXPECT_THROW((void)decrypt_frame(tok, key, {.ttl_seconds = 300, .now_seconds = kNow + 301}), TokenExpired);
    EXPECT_NO_THROW((void)decrypt_frame(tok, key, {.ttl_seconds = {}, .now_seconds = kNow + 100'000}));
    EXPECT_NO_THROW((void)decrypt_frame(tok, key, {.now_seconds = kNow - kMaxClockSkewSeconds}));
    EXPECT_THROW((void)decrypt_frame(tok, key, {.now_seconds = kNow - kMaxClockSkewSeconds - 1}), AuthenticationError);
}

TEST(TokenKey, ParseAndEncode) {
    const auto k = TokenKey::generate();
    EXPECT_EQ(TokenKey::parse(k.encode()).encode(), k.encode());
    EXPECT_THROW((void)TokenKey::parse("c2hvcnQ="), KeyError);
    EXPECT_THROW((void)TokenKey::parse("###"), KeyError);
}

TEST(TokenKey, FileMustBePrivate) {
    ::unsetenv("SAFEGATE_KEY");
    const auto path = std::filesystem::temp_directory_path() / "safegate_token_test.key";
    const auto key = TokenKey::generate();
    {
        std::ofstream out(path);
        out << key.encode() << "\n";
    }
    ::chmod(path.c_str(), 0644);
    EXPECT_THROW((void)TokenKey::load(path), KeyError);
    ::chmod(path.c_str(), 0600);
    EXPECT_EQ(TokenKey::load(path).encode(), key.encode());
    EXPECT_THROW((void)TokenKey::load(std::nullopt), KeyError);
    EXPECT_THROW((void)TokenKey::load(path.string() + ".missing"), KeyError);

    const auto other = TokenKey::generate();
    ::setenv("SAFEGATE_KEY", other.encode().c_str(), 1);
    EXPECT_EQ(TokenKey::load(path).encode(), other.encode());
    ::unsetenv("SAFEGATE_KEY");
    std::filesystem::remove(path);
}
