#include "colorpin/vault.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>
#include <sys/stat.h>

#include <filesystem>
#include <fstream>
#include <memory>
#include <vector>

#include <json.hpp>

#include "colorpin/error.hpp"
#include "colorpin/hashing.hpp"

namespace colorpin {

namespace {

constexpr int kNonceBytes = 12;
constexpr int kTagBytes = 16;

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

CipherCtx make_ctx() {
    CipherCtx ctx(EVP_CIPHER_CTX_new(), &EVP_CIPHER_CTX_free);
    if (!ctx) throw Error(ErrorCode::io, "EVP_CIPHER_CTX_new failed");
    return ctx;
}

void check(int rc, const char* what) {
    if (rc != 1) throw Error(ErrorCode::io, std::string("AES-GCM ") + what + " failed");
}

}  // namespace

CredentialVault CredentialVault::from_hex(std::string_view key_hex) {
    const auto bytes = colorpin::from_hex(key_hex);
    Key key{};
    if (bytes.size() != key.size()) {
        throw Error(ErrorCode::invalid_argument, "vault key must be 32 bytes");
    }
    std::copy(bytes.begin(), bytes.end(), key.begin());
    return CredentialVault(key);
}

CredentialVault CredentialVault::generate() {
    Key key{};
    if (RAND_bytes(key.data(), static_cast<int>(key.size())) != 1) {
        throw Error(ErrorCode::io, "RAND_bytes failed");
    }
    return CredentialVault(key);
}

CredentialVault CredentialVault::load_or_create(const std::string& path) {
    if (std::filesystem::exists(path)) {
        std::ifstream in(path);
        std::string hex;
        in >> hex;
        return from_hex(hex);
    }
    auto vault = generate();
    {
        std::ofstream out(path, std::ios::trunc);
        if (!out) throw Error(ErrorCode::io, "cannot write vault key file " + path);
        out << vault.key_hex() << '\n';
    }
    ::chmod(path.c_str(), 0600);
    return vault;
}

std::string CredentialVault::key_hex() const { return to_hex(key_); }

std::string CredentialVault::seal(std::string_view user_id, const Credentials& creds) const {
    const std::string plain = nlohmann::json{{"id", creds.id_password}, {"ui", creds.ui_password}}.dump();

    std::vector<std::uint8_t> out(kNonceBytes + plain.size() + kTagBytes);
    check(RAND_bytes(out.data(), kNonceBytes), "nonce");

    auto ctx = make_ctx();
    int len = 0;
    check(EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key_.data(), out.data()), "init");
    check(EVP_EncryptUpdate(ctx.get(), nullptr, &len, reinterpret_cast<const unsigned char*>(user_id.data()),
                            static_cast<int>(user_id.size())),
          "aad");
    check(EVP_EncryptUpdate(ctx.get(), out.data() + kNonceBytes, &len,
                            reinterpret_cast<const unsigned char*>(plain.data()), static_cast<int>(plain.size())),
          "encrypt");
    int tail = 0;
    check(EVP_EncryptFinal_ex(ctx.get(), out.data() + kNonceBytes + len, &tail), "final");
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes, out.data() + kNonceBytes + plain.size()),
          "tag");
    return to_hex(out);
}

Credentials CredentialVault::open(std::string_view user_id, std::string_view sealed) const {
    auto data = colorpin::from_hex(sealed);
    if (data.size() < static_cast<std::size_t>(kNonceBytes + kTagBytes)) {
        throw Error(ErrorCode::invalid_argument, "sealed credential too short");
    }
    const std::size_t body = data.size() - kNonceBytes - kTagBytes;
    std::string plain(body, '\0');

    auto ctx = make_ctx();
    int len = 0;
    check(EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key_.data(), data.data()), "init");
    check(EVP_DecryptUpdate(ctx.get(), nullptr, &len, reinterpret_cast<const unsigned char*>(user_id.data()),
                            static_cast<int>(user_id.size())),
          "aad");
    check(EVP_DecryptUpdate(ctx.get(), reinterpret_cast<unsigned char*>(plain.data()), &len,
                            data.data() + kNonceBytes, static_cast<int>(body)),
          "decrypt");
    check(EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, data.data() + kNonceBytes + body), "tag");
    int tail = 0;
    unsigned char scratch[16];
    if (EVP_DecryptFinal_ex(ctx.get(), scratch, &tail) != 1) {
        throw Error(ErrorCode::invalid_argument, "sealed credential failed authentication");
    }
    const auto j = nlohmann::json::parse(plain);
    Credentials creds;
    creds.id_password = j.at("id").get<std::vector<int>>();
    creds.ui_password = j.at("ui").get<std::vector<int>>();
    return creds;
}

}  // namespace colorpin
