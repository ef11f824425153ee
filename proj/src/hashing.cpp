#include "colorpin/hashing.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include "colorpin/error.hpp"

namespace colorpin {

namespace {

// One fetched method and one context per thread; EVP_Digest would redo both
// on every call, which dominates a 25-round chain.
class Sha256 {
public:
    Sha256() : md_(EVP_MD_fetch(nullptr, "SHA256", nullptr)), ctx_(EVP_MD_CTX_new()) {
        if (md_ == nullptr || ctx_ == nullptr) {
            throw Error(ErrorCode::io, "SHA-256 unavailable");
        }
    }
    ~Sha256() {
        EVP_MD_CTX_free(ctx_);
        EVP_MD_free(md_);
    }
    Sha256(const Sha256&) = delete;
    Sha256& operator=(const Sha256&) = delete;

    Digest operator()(std::span<const std::uint8_t> data) {
        Digest out{};
        unsigned int len = 0;
        if (EVP_DigestInit_ex2(ctx_, md_, nullptr) != 1 || EVP_DigestUpdate(ctx_, data.data(), data.size()) != 1 ||
            EVP_DigestFinal_ex(ctx_, out.data(), &len) != 1 || len != out.size()) {
            throw Error(ErrorCode::io, "SHA-256 failed");
        }
        return out;
    }

private:
    EVP_MD* md_;
    EVP_MD_CTX* ctx_;
};

Digest sha256(std::span<const std::uint8_t> data) {
    thread_local Sha256 hasher;
    return hasher(data);
}

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

Digest iterated_hash(std::string_view salt, std::span<const std::string> id_symbols,
                     std::span<const std::string> ui_symbols, int iterations) {
    if (iterations < 1) {
        throw Error(ErrorCode::invalid_argument, "iterations must be >= 1");
    }
    std::vector<std::uint8_t> message(salt.begin(), salt.end());
    message.push_back(0x00);
    auto append = [&message](std::span<const std::string> symbols) {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i > 0) message.push_back(0x1F);
            message.insert(message.end(), symbols[i].begin(), symbols[i].end());
        }
    };
    append(id_symbols);
    message.push_back(0x1E);
    append(ui_symbols);

    Digest d = sha256(message);
    for (int j = 1; j < iterations; ++j) {
        d = sha256(d);
    }
    return d;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0x0F]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) {
        throw Error(ErrorCode::invalid_argument, "hex string has odd length");
    }
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const int hi = hex_value(hex[2 * i]);
        const int lo = hex_value(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) {
            throw Error(ErrorCode::invalid_argument, "invalid hex digit");
        }
        out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return out;
}

Digest digest_from_hex(std::string_view hex) {
    const auto bytes = from_hex(hex);
    Digest d{};
    if (bytes.size() != d.size()) {
        throw Error(ErrorCode::invalid_argument, "digest must be 32 bytes");
    }
    std::copy(bytes.begin(), bytes.end(), d.begin());
    return d;
}

std::string random_salt(std::size_t bytes) {
    if (bytes < 1) {
        throw Error(ErrorCode::invalid_argument, "salt needs at least one byte");
    }
    std::vector<std::uint8_t> raw(bytes);
    if (RAND_bytes(raw.data(), static_cast<int>(raw.size())) != 1) {
        throw Error(ErrorCode::io, "RAND_bytes failed");
    }
    return to_hex(raw);
}

}  // namespace colorpin
