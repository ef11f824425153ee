#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "colorpin/credentials.hpp"

namespace colorpin {

/// AES-256-GCM sealing of credentials for plaintext-recoverable storage.
/// Sealed form: hex(nonce[12] || ciphertext || tag[16]); the user id is bound
/// as associated data so a sealed blob cannot be moved to another account.
class CredentialVault {
public:
    using Key = std::array<std::uint8_t, 32>;

    explicit CredentialVault(const Key& key) : key_(key) {}

    static CredentialVault from_hex(std::string_view key_hex);
    static CredentialVault generate();

    /// Reads a hex key from `path`, creating the file with a fresh key when it
    /// does not exist.
    static CredentialVault load_or_create(const std::string& path);

    [[nodiscard]] std::string key_hex() const;

    [[nodiscard]] std::string seal(std::string_view user_id, const Credentials& creds) const;
    /// Throws Error(invalid_argument) on tampering or a wrong key.
    [[nodiscard]] Credentials open(std::string_view user_id, std::string_view sealed) const;

private:
    Key key_;
};

}  // namespace colorpin
