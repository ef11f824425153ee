#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "colorpin/board.hpp"
#include "colorpin/credentials.hpp"
#include "colorpin/hashing.hpp"

namespace colorpin {

class CredentialVault;

enum class StorageMode { plaintext_recoverable, hash_only };

const char* to_string(StorageMode mode) noexcept;
StorageMode storage_mode_from_string(std::string_view text);

/// What the server keeps about one user's secret. The digest is always
/// present; `sealed` holds the vault-encrypted credentials only in
/// plaintext-recoverable mode. id_length / ui_length are public shape data
/// the server needs to run a login.
struct StoredCredential {
    std::string user_id;
    std::string salt;
    int iterations = 25;
    Digest digest{};
    StorageMode mode = StorageMode::hash_only;
    int id_length = 0;
    int ui_length = 0;
    std::optional<std::string> sealed;

    bool operator==(const StoredCredential&) const = default;
};

/// Hashes `creds` with a fresh salt; seals a copy when mode is
/// plaintext-recoverable (vault required then).
StoredCredential make_stored_credential(const BoardSpec& spec, std::string user_id, const Credentials& creds,
                                        StorageMode mode, const CredentialVault* vault, int iterations = 25,
                                        std::optional<std::string> salt = std::nullopt);

Digest credential_digest(const BoardSpec& spec, const StoredCredential& stored, const Credentials& creds);

void to_json(nlohmann::json& j, const StoredCredential& c);
void from_json(const nlohmann::json& j, StoredCredential& c);

/// In-memory map of StoredCredential backed by an optional JSON-lines file.
/// Every insert/update appends one record; on load the last record per
/// user wins. Concurrent readers, exclusive writers.
class CredentialStore {
public:
    CredentialStore() = default;
    explicit CredentialStore(std::filesystem::path path);

    /// Throws Error(conflict) when the user already exists.
    void insert(const StoredCredential& credential);
    void update(const StoredCredential& credential);
    [[nodiscard]] std::optional<StoredCredential> find(const std::string& user_id) const;
    [[nodiscard]] std::size_t size() const;

private:
    void append(const StoredCredential& credential);

    std::optional<std::filesystem::path> path_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, StoredCredential> records_;
};

}  // namespace colorpin
