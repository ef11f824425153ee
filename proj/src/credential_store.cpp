#include "colorpin/credential_store.hpp"

#include <fstream>
#include <mutex>

#include "colorpin/error.hpp"
#include "colorpin/vault.hpp"

namespace colorpin {

const char* to_string(StorageMode mode) noexcept {
    return mode == StorageMode::hash_only ? "hash_only" : "plaintext_recoverable";
}

StorageMode storage_mode_from_string(std::string_view text) {
    if (text == "hash_only") return StorageMode::hash_only;
    if (text == "plaintext_recoverable" || text == "plaintext") return StorageMode::plaintext_recoverable;
    throw Error(ErrorCode::invalid_argument, "unknown storage mode '" + std::string(text) + "'");
}

StoredCredential make_stored_credential(const BoardSpec& spec, std::string user_id, const Credentials& creds,
                                        StorageMode mode, const CredentialVault* vault, int iterations,
                                        std::optional<std::string> salt) {
    creds.validate(spec);
    if (user_id.empty()) {
        throw Error(ErrorCode::invalid_argument, "user id must not be empty");
    }
    StoredCredential stored;
    stored.user_id = std::move(user_id);
    stored.salt = salt ? *salt : random_salt();
    if (stored.salt.size() < 2) {
        throw Error(ErrorCode::invalid_argument, "salt must be at least 2 characters");
    }
    stored.iterations = iterations;
    stored.mode = mode;
    stored.id_length = static_cast<int>(creds.id_password.size());
    stored.ui_length = static_cast<int>(creds.ui_password.size());
    stored.digest = credential_digest(spec, stored, creds);
    if (mode == StorageMode::plaintext_recoverable) {
        if (vault == nullptr) {
            throw Error(ErrorCode::invalid_argument, "plaintext-recoverable storage needs a vault");
        }
        stored.sealed = vault->seal(stored.user_id, creds);
    }
    return stored;
}

Digest credential_digest(const BoardSpec& spec, const StoredCredential& stored, const Credentials& creds) {
    return iterated_hash(stored.salt, id_symbols(spec, creds), ui_symbols(spec, creds), stored.iterations);
}

void to_json(nlohmann::json& j, const StoredCredential& c) {
    j = nlohmann::json{{"user_id", c.user_id},     {"salt", c.salt},           {"iterations", c.iterations},
                       {"digest", to_hex(c.digest)}, {"mode", to_string(c.mode)}, {"id_length", c.id_length},
                       {"ui_length", c.ui_length}};
    if (c.sealed) {
        j["sealed"] = *c.sealed;
    }
}

void from_json(const nlohmann::json& j, StoredCredential& c) {
    c.user_id = j.at("user_id").get<std::string>();
    c.salt = j.at("salt").get<std::string>();
    c.iterations = j.at("iterations").get<int>();
    c.digest = digest_from_hex(j.at("digest").get<std::string>());
    c.mode = storage_mode_from_string(j.at("mode").get<std::string>());
    c.id_length = j.value("id_length", 0);
    c.ui_length = j.value("ui_length", 0);
    if (j.contains("sealed")) {
        c.sealed = j.at("sealed").get<std::string>();
    } else {
        c.sealed.reset();
    }
}

CredentialStore::CredentialStore(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(*path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto record = nlohmann::json::parse(line).get<StoredCredential>();
        records_[record.user_id] = std::move(record);
    }
}

void CredentialStore::insert(const StoredCredential& credential) {
    std::unique_lock lock(mutex_);
    if (records_.contains(credential.user_id)) {
        throw Error(ErrorCode::conflict, "user '" + credential.user_id + "' already exists");
    }
    append(credential);
    records_[credential.user_id] = credential;
}

void CredentialStore::update(const StoredCredential& credential) {
    std::unique_lock lock(mutex_);
    if (!records_.contains(credential.user_id)) {
        throw Error(ErrorCode::unknown_user, "unknown user");
    }
    append(credential);
    records_[credential.user_id] = credential;
}

std::optional<StoredCredential> CredentialStore::find(const std::string& user_id) const {
    std::shared_lock lock(mutex_);
    const auto it = records_.find(user_id);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::size_t CredentialStore::size() const {
    std::shared_lock lock(mutex_);
    return records_.size();
}

void CredentialStore::append(const StoredCredential& credential) {
    if (!path_) return;
    std::ofstream out(*path_, std::ios::app);
    if (!out) throw Error(ErrorCode::io, "cannot append to credential store " + path_->string());
    out << nlohmann::json(credential).dump() << '\n';
}

}  // namespace colorpin
