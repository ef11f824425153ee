#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "colorpin/credential_store.hpp"

namespace colorpin {

struct UserRecord {
    StoredCredential credential;
    std::string board = "digits-letters";
    /// Question bank id for profile-derived UI passwords.
    std::optional<std::string> profile;
    /// Fixed per-user question order; empty when redrawn per login.
    std::vector<int> question_order;
    std::int64_t created_at = 0;
    int failed_attempts = 0;

    [[nodiscard]] const std::string& user_id() const noexcept { return credential.user_id; }
    bool operator==(const UserRecord&) const = default;
};

/// A user line is the StoredCredential object plus board, profile,
/// question_order, created_at and failed_attempts.
void to_json(nlohmann::json& j, const UserRecord& r);
void from_json(const nlohmann::json& j, UserRecord& r);

/// Append-only JSON-lines user file; the last line per user wins on load.
class UserStore {
public:
    /// Memory-only without a path.
    explicit UserStore(std::optional<std::filesystem::path> path = std::nullopt);

    /// Throws Error(conflict) on a duplicate user id.
    void insert(const UserRecord& record);
    void update(const UserRecord& record);
    [[nodiscard]] std::optional<UserRecord> find(const std::string& user_id) const;
    [[nodiscard]] std::size_t size() const;

private:
    void append(const UserRecord& record);

    std::optional<std::filesystem::path> path_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, UserRecord> records_;
};

}  // namespace colorpin
