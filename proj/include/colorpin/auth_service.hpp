#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

#include <json.hpp>

#include "colorpin/profile.hpp"
#include "colorpin/session.hpp"
#include "colorpin/user_store.hpp"
#include "colorpin/vault.hpp"

namespace colorpin {

struct ServiceConfig {
    std::optional<std::filesystem::path> store_path;
    int lockout_threshold = 5;
    std::chrono::seconds idle_timeout{120};
    /// Test mode only: derives tokens and board shuffles from this seed.
    std::optional<std::uint64_t> seed;
    int display_l = 0;
    int iterations = 25;
    StorageMode default_mode = StorageMode::hash_only;
    ValidationLimits limits;
    std::optional<ProfileQuestionBank> profile_bank;
    bool profile_order_per_session = true;
    /// Needed for plaintext-recoverable users.
    std::optional<CredentialVault> vault;
    std::function<std::chrono::steady_clock::time_point()> clock;
};

struct HttpResponse {
    int status = 200;
    std::string body;
};

/// Named board specs users can pick at registration.
const std::map<std::string, BoardSpec>& builtin_boards();

/// Board view sent to clients: {rows, cols, fixed, cursor, offset, origin,
/// skin, entered, l}. Cursor symbols outside the shown subset are null.
nlohmann::json board_view_json(const LoginSession& session);

/// HTTP-independent core of the authentication service.
///
///   POST /users                      register
///   POST /sessions                   {user_id} -> {token, k, spec, board_view}
///   POST /sessions/{token}/move      MoveOrder -> {board_view}
///   POST /sessions/{token}/commit    -> {entered, k, board_view}
///   POST /sessions/{token}/reset     -> {entered, k, board_view}
///   POST /sessions/{token}/finalize  -> {result}
///
/// Sessions live in memory only; requests on one token are serialized.
class AuthService {
public:
    explicit AuthService(ServiceConfig config);

    /// Routes one request and serializes the outcome. Never throws.
    HttpResponse dispatch(std::string_view method, std::string_view path, std::string_view body);

    nlohmann::json create_user(const nlohmann::json& request);
    nlohmann::json open_login(const nlohmann::json& request);
    nlohmann::json apply_move(const std::string& token, const nlohmann::json& order);
    nlohmann::json commit(const std::string& token);
    nlohmann::json reset(const std::string& token);
    nlohmann::json finalize(const std::string& token);

    [[nodiscard]] std::optional<UserRecord> find_user(const std::string& user_id) const;
    [[nodiscard]] std::size_t active_sessions() const;

private:
    struct SessionEntry {
        SessionEntry(LoginSession s, std::string user, std::chrono::steady_clock::time_point t)
            : session(std::move(s)), user_id(std::move(user)), last_used(t) {}

        std::mutex mutex;
        LoginSession session;
        std::string user_id;
        std::chrono::steady_clock::time_point last_used;
        bool closed = false;
    };

    /// Locks the entry for the caller; throws Error(invalid_token) for
    /// unknown, closed or idle-expired tokens.
    std::pair<std::shared_ptr<SessionEntry>, std::unique_lock<std::mutex>> acquire(const std::string& token);
    void drop(const std::string& token);
    std::uint64_t next_seed();
    std::string next_token();
    std::chrono::steady_clock::time_point now() const;

    ServiceConfig config_;
    UserStore users_;
    std::atomic<std::uint64_t> counter_{0};
    mutable std::mutex sessions_mutex_;
    std::unordered_map<std::string, std::shared_ptr<SessionEntry>> sessions_;
};

}  // namespace colorpin
