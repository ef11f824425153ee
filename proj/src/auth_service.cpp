#include "colorpin/auth_service.hpp"

#include <cmath>

#include "colorpin/error.hpp"
#include "colorpin/hashing.hpp"

namespace colorpin {

namespace {

using nlohmann::json;

int status_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_argument:
        case ErrorCode::unknown_symbol: return 400;
        case ErrorCode::unknown_user: return 401;
        case ErrorCode::invalid_token: return 404;
        case ErrorCode::conflict:
        case ErrorCode::session_state:
        case ErrorCode::incomplete_session: return 409;
        case ErrorCode::ceiling_exceeded: return 422;
        case ErrorCode::locked_out: return 423;
        case ErrorCode::io: return 500;
    }
    return 500;
}

HttpResponse error_response(ErrorCode code, const std::string& message) {
    // Unknown users get the same body as any other failed authentication.
    if (code == ErrorCode::unknown_user) {
        return {401, json{{"error", "authentication_failed"}}.dump()};
    }
    return {status_for(code), json{{"error", to_string(code)}, {"message", message}}.dump()};
}

std::vector<std::string> symbols_from(const json& value, const char* field) {
    if (value.is_string()) return tokenize_symbols(value.get<std::string>());
    if (value.is_array()) return value.get<std::vector<std::string>>();
    throw Error(ErrorCode::invalid_argument, std::string(field) + " must be a string or an array of symbols");
}

const json& require(const json& request, const char* field) {
    if (!request.is_object() || !request.contains(field)) {
        throw Error(ErrorCode::invalid_argument, std::string("missing field '") + field + "'");
    }
    return request.at(field);
}

const BoardSpec& board_named(const std::string& name) {
    const auto& boards = builtin_boards();
    const auto it = boards.find(name);
    if (it == boards.end()) {
        throw Error(ErrorCode::invalid_argument, "unknown board '" + name + "'");
    }
    return it->second;
}

json step_ack_json(const LoginSession& session, StepAck ack) {
    return {{"entered", ack.entered}, {"k", ack.k}, {"board_view", board_view_json(session)}};
}

}  // namespace

const std::map<std::string, BoardSpec>& builtin_boards() {
    static const std::map<std::string, BoardSpec> boards = {
        {"digits-letters", BoardSpec::digits_letters()},
        {"digits-colors", BoardSpec::digits_colors()},
    };
    return boards;
}

json board_view_json(const LoginSession& session) {
    const BoardState& state = session.current();
    json cursor = json::array();
    for (int symbol : state.cursor_perm) {
        if (session.visible().contains(symbol)) {
            cursor.push_back(symbol);
        } else {
            cursor.push_back(nullptr);
        }
    }
    return {{"rows", state.spec.rows},
            {"cols", state.spec.cols},
            {"fixed", state.fixed_perm},
            {"cursor", cursor},
            {"offset", state.offset},
            {"origin", state.pointer_origin},
            {"skin", session.skin()},
            {"entered", session.step_index()},
            {"l", session.display_l()}};
}

AuthService::AuthService(ServiceConfig config) : config_(std::move(config)), users_(config_.store_path) {
    if (config_.profile_bank) {
        config_.profile_bank->validate();
    }
    if (!config_.clock) {
        config_.clock = [] { return std::chrono::steady_clock::now(); };
    }
}

std::chrono::steady_clock::time_point AuthService::now() const { return config_.clock(); }

std::uint64_t AuthService::next_seed() {
    const auto n = counter_.fetch_add(1);
    return config_.seed ? derive_seed(*config_.seed, 2 * n) : entropy_seed();
}

std::string AuthService::next_token() {
    if (!config_.seed) return random_salt(16);
    const auto n = counter_.fetch_add(1);
    std::array<std::uint8_t, 16> bytes{};
    const std::uint64_t a = derive_seed(*config_.seed, 2 * n + 1);
    const std::uint64_t b = derive_seed(a, 0);
    for (int i = 0; i < 8; ++i) {
        bytes[i] = static_cast<std::uint8_t>(a >> (8 * i));
        bytes[8 + i] = static_cast<std::uint8_t>(b >> (8 * i));
    }
    return to_hex(bytes);
}

std::optional<UserRecord> AuthService::find_user(const std::string& user_id) const { return users_.find(user_id); }

std::size_t AuthService::active_sessions() const {
    std::lock_guard lock(sessions_mutex_);
    return sessions_.size();
}

json AuthService::create_user(const json& request) {
    const auto user_id = require(request, "user_id").get<std::string>();
    if (user_id.empty()) {
        throw Error(ErrorCode::invalid_argument, "user_id must not be empty");
    }
    const StorageMode mode =
        request.contains("mode") ? storage_mode_from_string(request.at("mode").get<std::string>()) : config_.default_mode;
    UserRecord record;
    record.board = request.value("board", "digits-letters");
    const BoardSpec& spec = board_named(record.board);

    Credentials creds;
    if (request.contains("legacy_pin")) {
        const auto pin = symbols_from(request.at("legacy_pin"), "legacy_pin");
        creds = split_legacy_pin(spec, pin, require(request, "ui_length").get<int>());
    } else if (request.contains("profile_answers")) {
        if (!config_.profile_bank) {
            throw Error(ErrorCode::invalid_argument, "this service has no profile question bank");
        }
        const auto& bank = *config_.profile_bank;
        if (bank.n != spec.size()) {
            throw Error(ErrorCode::invalid_argument, "question bank choice count differs from the board size");
        }
        const auto id = symbols_from(require(request, "id_password"), "id_password");
        for (const auto& s : id) creds.id_password.push_back(spec.fixed_index(s));
        creds.ui_password = answers_as_cursor_symbols(
            bank, ProfileAnswerSet{request.at("profile_answers").get<std::vector<int>>()});
        if (creds.id_password.size() != creds.ui_password.size()) {
            throw Error(ErrorCode::invalid_argument, "profile users need one ID symbol per question");
        }
        record.profile = bank.id;
        if (!config_.profile_order_per_session) {
            record.question_order = draw_question_order(bank.k(), next_seed());
        }
    } else {
        const auto id = symbols_from(require(request, "id_password"), "id_password");
        const auto ui = symbols_from(require(request, "ui_password"), "ui_password");
        creds = make_credentials(spec, id, ui);
    }
    creds.validate(spec);

    const CredentialVault* vault = config_.vault ? &*config_.vault : nullptr;
    record.credential = make_stored_credential(spec, user_id, creds, mode, vault, config_.iterations);
    record.created_at =
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count();
    users_.insert(record);
    return {{"user_id", user_id},
            {"k", record.credential.id_length},
            {"mode", to_string(mode)},
            {"board", record.board}};
}

json AuthService::open_login(const json& request) {
    const auto user_id = require(request, "user_id").get<std::string>();
    const auto record = users_.find(user_id);
    if (!record) {
        throw Error(ErrorCode::unknown_user, "unknown user");
    }
    if (record->failed_attempts >= config_.lockout_threshold) {
        throw Error(ErrorCode::locked_out, "account locked after repeated failures");
    }
    const BoardSpec& spec = board_named(record->board);
    const StoredCredential& stored = record->credential;

    SessionOptions options;
    options.k = stored.id_length;
    options.display_l = config_.display_l;
    options.ui_length = stored.ui_length;
    options.seed = next_seed();
    if (stored.mode == StorageMode::plaintext_recoverable) {
        if (!config_.vault || !stored.sealed) {
            throw Error(ErrorCode::io, "credential vault unavailable");
        }
        options.secret = config_.vault->open(user_id, *stored.sealed);
    } else if (options.display_l != 0 && options.display_l != spec.size()) {
        // The shown subset must include the right cursor symbol, which a
        // hash-only server cannot know.
        options.display_l = 0;
    }
    if (record->profile) {
        if (!config_.profile_bank || config_.profile_bank->id != *record->profile) {
            throw Error(ErrorCode::io, "profile question bank unavailable");
        }
        const auto& bank = *config_.profile_bank;
        options.ui_slots = record->question_order.empty() ? draw_question_order(bank.k(), next_seed())
                                                          : record->question_order;
        for (int step = 0; step < bank.k(); ++step) {
            options.step_skins.push_back(skin_for_step(bank, options.ui_slots, step));
        }
    }

    LoginSession session(next_token(), spec, std::move(options));
    json response = {{"token", session.id()},
                     {"k", session.k()},
                     {"spec", spec},
                     {"board_view", board_view_json(session)}};
    auto entry = std::make_shared<SessionEntry>(std::move(session), user_id, now());
    std::lock_guard lock(sessions_mutex_);
    sessions_.emplace(entry->session.id(), std::move(entry));
    return response;
}

std::pair<std::shared_ptr<AuthService::SessionEntry>, std::unique_lock<std::mutex>> AuthService::acquire(
    const std::string& token) {
    std::shared_ptr<SessionEntry> entry;
    {
        std::lock_guard lock(sessions_mutex_);
        const auto it = sessions_.find(token);
        if (it == sessions_.end()) {
            throw Error(ErrorCode::invalid_token, "unknown or expired session");
        }
        entry = it->second;
    }
    std::unique_lock entry_lock(entry->mutex);
    if (entry->closed || now() - entry->last_used > config_.idle_timeout) {
        entry->closed = true;
        entry_lock.unlock();
        drop(token);
        throw Error(ErrorCode::invalid_token, "unknown or expired session");
    }
    entry->last_used = now();
    return {std::move(entry), std::move(entry_lock)};
}

void AuthService::drop(const std::string& token) {
    std::lock_guard lock(sessions_mutex_);
    sessions_.erase(token);
}

json AuthService::apply_move(const std::string& token, const json& order) {
    if (!order.is_object()) {
        throw Error(ErrorCode::invalid_argument, "move order must be an object");
    }
    const bool has_delta = order.contains("delta");
    const bool has_at = order.contains("at");
    const auto kind = require(order, "kind").get<std::string>();
    if (has_delta == has_at) {
        throw Error(ErrorCode::invalid_argument, "move order needs exactly one of 'delta' or 'at'");
    }
    if ((kind == "relative") != has_delta || (kind == "absolute") != has_at) {
        throw Error(ErrorCode::invalid_argument, "move payload does not match its kind");
    }

    auto [entry, lock] = acquire(token);
    LoginSession& session = entry->session;
    if (has_delta) {
        const auto& d = order.at("delta");
        if (!d.is_array() || d.size() != 2 || !d[0].is_number_integer() || !d[1].is_number_integer()) {
            throw Error(ErrorCode::invalid_argument, "delta must be [drow, dcol] integers");
        }
        session.move({d[0].get<std::int64_t>(), d[1].get<std::int64_t>()});
    } else {
        const auto& a = order.at("at");
        if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
            throw Error(ErrorCode::invalid_argument, "at must be [row, col] in [0,1]");
        }
        const double y = a[0].get<double>();
        const double x = a[1].get<double>();
        if (!(y >= 0.0 && y <= 1.0 && x >= 0.0 && x <= 1.0)) {
            throw Error(ErrorCode::invalid_argument, "absolute coordinates must lie in [0,1]");
        }
        const BoardSpec& spec = session.spec();
        const int row = std::min(static_cast<int>(std::floor(y * spec.rows)), spec.rows - 1);
        const int col = std::min(static_cast<int>(std::floor(x * spec.cols)), spec.cols - 1);
        // The pointer sits at origin + offset, so bringing it to (row, col)
        // means offset = target - origin.
        const Cell origin = session.current().pointer_origin;
        session.set_offset({row - origin.row, col - origin.col});
    }
    return {{"board_view", board_view_json(session)}};
}

json AuthService::commit(const std::string& token) {
    auto [entry, lock] = acquire(token);
    const StepAck ack = entry->session.commit_current();
    return step_ack_json(entry->session, ack);
}

json AuthService::reset(const std::string& token) {
    auto [entry, lock] = acquire(token);
    const StepAck ack = entry->session.reset_last();
    return step_ack_json(entry->session, ack);
}

json AuthService::finalize(const std::string& token) {
    auto [entry, lock] = acquire(token);
    auto record = users_.find(entry->user_id);
    if (!record) {
        throw Error(ErrorCode::unknown_user, "unknown user");
    }
    ValidationReport report;
    try {
        report = validate_session(entry->session, record->credential, config_.limits);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ceiling_exceeded) {
            entry->closed = true;
            lock.unlock();
            drop(token);
        }
        throw;
    }
    entry->closed = true;
    lock.unlock();
    drop(token);

    record->failed_attempts = report.success ? 0 : record->failed_attempts + 1;
    users_.update(*record);
    return {{"result", report.success ? "success" : "failure"}};
}

HttpResponse AuthService::dispatch(std::string_view method, std::string_view path, std::string_view body) {
    try {
        if (method != "POST") {
            return {405, json{{"error", "method_not_allowed"}}.dump()};
        }
        const json request = body.empty() ? json::object() : json::parse(body);

        if (path == "/users") {
            return {201, create_user(request).dump()};
        }
        if (path == "/sessions") {
            return {201, open_login(request).dump()};
        }
        constexpr std::string_view prefix = "/sessions/";
        if (path.starts_with(prefix)) {
            const auto rest = path.substr(prefix.size());
            const auto slash = rest.find('/');
            if (slash != std::string_view::npos && slash > 0) {
                const std::string token(rest.substr(0, slash));
                const auto action = rest.substr(slash + 1);
                if (action == "move") return {200, apply_move(token, request).dump()};
                if (action == "commit") return {200, commit(token).dump()};
                if (action == "reset") return {200, reset(token).dump()};
                if (action == "finalize") return {200, finalize(token).dump()};
            }
        }
        return {404, json{{"error", "not_found"}}.dump()};
    } catch (const Error& e) {
        return error_response(e.code(), e.what());
    } catch (const json::exception& e) {
        return error_response(ErrorCode::invalid_argument, std::string("malformed request: ") + e.what());
    } catch (const std::exception& e) {
        return error_response(ErrorCode::io, e.what());
    }
}

}  // namespace colorpin
