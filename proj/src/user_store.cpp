#include "colorpin/user_store.hpp"

#include <fstream>
#include <mutex>

#include "colorpin/error.hpp"

namespace colorpin {

void to_json(nlohmann::json& j, const UserRecord& r) {
    j = r.credential;
    j["board"] = r.board;
    if (r.profile) j["profile"] = *r.profile;
    if (!r.question_order.empty()) j["question_order"] = r.question_order;
    j["created_at"] = r.created_at;
    j["failed_attempts"] = r.failed_attempts;
}

void from_json(const nlohmann::json& j, UserRecord& r) {
    r.credential = j.get<StoredCredential>();
    r.board = j.value("board", "digits-letters");
    if (j.contains("profile")) {
        r.profile = j.at("profile").get<std::string>();
    } else {
        r.profile.reset();
    }
    r.question_order = j.value("question_order", std::vector<int>{});
    r.created_at = j.value("created_at", std::int64_t{0});
    r.failed_attempts = j.value("failed_attempts", 0);
}

UserStore::UserStore(std::optional<std::filesystem::path> path) : path_(std::move(path)) {
    if (!path_) return;
    std::ifstream in(*path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto record = nlohmann::json::parse(line).get<UserRecord>();
        records_[record.user_id()] = std::move(record);
    }
}

void UserStore::insert(const UserRecord& record) {
    std::unique_lock lock(mutex_);
    if (records_.contains(record.user_id())) {
        throw Error(ErrorCode::conflict, "user already exists");
    }
    append(record);
    records_[record.user_id()] = record;
}

void UserStore::update(const UserRecord& record) {
    std::unique_lock lock(mutex_);
    if (!records_.contains(record.user_id())) {
        throw Error(ErrorCode::unknown_user, "unknown user");
    }
    append(record);
    records_[record.user_id()] = record;
}

std::optional<UserRecord> UserStore::find(const std::string& user_id) const {
    std::shared_lock lock(mutex_);
    const auto it = records_.find(user_id);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

std::size_t UserStore::size() const {
    std::shared_lock lock(mutex_);
    return records_.size();
}

void UserStore::append(const UserRecord& record) {
    if (!path_) return;
    std::ofstream out(*path_, std::ios::app);
    if (!out) throw Error(ErrorCode::io, "cannot append to user store " + path_->string());
    out << nlohmann::json(record).dump() << '\n';
}

}  // namespace colorpin
