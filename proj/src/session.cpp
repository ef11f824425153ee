#include "colorpin/session.hpp"

#include <algorithm>

#include "colorpin/error.hpp"
#include "colorpin/hashing.hpp"
#include "colorpin/vault.hpp"

namespace colorpin {

const char* to_string(SessionStatus status) noexcept {
    switch (status) {
        case SessionStatus::in_progress: return "in_progress";
        case SessionStatus::validated_success: return "validated_success";
        case SessionStatus::validated_failure: return "validated_failure";
        case SessionStatus::aborted: return "aborted";
    }
    return "unknown";
}

LoginSession::LoginSession(std::string session_id, BoardSpec spec, SessionOptions options)
    : id_(std::move(session_id)),
      k_(options.k),
      display_l_(options.display_l == 0 ? spec.size() : options.display_l),
      scope_(options.scope),
      step_skins_(std::move(options.step_skins)),
      rng_(options.seed),
      state_(BoardState::identity(std::move(spec))) {
    const int n = state_.spec.size();
    if (k_ < 1) {
        throw Error(ErrorCode::invalid_argument, "password length k must be >= 1");
    }
    if (display_l_ < 2 || display_l_ > n) {
        throw Error(ErrorCode::invalid_argument, "display l must lie in [2, n]");
    }
    if (options.secret) {
        options.secret->validate(state_.spec);
        if (static_cast<int>(options.secret->id_password.size()) != k_) {
            throw Error(ErrorCode::invalid_argument, "secret ID length differs from k");
        }
        ui_length_ = static_cast<int>(options.secret->ui_password.size());
        if (options.ui_length != 0 && options.ui_length != ui_length_) {
            throw Error(ErrorCode::invalid_argument, "secret UI length differs from ui_length");
        }
    } else {
        ui_length_ = options.ui_length == 0 ? k_ : options.ui_length;
    }
    if (ui_length_ < 1 || ui_length_ > k_) {
        throw Error(ErrorCode::invalid_argument, "UI length must lie in [1, k]");
    }
    ui_slots_ = options.ui_slots.empty() ? modulo_slots(k_, ui_length_) : std::move(options.ui_slots);
    if (static_cast<int>(ui_slots_.size()) != k_ ||
        std::any_of(ui_slots_.begin(), ui_slots_.end(), [this](int s) { return s < 0 || s >= ui_length_; })) {
        throw Error(ErrorCode::invalid_argument, "UI slots must map each step into [0, m)");
    }
    if (!step_skins_.empty() && static_cast<int>(step_skins_.size()) != k_) {
        throw Error(ErrorCode::invalid_argument, "one skin per step is required");
    }
    if (options.secret) {
        expected_ = expected_pair_sequence(*options.secret, ui_slots_);
    } else if (display_l_ < n) {
        throw Error(ErrorCode::invalid_argument, "partial display needs plaintext-recoverable credentials");
    }
    redraw();
}

void LoginSession::require_in_progress() const {
    if (status_ != SessionStatus::in_progress) {
        throw Error(ErrorCode::session_state, std::string("session is ") + to_string(status_));
    }
}

void LoginSession::redraw() {
    state_ = shuffle(state_, rng_.next(), scope_);
    const int step = step_index();
    if (step < k_ && display_l_ < state_.spec.size()) {
        visible_ = visible_subset(state_, (*expected_)[step].cursor, display_l_, rng_.next());
    } else {
        visible_ = DisplaySubset::all(state_.spec.size());
    }
    if (step < k_ && !step_skins_.empty()) {
        skin_ = step_skins_[step];
    } else {
        skin_ = state_.spec.cursor_skin;
    }
}

void LoginSession::move(Displacement delta) {
    require_in_progress();
    state_ = move_cursor(state_, delta);
}

void LoginSession::set_offset(TorusOffset offset) {
    require_in_progress();
    const Cell wrapped = torus_wrap(offset.drow, offset.dcol, state_.spec.rows, state_.spec.cols);
    state_.offset = {wrapped.row, wrapped.col};
}

StepAck LoginSession::commit_step(TorusOffset offset) {
    require_in_progress();
    if (step_index() >= k_) {
        throw Error(ErrorCode::session_state, "all k steps are already entered");
    }
    set_offset(offset);
    const int step = step_index();
    bool match = false;
    if (expected_) {
        const SymbolPair want = (*expected_)[step];
        match = aligned_pair_at(state_, want.fixed).cursor == want.cursor;
    }
    steps_.push_back({state_, state_.offset, visible_, skin_});
    matches_.push_back(match);
    redraw();
    return {step_index(), k_};
}

StepAck LoginSession::reset_last() {
    require_in_progress();
    if (steps_.empty()) {
        throw Error(ErrorCode::session_state, "nothing to reset");
    }
    steps_.pop_back();
    matches_.pop_back();
    redraw();
    return {step_index(), k_};
}

void LoginSession::abort() {
    require_in_progress();
    status_ = SessionStatus::aborted;
}

SessionTranscript LoginSession::transcript() const { return {state_.spec, steps_}; }

namespace {

ValidationReport validate_by_enumeration(const LoginSession& session, std::span<const ObservedStep> steps,
                                         const StoredCredential& stored, const ValidationLimits& limits) {
    const BoardSpec& spec = session.spec();
    std::vector<std::vector<SymbolPair>> per_step;
    std::uint64_t total = 1;
    for (const auto& step : steps) {
        per_step.push_back(aligned_pairs(step.board, step.visible));
        total *= per_step.back().size();
        if (total > limits.candidate_ceiling) {
            throw Error(ErrorCode::ceiling_exceeded, "candidate count exceeds the validation ceiling");
        }
    }

    ValidationReport report;
    report.candidates_enumerated = total;
    const int k = static_cast<int>(steps.size());
    const auto slots = session.ui_slots();
    std::vector<std::size_t> choice(k, 0);
    std::vector<std::string> id(k);
    std::vector<std::string> ui(session.ui_length());
    std::vector<int> ui_index(session.ui_length());

    // Odometer over the per-step pair sets. A candidate only reaches the hash
    // when its cursor symbols agree wherever two steps share a UI slot.
    for (std::uint64_t c = 0; c < total; ++c) {
        std::fill(ui_index.begin(), ui_index.end(), -1);
        bool consistent = true;
        for (int i = 0; i < k && consistent; ++i) {
            const SymbolPair pair = per_step[i][choice[i]];
            id[i] = spec.fixed_symbols[pair.fixed];
            int& slot = ui_index[slots[i]];
            if (slot == -1) {
                slot = pair.cursor;
            } else if (slot != pair.cursor) {
                consistent = false;
            }
        }
        if (consistent) {
            for (std::size_t s = 0; s < ui.size(); ++s) ui[s] = spec.cursor_symbols[ui_index[s]];
            ++report.hashes_computed;
            if (iterated_hash(stored.salt, id, ui, stored.iterations) == stored.digest) {
                report.success = true;
            }
        }
        for (int i = k - 1; i >= 0; --i) {
            if (++choice[i] < per_step[i].size()) break;
            choice[i] = 0;
        }
    }
    return report;
}

}  // namespace

ValidationReport validate_session(LoginSession& session, const StoredCredential& stored,
                                  const ValidationLimits& limits) {
    session.require_in_progress();
    if (session.step_index() != session.k()) {
        throw Error(ErrorCode::incomplete_session, "validation needs all k steps entered");
    }
    if (stored.id_length != 0 && stored.id_length != session.k()) {
        throw Error(ErrorCode::invalid_argument, "stored credential length differs from the session");
    }

    ValidationReport report;
    if (stored.mode == StorageMode::plaintext_recoverable) {
        if (!session.expected_) {
            throw Error(ErrorCode::invalid_argument, "plaintext validation needs the recovered credentials");
        }
        report.success = std::all_of(session.matches_.begin(), session.matches_.end(), [](bool b) { return b; });
    } else {
        if (stored.ui_length != 0 && stored.ui_length != session.ui_length()) {
            throw Error(ErrorCode::invalid_argument, "stored UI length differs from the session");
        }
        report = validate_by_enumeration(session, session.steps_, stored, limits);
    }
    session.status_ = report.success ? SessionStatus::validated_success : SessionStatus::validated_failure;
    return report;
}

LoginSession SessionEngine::begin_session(const std::string& user_id, const BoardSpec& spec, int k, int display_l,
                                          std::uint64_t seed, ShuffleScope scope) const {
    const auto stored = store_.find(user_id);
    if (!stored) {
        throw Error(ErrorCode::unknown_user, "unknown user");
    }
    if (k < 1) {
        throw Error(ErrorCode::invalid_argument, "password length k must be >= 1");
    }
    if (k != stored->id_length) {
        throw Error(ErrorCode::invalid_argument, "k differs from the stored ID password length");
    }
    SessionOptions options;
    options.k = k;
    options.display_l = display_l;
    options.seed = seed;
    options.scope = scope;
    options.ui_length = stored->ui_length;
    if (stored->mode == StorageMode::plaintext_recoverable) {
        if (vault_ == nullptr || !stored->sealed) {
            throw Error(ErrorCode::invalid_argument, "plaintext-recoverable credential cannot be opened");
        }
        options.secret = vault_->open(user_id, *stored->sealed);
    }
    return LoginSession(random_salt(16), spec, std::move(options));
}

}  // namespace colorpin
