#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colorpin/board.hpp"
#include "colorpin/credential_store.hpp"
#include "colorpin/credentials.hpp"
#include "colorpin/rng.hpp"
#include "colorpin/transcript.hpp"

namespace colorpin {

class CredentialVault;

enum class SessionStatus { in_progress, validated_success, validated_failure, aborted };

const char* to_string(SessionStatus status) noexcept;

/// The only per-step feedback: how many keys are entered so far.
struct StepAck {
    int entered = 0;
    int k = 0;
    bool operator==(const StepAck&) const = default;
};

struct SessionOptions {
    int k = 0;
    /// Cursor symbols shown per step; 0 means all n.
    int display_l = 0;
    std::uint64_t seed = 0;
    ShuffleScope scope = ShuffleScope::both;
    /// Known only in plaintext-recoverable mode. Required for partial display,
    /// because the shown subset must include the correct cursor symbol.
    std::optional<Credentials> secret;
    /// UI password length m. 0 takes it from `secret`, else k.
    int ui_length = 0;
    /// UI slot used at each step; empty means the modulo rule i mod m.
    std::vector<int> ui_slots;
    /// Cursor skin per step; empty means the board's cursor skin throughout.
    std::vector<std::string> step_skins;
};

struct ValidationLimits {
    std::uint64_t candidate_ceiling = 10'000'000;
};

struct ValidationReport {
    bool success = false;
    std::uint64_t candidates_enumerated = 0;
    std::uint64_t hashes_computed = 0;
};

class LoginSession;

/// Plaintext mode: success iff every committed step aligned its expected pair.
/// Hash-only mode: hashes every pair sequence consistent with the transcript
/// and succeeds iff one matches the stored digest. Throws
/// Error(incomplete_session) before k commits and Error(ceiling_exceeded)
/// when the candidate count passes the ceiling.
ValidationReport validate_session(LoginSession& session, const StoredCredential& stored,
                                  const ValidationLimits& limits = {});

/// Server-side state of one login attempt. Operations on one session must be
/// serialized by the caller; distinct sessions are independent.
class LoginSession {
public:
    LoginSession(std::string session_id, BoardSpec spec, SessionOptions options);

    [[nodiscard]] const std::string& id() const noexcept { return id_; }
    [[nodiscard]] const BoardSpec& spec() const noexcept { return state_.spec; }
    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] int step_index() const noexcept { return static_cast<int>(steps_.size()); }
    [[nodiscard]] int display_l() const noexcept { return display_l_; }
    [[nodiscard]] int ui_length() const noexcept { return ui_length_; }
    [[nodiscard]] std::span<const int> ui_slots() const noexcept { return ui_slots_; }
    [[nodiscard]] SessionStatus status() const noexcept { return status_; }

    /// Board, shown subset and skin the user is looking at right now.
    [[nodiscard]] const BoardState& current() const noexcept { return state_; }
    [[nodiscard]] const DisplaySubset& visible() const noexcept { return visible_; }
    [[nodiscard]] const std::string& skin() const noexcept { return skin_; }

    void move(Displacement delta);
    void set_offset(TorusOffset offset);

    /// Records the board at `offset`, reshuffles, and acknowledges with the
    /// entered count only.
    StepAck commit_step(TorusOffset offset);
    StepAck commit_current() { return commit_step(state_.offset); }
    StepAck reset_last();
    void abort();

    /// Committed steps as an observer records them.
    [[nodiscard]] SessionTranscript transcript() const;

    friend ValidationReport validate_session(LoginSession&, const StoredCredential&, const ValidationLimits&);

private:
    void require_in_progress() const;
    void redraw();

    std::string id_;
    int k_;
    int display_l_;
    int ui_length_;
    ShuffleScope scope_;
    std::vector<int> ui_slots_;
    std::vector<std::string> step_skins_;
    std::optional<std::vector<SymbolPair>> expected_;
    Rng rng_;

    BoardState state_;
    DisplaySubset visible_;
    std::string skin_;
    std::vector<ObservedStep> steps_;
    std::vector<bool> matches_;
    SessionStatus status_ = SessionStatus::in_progress;
};

/// Opens sessions for users in a credential store.
class SessionEngine {
public:
    SessionEngine(const CredentialStore& store, const CredentialVault* vault) : store_(store), vault_(vault) {}

    /// Throws Error(unknown_user) for a missing user and
    /// Error(invalid_argument) when k disagrees with the stored ID length.
    [[nodiscard]] LoginSession begin_session(const std::string& user_id, const BoardSpec& spec, int k, int display_l,
                                             std::uint64_t seed, ShuffleScope scope = ShuffleScope::both) const;

    [[nodiscard]] const CredentialStore& store() const noexcept { return store_; }

private:
    const CredentialStore& store_;
    const CredentialVault* vault_;
};

}  // namespace colorpin
