#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "colorpin/board.hpp"
#include "colorpin/credentials.hpp"
#include "colorpin/session.hpp"
#include "colorpin/transcript.hpp"

namespace colorpin {

/// Per entry position, the (fixed, cursor) pairs an observer cannot rule out.
struct CandidateSet {
    std::vector<std::vector<SymbolPair>> per_position;  // each sorted, unique

    /// Number of pair sequences (product of the position sizes), saturating.
    [[nodiscard]] std::uint64_t sequence_count() const;
    /// Number of distinct ID passwords among those sequences.
    [[nodiscard]] std::uint64_t id_sequence_count() const;
    [[nodiscard]] bool contains(std::span<const SymbolPair> sequence) const;

    bool operator==(const CandidateSet&) const = default;
};

/// What a screen recorder captured from a finished session. Throws
/// Error(incomplete_session) before all k steps are committed.
SessionTranscript observe(const LoginSession& session);

/// Pairs aligned at each committed offset, restricted to the shown symbols.
CandidateSet candidates_single_session(const SessionTranscript& transcript);

/// Positionwise intersection. Throws Error(invalid_argument) on an empty list
/// or when specs or step counts differ.
CandidateSet intersect_sessions(std::span<const SessionTranscript> transcripts);

/// Runs a session for a user who always aligns the right pair.
LoginSession simulate_honest_session(const BoardSpec& spec, const Credentials& creds, std::uint64_t seed,
                                     int display_l = 0, ShuffleScope scope = ShuffleScope::both);

/// What a mouse logger records: the absolute pointer cell at each click.
/// The pointer starts every step on the random origin and the board offset
/// follows its displacement, so click = wrap(origin + committed offset).
struct PointerLog {
    std::vector<Cell> clicks;
    /// Empty unless the origins leaked (ablation).
    std::vector<Cell> disclosed_origins;
};

PointerLog pointer_trace(const SessionTranscript& transcript, bool disclose_origins = false);

/// Candidate pairs from a pointer log. Without origins every offset is a
/// hypothesis; with origins the committed offset is exact. `screen` supplies
/// the recorded permutations and shown symbols (its committed offsets are
/// not used); without it nothing narrows the pairs at all.
CandidateSet mouse_log_inference(const BoardSpec& spec, const PointerLog& log,
                                 const SessionTranscript* screen = nullptr);

struct BreakOptions {
    int display_l = 0;
    /// Trials still ambiguous after this many sessions are reported censored.
    int max_sessions = 200;
    ShuffleScope scope = ShuffleScope::both;
    unsigned threads = 0;  ///< 0 means hardware concurrency
};

struct TrialOutcome {
    std::uint64_t trial = 0;
    std::optional<int> sessions_needed;
    /// position_sizes[s][i]: candidate pairs at position i after s+1 sessions.
    std::vector<std::vector<int>> position_sizes;
    bool truth_retained = true;
};

struct BreakSummary {
    std::uint64_t trials = 0;
    std::uint64_t censored = 0;
    std::optional<double> mean;
    std::optional<int> p50;
    std::optional<int> p90;
    std::uint64_t single_session_count = 0;
};

struct BreakDistribution {
    std::vector<TrialOutcome> trials;
    std::uint64_t single_session_count = 0;

    [[nodiscard]] BreakSummary summary() const;
};

/// Monte Carlo: draw random credentials per trial, replay honest sessions
/// with fresh shuffles and intersect until every position is a single pair.
/// Trial t uses the stream derive_seed(seed, t).
BreakDistribution sessions_to_break(const BoardSpec& spec, int k, int trials, std::uint64_t seed,
                                    const BreakOptions& options = {});

}  // namespace colorpin
