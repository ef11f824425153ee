#include "colorpin/attack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <thread>

#include "colorpin/error.hpp"
#include "colorpin/rng.hpp"

namespace colorpin {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return a * b;
}

std::vector<SymbolPair> sorted_unique(std::vector<SymbolPair> pairs) {
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

}  // namespace

std::uint64_t CandidateSet::sequence_count() const {
    std::uint64_t total = 1;
    for (const auto& pairs : per_position) total = saturating_mul(total, pairs.size());
    return total;
}

std::uint64_t CandidateSet::id_sequence_count() const {
    std::uint64_t total = 1;
    for (const auto& pairs : per_position) {
        std::set<int> fixed;
        for (const auto& p : pairs) fixed.insert(p.fixed);
        total = saturating_mul(total, fixed.size());
    }
    return total;
}

bool CandidateSet::contains(std::span<const SymbolPair> sequence) const {
    if (sequence.size() != per_position.size()) return false;
    for (std::size_t i = 0; i < sequence.size(); ++i) {
        if (!std::binary_search(per_position[i].begin(), per_position[i].end(), sequence[i])) return false;
    }
    return true;
}

SessionTranscript observe(const LoginSession& session) {
    if (session.step_index() != session.k()) {
        throw Error(ErrorCode::incomplete_session, "observer needs a completed session");
    }
    return session.transcript();
}

CandidateSet candidates_single_session(const SessionTranscript& transcript) {
    CandidateSet set;
    for (const auto& step : transcript.steps) {
        set.per_position.push_back(sorted_unique(aligned_pairs(step.board, step.visible)));
    }
    return set;
}

CandidateSet intersect_sessions(std::span<const SessionTranscript> transcripts) {
    if (transcripts.empty()) {
        throw Error(ErrorCode::invalid_argument, "intersection needs at least one transcript");
    }
    CandidateSet result = candidates_single_session(transcripts.front());
    for (const auto& t : transcripts.subspan(1)) {
        if (!(t.spec == transcripts.front().spec) || t.steps.size() != transcripts.front().steps.size()) {
            throw Error(ErrorCode::invalid_argument, "transcripts differ in board or length");
        }
        const CandidateSet next = candidates_single_session(t);
        for (std::size_t i = 0; i < result.per_position.size(); ++i) {
            std::vector<SymbolPair> kept;
            std::set_intersection(result.per_position[i].begin(), result.per_position[i].end(),
                                  next.per_position[i].begin(), next.per_position[i].end(), std::back_inserter(kept));
            result.per_position[i] = std::move(kept);
        }
    }
    return result;
}

LoginSession simulate_honest_session(const BoardSpec& spec, const Credentials& creds, std::uint64_t seed,
                                     int display_l, ShuffleScope scope) {
    SessionOptions options;
    options.k = static_cast<int>(creds.id_password.size());
    options.display_l = display_l;
    options.seed = seed;
    options.scope = scope;
    options.secret = creds;
    LoginSession session("sim", spec, options);
    const auto expected = expected_pair_sequence(creds);
    for (const auto& pair : expected) {
        session.commit_step(offset_aligning(session.current(), pair));
    }
    return session;
}

PointerLog pointer_trace(const SessionTranscript& transcript, bool disclose_origins) {
    PointerLog log;
    for (const auto& step : transcript.steps) {
        const Cell origin = step.board.pointer_origin;
        log.clicks.push_back(torus_wrap(std::int64_t{origin.row} + step.committed_offset.drow,
                                        std::int64_t{origin.col} + step.committed_offset.dcol, transcript.spec.rows,
                                        transcript.spec.cols));
        if (disclose_origins) log.disclosed_origins.push_back(origin);
    }
    return log;
}

CandidateSet mouse_log_inference(const BoardSpec& spec, const PointerLog& log, const SessionTranscript* screen) {
    spec.validate();
    const bool disclosed = !log.disclosed_origins.empty();
    if (disclosed && log.disclosed_origins.size() != log.clicks.size()) {
        throw Error(ErrorCode::invalid_argument, "one disclosed origin per click is required");
    }
    if (screen != nullptr && screen->steps.size() != log.clicks.size()) {
        throw Error(ErrorCode::invalid_argument, "screen recording and pointer log differ in length");
    }

    CandidateSet set;
    const int n = spec.size();
    for (std::size_t i = 0; i < log.clicks.size(); ++i) {
        if (screen == nullptr) {
            // No view of the boards: every pairing is possible.
            std::vector<SymbolPair> all;
            for (int f = 0; f < n; ++f)
                for (int m = 0; m < n; ++m) all.push_back({f, m});
            set.per_position.push_back(std::move(all));
            continue;
        }
        const ObservedStep& step = screen->steps[i];
        std::vector<Cell> origins;
        if (disclosed) {
            origins.push_back(log.disclosed_origins[i]);
        } else {
            for (int c = 0; c < n; ++c) origins.push_back(step.board.cell_at(c));
        }
        std::vector<SymbolPair> pairs;
        for (const Cell origin : origins) {
            BoardState hypothesis = step.board;
            const Cell offset = torus_wrap(std::int64_t{log.clicks[i].row} - origin.row,
                                           std::int64_t{log.clicks[i].col} - origin.col, spec.rows, spec.cols);
            hypothesis.offset = {offset.row, offset.col};
            const auto aligned = aligned_pairs(hypothesis, step.visible);
            pairs.insert(pairs.end(), aligned.begin(), aligned.end());
        }
        set.per_position.push_back(sorted_unique(std::move(pairs)));
    }
    return set;
}

namespace {

TrialOutcome run_trial(const BoardSpec& spec, int k, std::uint64_t trial, std::uint64_t seed,
                       const BreakOptions& options) {
    Rng rng(derive_seed(seed, trial));
    Credentials creds;
    for (int i = 0; i < k; ++i) {
        creds.id_password.push_back(static_cast<int>(rng.below(spec.size())));
        creds.ui_password.push_back(static_cast<int>(rng.below(spec.size())));
    }
    const auto truth = expected_pair_sequence(creds);

    TrialOutcome outcome;
    outcome.trial = trial;
    CandidateSet running;
    for (int s = 1; s <= options.max_sessions; ++s) {
        const auto session = simulate_honest_session(spec, creds, rng.next(), options.display_l, options.scope);
        const auto observed = candidates_single_session(observe(session));
        if (s == 1) {
            running = observed;
        } else {
            for (std::size_t i = 0; i < running.per_position.size(); ++i) {
                std::vector<SymbolPair> kept;
                std::set_intersection(running.per_position[i].begin(), running.per_position[i].end(),
                                      observed.per_position[i].begin(), observed.per_position[i].end(),
                                      std::back_inserter(kept));
                running.per_position[i] = std::move(kept);
            }
        }
        std::vector<int> sizes;
        for (const auto& pairs : running.per_position) sizes.push_back(static_cast<int>(pairs.size()));
        outcome.position_sizes.push_back(sizes);
        outcome.truth_retained = outcome.truth_retained && running.contains(truth);
        if (std::all_of(sizes.begin(), sizes.end(), [](int v) { return v == 1; })) {
            outcome.sessions_needed = s;
            break;
        }
    }
    return outcome;
}

}  // namespace

BreakDistribution sessions_to_break(const BoardSpec& spec, int k, int trials, std::uint64_t seed,
                                    const BreakOptions& options) {
    spec.validate();
    if (trials < 1 || k < 1 || options.max_sessions < 1) {
        throw Error(ErrorCode::invalid_argument, "trials, k and max_sessions must be positive");
    }
    const int l = options.display_l == 0 ? spec.size() : options.display_l;
    BreakDistribution dist;
    dist.single_session_count = 1;
    for (int i = 0; i < k; ++i) dist.single_session_count = saturating_mul(dist.single_session_count, l);
    dist.trials.resize(trials);

    unsigned workers = options.threads != 0 ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(trials));
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (auto t = static_cast<std::uint64_t>(w); t < static_cast<std::uint64_t>(trials); t += workers) {
                dist.trials[t] = run_trial(spec, k, t, seed, options);
            }
        });
    }
    pool.clear();
    return dist;
}

BreakSummary BreakDistribution::summary() const {
    BreakSummary s;
    s.trials = trials.size();
    s.single_session_count = single_session_count;
    std::vector<int> needed;
    for (const auto& t : trials) {
        if (t.sessions_needed) {
            needed.push_back(*t.sessions_needed);
        } else {
            ++s.censored;
        }
    }
    if (needed.empty()) return s;
    std::sort(needed.begin(), needed.end());
    s.mean = std::accumulate(needed.begin(), needed.end(), 0.0) / static_cast<double>(needed.size());
    auto rank = [&needed](double q) {
        const auto r = static_cast<std::size_t>(std::ceil(q * static_cast<double>(needed.size())));
        return needed[std::max<std::size_t>(r, 1) - 1];
    };
    s.p50 = rank(0.5);
    s.p90 = rank(0.9);
    return s;
}

}  // namespace colorpin
