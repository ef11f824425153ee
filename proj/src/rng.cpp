#include "colorpin/rng.hpp"

#include <limits>

#include "colorpin/error.hpp"

namespace colorpin {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::invalid_argument: return "invalid_argument";
        case ErrorCode::unknown_symbol: return "unknown_symbol";
        case ErrorCode::unknown_user: return "unknown_user";
        case ErrorCode::conflict: return "conflict";
        case ErrorCode::session_state: return "session_state";
        case ErrorCode::incomplete_session: return "incomplete_session";
        case ErrorCode::ceiling_exceeded: return "candidate_ceiling_exceeded";
        case ErrorCode::invalid_token: return "invalid_token";
        case ErrorCode::locked_out: return "locked_out";
        case ErrorCode::io: return "io";
    }
    return "unknown";
}

std::uint64_t Rng::below(std::uint64_t bound) {
    if (bound == 0) {
        throw Error(ErrorCode::invalid_argument, "Rng::below: bound must be positive");
    }
    // Reject the top partial bucket so every residue is equally likely.
    const std::uint64_t limit =
        std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = engine_();
    while (x >= limit) {
        x = engine_();
    }
    return x % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t entropy_seed() {
    std::random_device device;
    return (static_cast<std::uint64_t>(device()) << 32) ^ device();
}

}  // namespace colorpin
