#pragma once

// Randomized sessions validated once per storage mode on the same transcript.

#include "colorpin/credential_store.hpp"
#include "colorpin/hashing.hpp"
#include "colorpin/session.hpp"
#include "colorpin/vault.hpp"
#include "test_support.hpp"

namespace colorpin::testing {

struct ModeVerdicts {
    bool intended_success = false;  ///< every commit aligned the expected pair
    bool plaintext = false;
    bool hash_only = false;
};

/// Draws a board, k in [1, 4], m in [1, k], optional shuffled UI slots and
/// partial display, then commits each step at the expected pair or, with
/// probability 1/4, at some other shown pair.
inline ModeVerdicts run_in_both_modes(Rng& rng, const CredentialVault& vault, int iterations) {
    const BoardSpec spec = rng.below(2) == 0 ? BoardSpec::digits_letters() : BoardSpec::digits_colors();
    const int n = spec.size();
    const int k = 1 + static_cast<int>(rng.below(4));
    const int m = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
    Credentials creds;
    for (int i = 0; i < k; ++i) creds.id_password.push_back(static_cast<int>(rng.below(n)));
    for (int i = 0; i < m; ++i) creds.ui_password.push_back(static_cast<int>(rng.below(n)));

    SessionOptions options;
    options.k = k;
    options.seed = rng.next();
    options.secret = creds;
    options.display_l = rng.below(3) == 0 ? 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1))) : 0;
    if (m == k && rng.below(2) == 0) {
        options.ui_slots.resize(k);
        for (int i = 0; i < k; ++i) options.ui_slots[i] = i;
        rng.shuffle(std::span<int>(options.ui_slots));
    }
    const auto expected =
        expected_pair_sequence(creds, options.ui_slots.empty() ? modulo_slots(k, m) : options.ui_slots);

    LoginSession session("eq", spec, options);
    ModeVerdicts out;
    out.intended_success = true;
    for (int i = 0; i < k; ++i) {
        int want = expected[i].cursor;
        if (rng.below(4) == 0) {
            const auto& shown = session.visible().shown;
            want = shown[rng.below(shown.size())];
        }
        out.intended_success = out.intended_success && want == expected[i].cursor;
        const auto offset = offset_by_search(session.current(), expected[i].fixed, want);
        session.commit_step(*offset);
    }

    const std::string salt = random_salt(8);
    auto hashed = session;
    out.plaintext = validate_session(
                        session, make_stored_credential(spec, "u", creds, StorageMode::plaintext_recoverable, &vault,
                                                        iterations, salt))
                        .success;
    out.hash_only =
        validate_session(hashed, make_stored_credential(spec, "u", creds, StorageMode::hash_only, nullptr, iterations, salt))
            .success;
    return out;
}

}  // namespace colorpin::testing
