#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "colorpin/board.hpp"

namespace colorpin {

/// ID password over fixed symbols and UI password over cursor symbols, both
/// as symbol indices of one BoardSpec.
struct Credentials {
    std::vector<int> id_password;
    std::vector<int> ui_password;

    /// Requires 1 <= |ui| <= |id| and every index inside the board.
    void validate(const BoardSpec& spec) const;

    bool operator==(const Credentials&) const = default;
};

/// Splits "3141" into {"3","1","4","1"}, or "RED,GREEN" at the commas.
std::vector<std::string> tokenize_symbols(std::string_view text);

Credentials make_credentials(const BoardSpec& spec, std::span<const std::string> id_symbols,
                             std::span<const std::string> ui_symbols);

/// Legacy single PIN: the first |pin| - ui_length symbols are the ID
/// password, the trailing ui_length symbols the UI password. A trailing symbol
/// that is a cursor symbol is taken as is; a fixed symbol maps to the cursor
/// symbol with the same index (so on the digit/letter board 3 -> C).
Credentials split_legacy_pin(const BoardSpec& spec, std::span<const std::string> pin, int ui_length);

/// Step i uses UI slot i mod m.
std::vector<int> modulo_slots(int k, int m);

/// Pair i = (id[i], ui[slots[i]]).
std::vector<SymbolPair> expected_pair_sequence(const Credentials& creds, std::span<const int> slots);
/// Same with the modulo rule.
std::vector<SymbolPair> expected_pair_sequence(const Credentials& creds);

std::vector<std::string> id_symbols(const BoardSpec& spec, const Credentials& creds);
std::vector<std::string> ui_symbols(const BoardSpec& spec, const Credentials& creds);

}  // namespace colorpin
