#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "colorpin/board.hpp"

namespace colorpin {

/// One entry step as an omniscient screen recorder sees it. `board.offset`
/// equals `committed_offset`; intent (which pair was meant) is never present.
struct ObservedStep {
    BoardState board;
    TorusOffset committed_offset;
    DisplaySubset visible;
    std::string skin;

    bool operator==(const ObservedStep&) const = default;
};

struct SessionTranscript {
    BoardSpec spec;
    std::vector<ObservedStep> steps;

    bool operator==(const SessionTranscript&) const = default;
};

inline constexpr int kTranscriptVersion = 1;

// Board specs: {rows, cols, fixed_symbols, cursor_symbols, fixed_skin,
// cursor_skin}. Permutations are arrays of symbol indices in row-major cell
// order; offsets and cells are [row, col] pairs.
void to_json(nlohmann::json& j, const BoardSpec& spec);
void from_json(const nlohmann::json& j, BoardSpec& spec);
void to_json(nlohmann::json& j, const Cell& cell);
void from_json(const nlohmann::json& j, Cell& cell);
void to_json(nlohmann::json& j, const TorusOffset& offset);
void from_json(const nlohmann::json& j, TorusOffset& offset);

/// Transcript document:
///   {"version": 1, "spec": {...}, "steps": [{"fixed": [...], "cursor": [...],
///    "offset": [r, c], "origin": [r, c], "visible": [...], "skin": "..."}]}
nlohmann::json transcript_to_json(const SessionTranscript& transcript);
SessionTranscript transcript_from_json(const nlohmann::json& j);

}  // namespace colorpin
