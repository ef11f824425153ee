#pragma once

// Oracles for the tests. They work from raw permutations and cell arithmetic
// and never call the alignment code under test.

#include <optional>
#include <set>
#include <vector>

#include "colorpin/board.hpp"

namespace colorpin::testing {

/// Cursor symbol over fixed symbol f: scan cursor cells for the one whose
/// translate (c + offset) lands on f's cell.
inline int partner_by_scan(const BoardState& s, int f) {
    const int rows = s.spec.rows, cols = s.spec.cols;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int fr = (r + s.offset.drow) % rows;
            const int fc = (c + s.offset.dcol) % cols;
            if (s.fixed_perm[fr * cols + fc] == f) return s.cursor_perm[r * cols + c];
        }
    }
    return -1;
}

/// First offset (row-major search) at which f sits under m.
inline std::optional<TorusOffset> offset_by_search(BoardState s, int f, int m) {
    for (int dr = 0; dr < s.spec.rows; ++dr) {
        for (int dc = 0; dc < s.spec.cols; ++dc) {
            s.offset = {dr, dc};
            if (partner_by_scan(s, f) == m) return s.offset;
        }
    }
    return std::nullopt;
}

/// All (f, m) pairs on screen at the committed offset, restricted to shown symbols.
inline std::set<std::pair<int, int>> pairs_by_scan(const BoardState& s, const std::vector<int>& shown) {
    std::set<std::pair<int, int>> out;
    const std::set<int> visible(shown.begin(), shown.end());
    for (int f = 0; f < s.spec.size(); ++f) {
        const int m = partner_by_scan(s, f);
        if (visible.count(m)) out.insert({f, m});
    }
    return out;
}

}  // namespace colorpin::testing
