#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace colorpin {

/// Two ordered symbol lists of equal length n = rows * cols. Position i in
/// both lists is the shared number that associates fixed symbol i with cursor
/// symbol i, whatever the skins render them as.
struct BoardSpec {
    int rows = 0;
    int cols = 0;
    std::vector<std::string> fixed_symbols;
    std::vector<std::string> cursor_symbols;
    std::string fixed_skin = "digits";
    std::string cursor_skin = "letters";

    [[nodiscard]] int size() const noexcept { return rows * cols; }

    /// Throws Error(invalid_argument) when dimensions, list sizes or
    /// uniqueness are violated.
    void validate() const;

    [[nodiscard]] std::optional<int> find_fixed(std::string_view symbol) const;
    [[nodiscard]] std::optional<int> find_cursor(std::string_view symbol) const;
    /// Like find_*, but throws Error(unknown_symbol).
    [[nodiscard]] int fixed_index(std::string_view symbol) const;
    [[nodiscard]] int cursor_index(std::string_view symbol) const;

    /// 3x3 digits 1..9 under letters A..I.
    static BoardSpec digits_letters();
    /// 2x5 digits 1..9,0 under the ten colors BLACK..GRAY.
    static BoardSpec digits_colors();
    /// rows x cols with fixed symbols "1".."n" and cursor symbols "A".. (or
    /// "M1".."Mn" beyond 26).
    static BoardSpec numbered(int rows, int cols);

    bool operator==(const BoardSpec&) const = default;
};

struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

struct TorusOffset {
    int drow = 0;
    int dcol = 0;
    auto operator<=>(const TorusOffset&) const = default;
};

/// Unreduced integer translation, e.g. a pointer displacement in cells.
struct Displacement {
    std::int64_t drow = 0;
    std::int64_t dcol = 0;
};

/// Symbol indices into BoardSpec::fixed_symbols / cursor_symbols.
struct SymbolPair {
    int fixed = 0;
    int cursor = 0;
    auto operator<=>(const SymbolPair&) const = default;
};

/// Cell (row-major linear index) -> symbol index.
using Permutation = std::vector<int>;

Cell torus_wrap(std::int64_t row, std::int64_t col, int rows, int cols);

/// Everything drawn on screen at one entry step.
///
/// Alignment convention: cursor cell c covers fixed cell wrap(c + offset), so
/// the cursor symbol shown over fixed cell p is cursor_perm[wrap(p - offset)].
struct BoardState {
    BoardSpec spec;
    Permutation fixed_perm;
    Permutation cursor_perm;
    TorusOffset offset;
    Cell pointer_origin;

    /// Both permutations in index order, zero offset, origin (0,0).
    static BoardState identity(BoardSpec spec);

    void validate() const;

    [[nodiscard]] int linear(Cell cell) const noexcept { return cell.row * spec.cols + cell.col; }
    [[nodiscard]] Cell cell_at(int linear_index) const noexcept {
        return {linear_index / spec.cols, linear_index % spec.cols};
    }
    [[nodiscard]] Cell fixed_cell_of(int fixed_symbol) const;
    [[nodiscard]] Cell cursor_cell_of(int cursor_symbol) const;
    /// Cursor symbol currently drawn over the given fixed cell.
    [[nodiscard]] int cursor_over(Cell fixed_cell) const;

    bool operator==(const BoardState&) const = default;
};

BoardState move_cursor(const BoardState& state, Displacement delta);

/// result[f] = cursor symbol aligned with fixed symbol f.
std::vector<int> alignment_map(const BoardState& state);

SymbolPair aligned_pair_at(const BoardState& state, int fixed_symbol);
std::pair<std::string, std::string> aligned_pair_at(const BoardState& state, std::string_view fixed_symbol);

/// The offset at which `pair` is aligned.
TorusOffset offset_aligning(const BoardState& state, SymbolPair pair);

enum class ShuffleScope { both, fixed_only, cursor_only };

/// Fresh permutations (per scope), zero offset and a new pointer origin, all
/// drawn from Rng(seed).
BoardState shuffle(const BoardState& state, std::uint64_t seed, ShuffleScope scope = ShuffleScope::both);

/// Cursor symbols shown at one step (sorted indices).
struct DisplaySubset {
    std::vector<int> shown;

    [[nodiscard]] bool contains(int cursor_symbol) const;
    bool operator==(const DisplaySubset&) const = default;

    static DisplaySubset all(int n);
};

/// `l` cursor symbols including `correct_cursor`; the l-1 decoys are drawn
/// uniformly without replacement from Rng(seed).
DisplaySubset visible_subset(const BoardState& state, int correct_cursor, int l, std::uint64_t seed);

/// Pairs aligned at the state's current offset whose cursor symbol is shown.
std::vector<SymbolPair> aligned_pairs(const BoardState& state, const DisplaySubset& visible);

}  // namespace colorpin
