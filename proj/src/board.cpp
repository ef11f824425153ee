#include "colorpin/board.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "colorpin/error.hpp"
#include "colorpin/rng.hpp"

namespace colorpin {

namespace {

void check_unique(const std::vector<std::string>& symbols, const char* which) {
    std::set<std::string_view> seen;
    for (const auto& s : symbols) {
        if (s.empty()) {
            throw Error(ErrorCode::invalid_argument, std::string(which) + " symbols must be non-empty");
        }
        if (!seen.insert(s).second) {
            throw Error(ErrorCode::invalid_argument, std::string("duplicate ") + which + " symbol '" + s + "'");
        }
    }
}

std::optional<int> find_in(const std::vector<std::string>& list, std::string_view symbol) {
    const auto it = std::find(list.begin(), list.end(), symbol);
    if (it == list.end()) {
        return std::nullopt;
    }
    return static_cast<int>(it - list.begin());
}

bool is_permutation_of_range(const Permutation& perm, int n) {
    if (static_cast<int>(perm.size()) != n) {
        return false;
    }
    std::vector<bool> seen(n, false);
    for (int v : perm) {
        if (v < 0 || v >= n || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

}  // namespace

void BoardSpec::validate() const {
    if (rows < 1 || cols < 1) {
        throw Error(ErrorCode::invalid_argument, "board dimensions must be positive");
    }
    if (size() < 2) {
        throw Error(ErrorCode::invalid_argument, "board needs at least 2 keys");
    }
    if (static_cast<int>(fixed_symbols.size()) != size() || static_cast<int>(cursor_symbols.size()) != size()) {
        throw Error(ErrorCode::invalid_argument, "symbol lists must both have rows*cols entries");
    }
    check_unique(fixed_symbols, "fixed");
    check_unique(cursor_symbols, "cursor");
}

std::optional<int> BoardSpec::find_fixed(std::string_view symbol) const { return find_in(fixed_symbols, symbol); }

std::optional<int> BoardSpec::find_cursor(std::string_view symbol) const { return find_in(cursor_symbols, symbol); }

int BoardSpec::fixed_index(std::string_view symbol) const {
    if (auto i = find_fixed(symbol)) {
        return *i;
    }
    throw Error(ErrorCode::unknown_symbol, "'" + std::string(symbol) + "' is not a fixed-board symbol");
}

int BoardSpec::cursor_index(std::string_view symbol) const {
    if (auto i = find_cursor(symbol)) {
        return *i;
    }
    throw Error(ErrorCode::unknown_symbol, "'" + std::string(symbol) + "' is not a cursor-board symbol");
}

BoardSpec BoardSpec::digits_letters() {
    BoardSpec spec;
    spec.rows = 3;
    spec.cols = 3;
    spec.fixed_symbols = {"1", "2", "3", "4", "5", "6", "7", "8", "9"};
    spec.cursor_symbols = {"A", "B", "C", "D", "E", "F", "G", "H", "I"};
    return spec;
}

BoardSpec BoardSpec::digits_colors() {
    BoardSpec spec;
    spec.rows = 2;
    spec.cols = 5;
    spec.fixed_symbols = {"1", "2", "3", "4", "5", "6", "7", "8", "9", "0"};
    spec.cursor_symbols = {"BLACK", "ORANGE", "LIGHTGRAY", "RED",   "BLUE",
                           "GREEN", "PURPLE", "AQUA",      "OLIVE", "GRAY"};
    spec.cursor_skin = "colors";
    return spec;
}

BoardSpec BoardSpec::numbered(int rows, int cols) {
    BoardSpec spec;
    spec.rows = rows;
    spec.cols = cols;
    const int n = rows * cols;
    for (int i = 0; i < n; ++i) {
        spec.fixed_symbols.push_back(std::to_string(i + 1));
        spec.cursor_symbols.push_back(n <= 26 ? std::string(1, static_cast<char>('A' + i)) : "M" + std::to_string(i + 1));
    }
    spec.validate();
    return spec;
}

Cell torus_wrap(std::int64_t row, std::int64_t col, int rows, int cols) {
    if (rows < 1 || cols < 1) {
        throw Error(ErrorCode::invalid_argument, "torus dimensions must be positive");
    }
    auto reduce = [](std::int64_t v, int m) {
        const auto r = v % m;
        return static_cast<int>(r < 0 ? r + m : r);
    };
    return {reduce(row, rows), reduce(col, cols)};
}

BoardState BoardState::identity(BoardSpec spec) {
    spec.validate();
    BoardState state;
    state.fixed_perm.resize(spec.size());
    std::iota(state.fixed_perm.begin(), state.fixed_perm.end(), 0);
    state.cursor_perm = state.fixed_perm;
    state.spec = std::move(spec);
    return state;
}

void BoardState::validate() const {
    spec.validate();
    if (!is_permutation_of_range(fixed_perm, spec.size()) || !is_permutation_of_range(cursor_perm, spec.size())) {
        throw Error(ErrorCode::invalid_argument, "board permutations must be bijections onto the symbol lists");
    }
    if (offset.drow < 0 || offset.drow >= spec.rows || offset.dcol < 0 || offset.dcol >= spec.cols) {
        throw Error(ErrorCode::invalid_argument, "offset is not reduced");
    }
    if (pointer_origin.row < 0 || pointer_origin.row >= spec.rows || pointer_origin.col < 0 ||
        pointer_origin.col >= spec.cols) {
        throw Error(ErrorCode::invalid_argument, "pointer origin outside board");
    }
}

Cell BoardState::fixed_cell_of(int fixed_symbol) const {
    const auto it = std::find(fixed_perm.begin(), fixed_perm.end(), fixed_symbol);
    if (it == fixed_perm.end()) {
        throw Error(ErrorCode::unknown_symbol, "fixed symbol index out of range");
    }
    return cell_at(static_cast<int>(it - fixed_perm.begin()));
}

Cell BoardState::cursor_cell_of(int cursor_symbol) const {
    const auto it = std::find(cursor_perm.begin(), cursor_perm.end(), cursor_symbol);
    if (it == cursor_perm.end()) {
        throw Error(ErrorCode::unknown_symbol, "cursor symbol index out of range");
    }
    return cell_at(static_cast<int>(it - cursor_perm.begin()));
}

int BoardState::cursor_over(Cell fixed_cell) const {
    const Cell under = torus_wrap(std::int64_t{fixed_cell.row} - offset.drow, std::int64_t{fixed_cell.col} - offset.dcol,
                                  spec.rows, spec.cols);
    return cursor_perm[linear(under)];
}

BoardState move_cursor(const BoardState& state, Displacement delta) {
    BoardState moved = state;
    const Cell wrapped =
        torus_wrap(std::int64_t{state.offset.drow} + delta.drow, std::int64_t{state.offset.dcol} + delta.dcol,
                   state.spec.rows, state.spec.cols);
    moved.offset = {wrapped.row, wrapped.col};
    return moved;
}

std::vector<int> alignment_map(const BoardState& state) {
    std::vector<int> result(state.spec.size());
    for (int p = 0; p < state.spec.size(); ++p) {
        result[state.fixed_perm[p]] = state.cursor_over(state.cell_at(p));
    }
    return result;
}

SymbolPair aligned_pair_at(const BoardState& state, int fixed_symbol) {
    if (fixed_symbol < 0 || fixed_symbol >= state.spec.size()) {
        throw Error(ErrorCode::unknown_symbol, "fixed symbol index out of range");
    }
    return {fixed_symbol, state.cursor_over(state.fixed_cell_of(fixed_symbol))};
}

std::pair<std::string, std::string> aligned_pair_at(const BoardState& state, std::string_view fixed_symbol) {
    const SymbolPair pair = aligned_pair_at(state, state.spec.fixed_index(fixed_symbol));
    return {state.spec.fixed_symbols[pair.fixed], state.spec.cursor_symbols[pair.cursor]};
}

TorusOffset offset_aligning(const BoardState& state, SymbolPair pair) {
    const Cell p = state.fixed_cell_of(pair.fixed);
    const Cell c = state.cursor_cell_of(pair.cursor);
    const Cell d = torus_wrap(std::int64_t{p.row} - c.row, std::int64_t{p.col} - c.col, state.spec.rows, state.spec.cols);
    return {d.row, d.col};
}

BoardState shuffle(const BoardState& state, std::uint64_t seed, ShuffleScope scope) {
    Rng rng(seed);
    BoardState next = state;
    const int n = state.spec.size();
    if (scope != ShuffleScope::cursor_only) {
        next.fixed_perm.resize(n);
        std::iota(next.fixed_perm.begin(), next.fixed_perm.end(), 0);
        rng.shuffle(std::span<int>(next.fixed_perm));
    }
    if (scope != ShuffleScope::fixed_only) {
        next.cursor_perm.resize(n);
        std::iota(next.cursor_perm.begin(), next.cursor_perm.end(), 0);
        rng.shuffle(std::span<int>(next.cursor_perm));
    }
    next.offset = {};
    next.pointer_origin = next.cell_at(static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    return next;
}

bool DisplaySubset::contains(int cursor_symbol) const {
    return std::binary_search(shown.begin(), shown.end(), cursor_symbol);
}

DisplaySubset DisplaySubset::all(int n) {
    DisplaySubset subset;
    subset.shown.resize(n);
    std::iota(subset.shown.begin(), subset.shown.end(), 0);
    return subset;
}

DisplaySubset visible_subset(const BoardState& state, int correct_cursor, int l, std::uint64_t seed) {
    const int n = state.spec.size();
    if (l < 2 || l > n) {
        throw Error(ErrorCode::invalid_argument, "visible count l must lie in [2, n]");
    }
    if (correct_cursor < 0 || correct_cursor >= n) {
        throw Error(ErrorCode::unknown_symbol, "correct cursor symbol index out of range");
    }
    std::vector<int> decoys;
    decoys.reserve(n - 1);
    for (int i = 0; i < n; ++i) {
        if (i != correct_cursor) {
            decoys.push_back(i);
        }
    }
    Rng rng(seed);
    rng.shuffle(std::span<int>(decoys));
    DisplaySubset subset;
    subset.shown.assign(decoys.begin(), decoys.begin() + (l - 1));
    subset.shown.push_back(correct_cursor);
    std::sort(subset.shown.begin(), subset.shown.end());
    return subset;
}

std::vector<SymbolPair> aligned_pairs(const BoardState& state, const DisplaySubset& visible) {
    std::vector<SymbolPair> pairs;
    const auto map = alignment_map(state);
    for (int f = 0; f < static_cast<int>(map.size()); ++f) {
        if (visible.contains(map[f])) {
            pairs.push_back({f, map[f]});
        }
    }
    return pairs;
}

}  // namespace colorpin
