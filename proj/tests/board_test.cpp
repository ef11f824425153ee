#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "colorpin/board.hpp"
#include "colorpin/error.hpp"
#include "colorpin/rng.hpp"

namespace colorpin {
namespace {

// Independent oracle: walk the cursor cells and mark which fixed cell each one
// covers (cursor cell c lies over fixed cell (c + offset) mod dims).
std::map<int, int> covered_by_enumeration(const BoardState& s) {
    std::map<int, int> fixed_to_cursor;
    for (int r = 0; r < s.spec.rows; ++r) {
        for (int c = 0; c < s.spec.cols; ++c) {
            const int fr = (r + s.offset.drow) % s.spec.rows;
            const int fc = (c + s.offset.dcol) % s.spec.cols;
            fixed_to_cursor[s.fixed_perm[fr * s.spec.cols + fc]] = s.cursor_perm[r * s.spec.cols + c];
        }
    }
    return fixed_to_cursor;
}

BoardState random_state(const BoardSpec& spec, std::uint64_t seed) {
    BoardState s = shuffle(BoardState::identity(spec), seed);
    Rng rng(seed ^ 0xabcdef);
    s.offset = {static_cast<int>(rng.below(spec.rows)), static_cast<int>(rng.below(spec.cols))};
    return s;
}

TEST(TorusWrap, ReducesIntoRange) {
    EXPECT_EQ(torus_wrap(3, 1, 3, 3), (Cell{0, 1}));
    EXPECT_EQ(torus_wrap(-1, -1, 3, 3), (Cell{2, 2}));
    EXPECT_EQ(torus_wrap(2, 1, 3, 3), (Cell{2, 1}));
    EXPECT_EQ(torus_wrap(-7, 12, 2, 5), (Cell{1, 2}));
}

TEST(BoardSpec, DefaultsAreValid) {
    const auto letters = BoardSpec::digits_letters();
    EXPECT_NO_THROW(letters.validate());
    EXPECT_EQ(letters.size(), 9);
    EXPECT_EQ(letters.cursor_symbols.back(), "I");

    const auto colors = BoardSpec::digits_colors();
    EXPECT_NO_THROW(colors.validate());
    EXPECT_EQ(colors.fixed_symbols.back(), "0");
    EXPECT_EQ(colors.cursor_symbols[2], "LIGHTGRAY");
}

TEST(BoardSpec, RejectsBadShapes) {
    auto spec = BoardSpec::digits_letters();
    spec.cursor_symbols.pop_back();
    EXPECT_THROW(spec.validate(), Error);

    spec = BoardSpec::digits_letters();
    spec.fixed_symbols[1] = "1";
    EXPECT_THROW(spec.validate(), Error);

    BoardSpec single;
    single.rows = 1;
    single.cols = 1;
    single.fixed_symbols = {"1"};
    single.cursor_symbols = {"A"};
    EXPECT_THROW(single.validate(), Error);
}

TEST(MoveCursor, TranslatesOnlyTheOffset) {
    const auto start = BoardState::identity(BoardSpec::digits_letters());
    const auto moved = move_cursor(start, {1, 2});
    EXPECT_EQ(moved.offset, (TorusOffset{1, 2}));
    EXPECT_EQ(moved.fixed_perm, start.fixed_perm);
    EXPECT_EQ(moved.cursor_perm, start.cursor_perm);
    EXPECT_EQ(moved.pointer_origin, start.pointer_origin);

    auto corner = start;
    corner.offset = {2, 2};
    EXPECT_EQ(move_cursor(corner, {1, 1}).offset, (TorusOffset{0, 0}));
}

TEST(MoveCursor, GroupLaws) {
    for (const auto& spec : {BoardSpec::digits_letters(), BoardSpec::digits_colors()}) {
        Rng rng(7);
        for (int trial = 0; trial < 200; ++trial) {
            const auto s = random_state(spec, rng.next());
            const Displacement a{static_cast<std::int64_t>(rng.below(41)) - 20,
                                 static_cast<std::int64_t>(rng.below(41)) - 20};
            const Displacement b{static_cast<std::int64_t>(rng.below(41)) - 20,
                                 static_cast<std::int64_t>(rng.below(41)) - 20};
            EXPECT_EQ(move_cursor(move_cursor(s, a), b), move_cursor(s, {a.drow + b.drow, a.dcol + b.dcol}));
            const std::int64_t p = static_cast<std::int64_t>(rng.below(7)) - 3;
            const std::int64_t q = static_cast<std::int64_t>(rng.below(7)) - 3;
            EXPECT_EQ(move_cursor(s, {spec.rows * p, spec.cols * q}), s);
        }
    }
}

TEST(AlignmentMap, IdentityLayoutsAtZeroOffset) {
    const auto s = BoardState::identity(BoardSpec::digits_letters());
    const auto map = alignment_map(s);
    for (int i = 0; i < 9; ++i) EXPECT_EQ(map[i], i);
    EXPECT_EQ(aligned_pair_at(s, std::string_view("5")), (std::pair<std::string, std::string>{"5", "E"}));
}

TEST(AlignmentMap, ShiftedOffsetMatchesCellEnumeration) {
    auto s = BoardState::identity(BoardSpec::digits_letters());
    s.offset = {0, 1};
    const auto oracle = covered_by_enumeration(s);
    const auto map = alignment_map(s);
    for (int f = 0; f < 9; ++f) EXPECT_EQ(map[f], oracle.at(f)) << "fixed " << f;
    // Frozen from the enumeration: digit at (0,0) is '1', its partner is the
    // cursor symbol at (0,2), 'C'. Digit index 1 ('2') pairs with 'A'.
    EXPECT_EQ(map[0], 2);
    EXPECT_EQ(aligned_pair_at(s, 1), (SymbolPair{1, 0}));
    EXPECT_EQ(aligned_pair_at(s, std::string_view("2")), (std::pair<std::string, std::string>{"2", "A"}));
}

TEST(AlignmentMap, RandomStatesMatchEnumeration) {
    for (const auto& spec : {BoardSpec::digits_letters(), BoardSpec::digits_colors(), BoardSpec::numbered(1, 9)}) {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto s = random_state(spec, seed);
            const auto oracle = covered_by_enumeration(s);
            const auto map = alignment_map(s);
            for (int f = 0; f < spec.size(); ++f) ASSERT_EQ(map[f], oracle.at(f));
        }
    }
}

TEST(AlignmentMap, ConjugationInvariance) {
    // Relabel cells by a translation of the torus: moving both layers the same
    // way keeps every symbol over the same partner.
    const auto spec = BoardSpec::digits_letters();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = random_state(spec, seed);
        BoardState t = s;
        for (int cell = 0; cell < 9; ++cell) {
            const Cell c = s.cell_at(cell);
            const Cell moved = torus_wrap(c.row + 1, c.col + 2, 3, 3);
            t.fixed_perm[t.linear(moved)] = s.fixed_perm[cell];
            t.cursor_perm[t.linear(moved)] = s.cursor_perm[cell];
        }
        EXPECT_EQ(alignment_map(t), alignment_map(s));
    }
}

TEST(AlignmentMap, UnknownSymbolIsAnError) {
    const auto s = BoardState::identity(BoardSpec::digits_letters());
    EXPECT_THROW(aligned_pair_at(s, std::string_view("X")), Error);
    EXPECT_THROW(aligned_pair_at(s, 9), Error);
}

TEST(AlignmentMap, OffsetCoverageMultiset) {
    // Over the 9 offsets with fixed layouts, each (f, m) pair occurs exactly
    // once: exactly one translation brings cursor cell of m over cell of f.
    const auto spec = BoardSpec::digits_letters();
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_state(spec, seed);
        std::map<std::pair<int, int>, int> seen;
        for (int dr = 0; dr < 3; ++dr) {
            for (int dc = 0; dc < 3; ++dc) {
                s.offset = {dr, dc};
                const auto map = alignment_map(s);
                for (int f = 0; f < 9; ++f) ++seen[{f, map[f]}];
            }
        }
        ASSERT_EQ(seen.size(), 81u);
        for (const auto& [pair, count] : seen) EXPECT_EQ(count, 1);
    }
}

TEST(OffsetAligning, BringsThePairTogether) {
    const auto spec = BoardSpec::digits_colors();
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto s = random_state(spec, seed);
        for (int f = 0; f < spec.size(); ++f) {
            for (int m = 0; m < spec.size(); ++m) {
                s.offset = offset_aligning(s, {f, m});
                ASSERT_EQ(covered_by_enumeration(s).at(f), m);
            }
        }
    }
}

TEST(Shuffle, DeterministicAndBijective) {
    const auto start = BoardState::identity(BoardSpec::digits_letters());
    const auto a = shuffle(start, 42);
    const auto b = shuffle(start, 42);
    EXPECT_EQ(a, b);
    EXPECT_NO_THROW(a.validate());
    EXPECT_EQ(a.spec, start.spec);
    EXPECT_EQ(a.offset, (TorusOffset{0, 0}));
    EXPECT_NE(shuffle(start, 43), a);
}

TEST(Shuffle, ScopeLimitsWhichLayerChanges) {
    auto start = shuffle(BoardState::identity(BoardSpec::digits_letters()), 1);
    start.offset = {1, 1};
    const auto fixed_only = shuffle(start, 2, ShuffleScope::fixed_only);
    EXPECT_EQ(fixed_only.cursor_perm, start.cursor_perm);
    EXPECT_EQ(fixed_only.offset, (TorusOffset{0, 0}));
    const auto cursor_only = shuffle(start, 2, ShuffleScope::cursor_only);
    EXPECT_EQ(cursor_only.fixed_perm, start.fixed_perm);
}

// Pearson statistic of observed counts against a uniform expectation.
double chi_square(const std::vector<int>& counts, double expected) {
    double x = 0;
    for (int c : counts) x += (c - expected) * (c - expected) / expected;
    return x;
}

// Pearson sum over `cells` uniform cells: each term has mean (1 - 1/categories);
// the spread is that of a chi-square with `df` degrees of freedom.
double chi_square_bound(int cells, int categories, int df) {
    return cells * (1.0 - 1.0 / categories) + 3 * std::sqrt(2.0 * df);
}

TEST(Shuffle, EachSymbolLandsUniformly) {
    constexpr int kDraws = 100'000;
    const auto start = BoardState::identity(BoardSpec::digits_letters());
    std::vector<int> fixed_counts(81, 0), cursor_counts(81, 0), origin_counts(9, 0);
    Rng seeds(1);
    for (int i = 0; i < kDraws; ++i) {
        const auto s = shuffle(start, seeds.next());
        for (int cell = 0; cell < 9; ++cell) {
            ++fixed_counts[s.fixed_perm[cell] * 9 + cell];
            ++cursor_counts[s.cursor_perm[cell] * 9 + cell];
        }
        ++origin_counts[s.linear(s.pointer_origin)];
    }
    const double mean = kDraws / 9.0;
    // Symbol-by-cell table of a permutation: both margins are fixed, df = 8 * 8.
    EXPECT_LE(chi_square(fixed_counts, mean), chi_square_bound(81, 9, 64));
    EXPECT_LE(chi_square(cursor_counts, mean), chi_square_bound(81, 9, 64));
    EXPECT_LE(chi_square(origin_counts, mean), chi_square_bound(9, 9, 8));

    // Per cell, |count - mean| <= 3 sigma holds with probability 0.9973, so a
    // handful of the 81 cells may fall outside; four or more has p < 1e-3.
    const double sigma = std::sqrt(kDraws * (1.0 / 9) * (8.0 / 9));
    auto outside = [&](const std::vector<int>& counts) {
        return std::count_if(counts.begin(), counts.end(), [&](int c) { return std::abs(c - mean) > 3 * sigma; });
    };
    EXPECT_LE(outside(fixed_counts), 3);
    EXPECT_LE(outside(cursor_counts), 3);
    EXPECT_LE(outside(origin_counts), 1);
}

TEST(VisibleSubset, FullDisplayShowsEverything) {
    const auto s = shuffle(BoardState::identity(BoardSpec::digits_letters()), 3);
    EXPECT_EQ(visible_subset(s, 4, 9, 11), DisplaySubset::all(9));
}

TEST(VisibleSubset, RangeIsEnforced) {
    const auto s = BoardState::identity(BoardSpec::digits_letters());
    EXPECT_THROW((void)visible_subset(s, 0, 1, 1), Error);
    EXPECT_THROW((void)visible_subset(s, 0, 10, 1), Error);
    EXPECT_THROW((void)visible_subset(s, 9, 2, 1), Error);
}

TEST(VisibleSubset, DecoysAreUniform) {
    constexpr int kDraws = 10'000;
    const auto s = BoardState::identity(BoardSpec::digits_letters());
    const int correct = 4;
    std::vector<int> counts(9, 0);
    Rng seeds(99);
    for (int i = 0; i < kDraws; ++i) {
        const auto subset = visible_subset(s, correct, 2, seeds.next());
        ASSERT_EQ(subset.shown.size(), 2u);
        ASSERT_TRUE(subset.contains(correct));
        for (int m : subset.shown) {
            if (m != correct) ++counts[m];
        }
    }
    const double p = 1.0 / 8.0;
    const double sigma = std::sqrt(kDraws * p * (1 - p));
    for (int m = 0; m < 9; ++m) {
        if (m == correct) continue;
        EXPECT_LE(std::abs(counts[m] - kDraws * p), 3 * sigma) << m;
    }
    EXPECT_EQ(visible_subset(s, correct, 3, 5), visible_subset(s, correct, 3, 5));
}

TEST(AlignedPairs, RestrictedToShownSymbols) {
    const auto s = shuffle(BoardState::identity(BoardSpec::digits_letters()), 8);
    const auto subset = visible_subset(s, 2, 3, 8);
    const auto pairs = aligned_pairs(s, subset);
    ASSERT_EQ(pairs.size(), 3u);
    for (const auto& p : pairs) EXPECT_TRUE(subset.contains(p.cursor));
}

}  // namespace
}  // namespace colorpin
