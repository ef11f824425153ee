#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "colorpin/error.hpp"
#include "colorpin/profile.hpp"

namespace colorpin {
namespace {

ProfileQuestionBank make_bank(int k, int n = 9) {
    static const char* skins[] = {"food", "place", "color", "animal", "sport", "music"};
    ProfileQuestionBank bank;
    bank.id = "test";
    bank.n = n;
    for (int q = 0; q < k; ++q) {
        ProfileQuestion question{std::string("favorite ") + skins[q], skins[q], {}};
        for (int c = 1; c <= n; ++c) question.choices.push_back(std::string(skins[q]) + "-" + std::to_string(c));
        bank.questions.push_back(std::move(question));
    }
    bank.validate();
    return bank;
}

TEST(GenerateUiPassword, SingleQuestionIsIdentity) {
    const auto bank = make_bank(1);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto out = generate_ui_password(bank, {{7}}, seed);
        EXPECT_EQ(out.question_order, std::vector<int>{0});
        EXPECT_EQ(out.ui_password, std::vector<int>{6});
    }
}

TEST(GenerateUiPassword, Deterministic) {
    const auto bank = make_bank(4);
    const ProfileAnswerSet answers{{2, 9, 4, 4}};
    const auto a = generate_ui_password(bank, answers, 123);
    const auto b = generate_ui_password(bank, answers, 123);
    EXPECT_EQ(a.question_order, b.question_order);
    EXPECT_EQ(a.ui_password, b.ui_password);
}

TEST(GenerateUiPassword, ProjectsAnswersThroughTheOrder) {
    const auto bank = make_bank(4);
    const ProfileAnswerSet answers{{2, 9, 4, 5}};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto out = generate_ui_password(bank, answers, seed);
        auto sorted = out.question_order;
        std::sort(sorted.begin(), sorted.end());
        EXPECT_EQ(sorted, (std::vector<int>{0, 1, 2, 3}));
        for (int i = 0; i < 4; ++i) EXPECT_EQ(out.ui_password[i], answers.answers[out.question_order[i]] - 1);
    }
}

TEST(GenerateUiPassword, SeedSweepFindsEveryOrderOfThree) {
    const auto bank = make_bank(3);
    const ProfileAnswerSet answers{{1, 5, 9}};
    std::set<std::vector<int>> passwords;
    std::uint64_t seed = 0;
    while (passwords.size() < 6 && seed < 10'000) passwords.insert(generate_ui_password(bank, answers, seed++).ui_password);
    // Keep sweeping well past saturation: nothing outside the 3! orders may appear.
    for (std::uint64_t end = seed + 10'000; seed < end; ++seed) {
        passwords.insert(generate_ui_password(bank, answers, seed).ui_password);
    }
    EXPECT_EQ(passwords.size(), 6u);
}

TEST(GenerateUiPassword, OrdersAreUniform) {
    constexpr int kDraws = 60'000;
    std::map<std::vector<int>, int> counts;
    for (int s = 0; s < kDraws; ++s) ++counts[draw_question_order(3, static_cast<std::uint64_t>(s))];
    ASSERT_EQ(counts.size(), 6u);
    const double expected = kDraws / 6.0;
    double chi = 0;
    for (const auto& [order, c] : counts) chi += (c - expected) * (c - expected) / expected;
    EXPECT_LE(chi, 5 + 3 * std::sqrt(10.0));
}

std::uint64_t factorial(int k) { return k <= 1 ? 1 : k * factorial(k - 1); }

// Distinct UI passwords reachable by any question order, by enumerating all k! orders.
std::set<std::vector<int>> reachable_by_enumeration(const std::vector<int>& answer_symbols) {
    std::vector<int> order(answer_symbols.size());
    std::iota(order.begin(), order.end(), 0);
    std::set<std::vector<int>> out;
    do {
        std::vector<int> ui;
        for (int q : order) ui.push_back(answer_symbols[q]);
        out.insert(ui);
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

TEST(GenerateUiPassword, DuplicateAnswersCollapseOrders) {
    const std::vector<std::vector<int>> cases = {{1},          {3, 3},       {1, 2},       {4, 4, 4},
                                                 {4, 4, 2},    {1, 2, 3},    {5, 5, 5, 5}, {5, 5, 6, 6},
                                                 {5, 5, 5, 6}, {5, 5, 6, 7}, {1, 2, 3, 4}};
    for (const auto& answers : cases) {
        const int k = static_cast<int>(answers.size());
        const auto bank = make_bank(k);
        std::map<int, int> multiplicity;
        for (int a : answers) ++multiplicity[a];
        std::uint64_t formula = factorial(k);
        for (const auto& [a, m] : multiplicity) formula /= factorial(m);

        const auto symbols = answers_as_cursor_symbols(bank, {answers});
        const auto oracle = reachable_by_enumeration(symbols);
        EXPECT_EQ(oracle.size(), formula);

        std::set<std::vector<int>> generated;
        for (std::uint64_t seed = 0; seed < 2000; ++seed) {
            generated.insert(generate_ui_password(bank, {answers}, seed).ui_password);
        }
        EXPECT_EQ(generated, oracle);
    }
}

TEST(GenerateUiPassword, IncompleteAnswersRejected) {
    const auto bank = make_bank(3);
    EXPECT_THROW(generate_ui_password(bank, {{1, 2}}, 0), Error);
    EXPECT_THROW(generate_ui_password(bank, {{1, 2, 0}}, 0), Error);
    EXPECT_THROW(generate_ui_password(bank, {{1, 2, 10}}, 0), Error);
}

TEST(SkinForStep, FollowsTheQuestionOrder) {
    const auto bank = make_bank(3);
    EXPECT_EQ(skin_for_step(bank, {0, 1, 2}, 0), "food");
    EXPECT_EQ(skin_for_step(bank, {2, 0, 1}, 0), "color");
    EXPECT_EQ(skin_for_step(bank, {2, 0, 1}, 2), "place");
    EXPECT_THROW(skin_for_step(bank, {0, 1, 2}, 3), Error);
    EXPECT_THROW(skin_for_step(bank, {0, 1, 2}, -1), Error);
}

TEST(SkinForStep, EveryQuestionVisitedOnce) {
    const auto bank = make_bank(5);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto out = generate_ui_password(bank, {{1, 2, 3, 4, 5}}, seed);
        std::multiset<std::string> seen;
        for (int step = 0; step < 5; ++step) seen.insert(skin_for_step(bank, out.question_order, step));
        std::multiset<std::string> all;
        for (const auto& q : bank.questions) all.insert(q.skin);
        EXPECT_EQ(seen, all);
    }
}

TEST(ProfileQuestionBank, ValidationAndRoundTrip) {
    auto bank = make_bank(3);
    const nlohmann::json j = bank;
    EXPECT_EQ(j.at("version"), 1);
    EXPECT_EQ(j.at("n"), 9);
    const auto back = j.get<ProfileQuestionBank>();
    EXPECT_EQ(back.k(), 3);
    EXPECT_EQ(back.questions[1].skin, "place");

    auto short_choices = bank;
    short_choices.questions[0].choices.pop_back();
    EXPECT_THROW(short_choices.validate(), Error);
    auto same_skin = bank;
    same_skin.questions[1].skin = "food";
    EXPECT_THROW(same_skin.validate(), Error);
    EXPECT_THROW(ProfileQuestionBank{}.validate(), Error);

    const auto path = std::filesystem::temp_directory_path() / "colorpin_bank_test.json";
    std::ofstream(path) << j.dump();
    EXPECT_EQ(ProfileQuestionBank::load(path).questions[2].choices[0], "color-1");
    std::filesystem::remove(path);
    EXPECT_THROW(ProfileQuestionBank::load(path), Error);
}

}  // namespace
}  // namespace colorpin
