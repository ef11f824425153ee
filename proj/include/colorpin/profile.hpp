#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace colorpin {

struct ProfileQuestion {
    std::string label;
    std::string skin;
    /// Choice j (1-based) stands for the cursor symbol with index j-1.
    std::vector<std::string> choices;
};

/// k questions with n choices each. Document form:
///   {"id": "...", "version": 1, "n": 9, "questions": [{"label", "skin", "choices": [...]}]}
struct ProfileQuestionBank {
    std::string id;
    int version = 1;
    int n = 0;
    std::vector<ProfileQuestion> questions;

    [[nodiscard]] int k() const noexcept { return static_cast<int>(questions.size()); }
    void validate() const;

    static ProfileQuestionBank load(const std::filesystem::path& path);
};

void to_json(nlohmann::json& j, const ProfileQuestionBank& bank);
void from_json(const nlohmann::json& j, ProfileQuestionBank& bank);

/// One 1-based choice per question, in bank order.
struct ProfileAnswerSet {
    std::vector<int> answers;
};

struct GeneratedUiPassword {
    std::vector<int> ui_password;     ///< cursor symbol indices, one per step
    std::vector<int> question_order;  ///< step -> question index (0-based)
};

/// Uniform permutation of 0..k-1 from Rng(seed).
std::vector<int> draw_question_order(int k, std::uint64_t seed);

/// Answers as cursor symbol indices in bank order.
std::vector<int> answers_as_cursor_symbols(const ProfileQuestionBank& bank, const ProfileAnswerSet& answers);

GeneratedUiPassword generate_ui_password(const ProfileQuestionBank& bank, const ProfileAnswerSet& answers,
                                         std::uint64_t permutation_seed);

const std::string& skin_for_step(const ProfileQuestionBank& bank, const std::vector<int>& question_order,
                                 int step_index);

}  // namespace colorpin
