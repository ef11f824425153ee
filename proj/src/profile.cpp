#include "colorpin/profile.hpp"

#include <fstream>
#include <numeric>
#include <set>

#include "colorpin/error.hpp"
#include "colorpin/rng.hpp"

namespace colorpin {

void ProfileQuestionBank::validate() const {
    if (questions.empty()) {
        throw Error(ErrorCode::invalid_argument, "question bank needs at least one question");
    }
    if (n < 2) {
        throw Error(ErrorCode::invalid_argument, "question bank needs n >= 2 choices");
    }
    std::set<std::string> skins;
    for (const auto& q : questions) {
        if (static_cast<int>(q.choices.size()) != n) {
            throw Error(ErrorCode::invalid_argument, "question '" + q.label + "' does not have n choices");
        }
        if (!skins.insert(q.skin).second) {
            throw Error(ErrorCode::invalid_argument, "duplicate skin '" + q.skin + "'");
        }
    }
}

ProfileQuestionBank ProfileQuestionBank::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::io, "cannot read question bank " + path.string());
    }
    return nlohmann::json::parse(in).get<ProfileQuestionBank>();
}

void to_json(nlohmann::json& j, const ProfileQuestionBank& bank) {
    nlohmann::json questions = nlohmann::json::array();
    for (const auto& q : bank.questions) {
        questions.push_back({{"label", q.label}, {"skin", q.skin}, {"choices", q.choices}});
    }
    j = {{"id", bank.id}, {"version", bank.version}, {"n", bank.n}, {"questions", questions}};
}

void from_json(const nlohmann::json& j, ProfileQuestionBank& bank) {
    bank.id = j.value("id", "");
    bank.version = j.at("version").get<int>();
    bank.n = j.at("n").get<int>();
    bank.questions.clear();
    for (const auto& q : j.at("questions")) {
        bank.questions.push_back({q.at("label").get<std::string>(), q.at("skin").get<std::string>(),
                                  q.at("choices").get<std::vector<std::string>>()});
    }
    bank.validate();
}

std::vector<int> draw_question_order(int k, std::uint64_t seed) {
    if (k < 1) {
        throw Error(ErrorCode::invalid_argument, "k must be >= 1");
    }
    std::vector<int> order(k);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(std::span<int>(order));
    return order;
}

std::vector<int> answers_as_cursor_symbols(const ProfileQuestionBank& bank, const ProfileAnswerSet& answers) {
    if (static_cast<int>(answers.answers.size()) != bank.k()) {
        throw Error(ErrorCode::invalid_argument, "one answer per question is required");
    }
    std::vector<int> symbols;
    for (int a : answers.answers) {
        if (a < 1 || a > bank.n) {
            throw Error(ErrorCode::invalid_argument, "answer outside [1, n]");
        }
        symbols.push_back(a - 1);
    }
    return symbols;
}

GeneratedUiPassword generate_ui_password(const ProfileQuestionBank& bank, const ProfileAnswerSet& answers,
                                         std::uint64_t permutation_seed) {
    const auto symbols = answers_as_cursor_symbols(bank, answers);
    GeneratedUiPassword out;
    out.question_order = draw_question_order(bank.k(), permutation_seed);
    for (int q : out.question_order) {
        out.ui_password.push_back(symbols[q]);
    }
    return out;
}

const std::string& skin_for_step(const ProfileQuestionBank& bank, const std::vector<int>& question_order,
                                 int step_index) {
    if (step_index < 0 || step_index >= static_cast<int>(question_order.size())) {
        throw Error(ErrorCode::invalid_argument, "step index outside the question order");
    }
    return bank.questions.at(question_order[step_index]).skin;
}

}  // namespace colorpin
