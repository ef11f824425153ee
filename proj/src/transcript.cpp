#include "colorpin/transcript.hpp"

#include "colorpin/error.hpp"

namespace colorpin {

void to_json(nlohmann::json& j, const BoardSpec& spec) {
    j = nlohmann::json{{"rows", spec.rows},
                       {"cols", spec.cols},
                       {"fixed_symbols", spec.fixed_symbols},
                       {"cursor_symbols", spec.cursor_symbols},
                       {"fixed_skin", spec.fixed_skin},
                       {"cursor_skin", spec.cursor_skin}};
}

void from_json(const nlohmann::json& j, BoardSpec& spec) {
    spec.rows = j.at("rows").get<int>();
    spec.cols = j.at("cols").get<int>();
    spec.fixed_symbols = j.at("fixed_symbols").get<std::vector<std::string>>();
    spec.cursor_symbols = j.at("cursor_symbols").get<std::vector<std::string>>();
    spec.fixed_skin = j.value("fixed_skin", "digits");
    spec.cursor_skin = j.value("cursor_skin", "letters");
    spec.validate();
}

void to_json(nlohmann::json& j, const Cell& cell) { j = nlohmann::json::array({cell.row, cell.col}); }

void from_json(const nlohmann::json& j, Cell& cell) {
    cell.row = j.at(0).get<int>();
    cell.col = j.at(1).get<int>();
}

void to_json(nlohmann::json& j, const TorusOffset& offset) { j = nlohmann::json::array({offset.drow, offset.dcol}); }

void from_json(const nlohmann::json& j, TorusOffset& offset) {
    offset.drow = j.at(0).get<int>();
    offset.dcol = j.at(1).get<int>();
}

nlohmann::json transcript_to_json(const SessionTranscript& transcript) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& step : transcript.steps) {
        steps.push_back({{"fixed", step.board.fixed_perm},
                         {"cursor", step.board.cursor_perm},
                         {"offset", step.committed_offset},
                         {"origin", step.board.pointer_origin},
                         {"visible", step.visible.shown},
                         {"skin", step.skin}});
    }
    return {{"version", kTranscriptVersion}, {"spec", transcript.spec}, {"steps", steps}};
}

SessionTranscript transcript_from_json(const nlohmann::json& j) {
    if (j.at("version").get<int>() != kTranscriptVersion) {
        throw Error(ErrorCode::invalid_argument, "unsupported transcript version");
    }
    SessionTranscript t;
    t.spec = j.at("spec").get<BoardSpec>();
    for (const auto& s : j.at("steps")) {
        ObservedStep step;
        step.board.spec = t.spec;
        step.board.fixed_perm = s.at("fixed").get<Permutation>();
        step.board.cursor_perm = s.at("cursor").get<Permutation>();
        step.committed_offset = s.at("offset").get<TorusOffset>();
        step.board.offset = step.committed_offset;
        step.board.pointer_origin = s.at("origin").get<Cell>();
        step.visible.shown = s.at("visible").get<std::vector<int>>();
        step.skin = s.value("skin", "");
        step.board.validate();
        t.steps.push_back(std::move(step));
    }
    return t;
}

}  // namespace colorpin
