// colorpin: attack simulator, transcript tools and the HTTP auth service.

#include <CLI11.hpp>
#include <httplib.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "colorpin/attack.hpp"
#include "colorpin/auth_service.hpp"
#include "colorpin/error.hpp"
#include "colorpin/http_server.hpp"
#include "colorpin/rng.hpp"

namespace {

using nlohmann::json;

colorpin::BoardSpec board_for(const std::string& name, int rows, int cols) {
    if (name == "numbered") return colorpin::BoardSpec::numbered(rows, cols);
    const auto& boards = colorpin::builtin_boards();
    const auto it = boards.find(name);
    if (it == boards.end()) throw colorpin::Error(colorpin::ErrorCode::invalid_argument, "unknown board " + name);
    return it->second;
}

int run_attack(int rows, int cols, int k, int l, int sessions, int trials, std::uint64_t seed,
               const std::string& csv_path, const std::string& summary_path) {
    const auto spec = colorpin::BoardSpec::numbered(rows, cols);
    colorpin::BreakOptions options;
    options.display_l = l;
    options.max_sessions = sessions;
    const auto dist = colorpin::sessions_to_break(spec, k, trials, seed, options);

    // Exact single-session count measured on one honest session.
    colorpin::Credentials creds;
    colorpin::Rng rng(seed);
    for (int i = 0; i < k; ++i) {
        creds.id_password.push_back(static_cast<int>(rng.below(spec.size())));
        creds.ui_password.push_back(static_cast<int>(rng.below(spec.size())));
    }
    const auto session = colorpin::simulate_honest_session(spec, creds, rng.next(), l);
    const auto measured = colorpin::candidates_single_session(colorpin::observe(session)).sequence_count();

    std::ofstream csv_file;
    std::ostream* csv = &std::cout;
    if (!csv_path.empty() && csv_path != "-") {
        csv_file.open(csv_path);
        csv = &csv_file;
    }
    *csv << "trial,sessions_needed\n";
    for (const auto& t : dist.trials) {
        *csv << t.trial << ',';
        if (t.sessions_needed) *csv << *t.sessions_needed;
        *csv << '\n';
    }

    const auto s = dist.summary();
    json summary = {{"rows", rows},
                    {"cols", cols},
                    {"k", k},
                    {"l", l == 0 ? spec.size() : l},
                    {"trials", s.trials},
                    {"max_sessions", sessions},
                    {"censored", s.censored},
                    {"mean", s.mean ? json(*s.mean) : json(nullptr)},
                    {"p50", s.p50 ? json(*s.p50) : json(nullptr)},
                    {"p90", s.p90 ? json(*s.p90) : json(nullptr)},
                    {"exact_single_session_count", measured}};
    if (summary_path.empty() || summary_path == "-") {
        std::cerr << summary.dump(2) << '\n';
    } else {
        std::ofstream(summary_path) << summary.dump(2) << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-layer torus PIN entry: attack simulator and authentication service"};
    app.require_subcommand(1);

    auto* attack = app.add_subcommand("attack", "Monte Carlo sessions-to-break under intersection attacks");
    int rows = 3, cols = 3, k = 4, l = 0, sessions = 200, trials = 1000;
    std::uint64_t seed = 1;
    std::string csv_path = "-", summary_path = "-";
    attack->add_option("--rows", rows, "Board rows")->check(CLI::PositiveNumber);
    attack->add_option("--cols", cols, "Board columns")->check(CLI::PositiveNumber);
    attack->add_option("-k,--k", k, "Password length")->check(CLI::PositiveNumber);
    attack->add_option("-l,--l", l, "Shown cursor symbols per step (0 = all)");
    attack->add_option("--sessions", sessions, "Max observed sessions per trial")->check(CLI::PositiveNumber);
    attack->add_option("--trials", trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    attack->add_option("--seed", seed, "Master seed");
    attack->add_option("-o,--output", csv_path, "CSV output path (- for stdout)");
    attack->add_option("--summary", summary_path, "JSON summary path (- for stderr)");

    auto* record = app.add_subcommand("record", "Run an honest session and write its observer transcript");
    std::string board = "digits-letters", id_password, ui_password, transcript_out = "-";
    int record_l = 0;
    std::uint64_t record_seed = 1;
    record->add_option("--board", board, "digits-letters | digits-colors | numbered");
    record->add_option("--rows", rows, "Rows for the numbered board");
    record->add_option("--cols", cols, "Columns for the numbered board");
    record->add_option("--id", id_password, "ID password (e.g. 3141)")->required();
    record->add_option("--ui", ui_password, "UI password (e.g. CAHB or RED,GREEN)")->required();
    record->add_option("-l,--l", record_l, "Shown cursor symbols per step (0 = all)");
    record->add_option("--seed", record_seed, "Session seed");
    record->add_option("-o,--output", transcript_out, "Transcript path (- for stdout)");

    auto* candidates = app.add_subcommand("candidates", "Observer candidate counts for transcripts");
    std::vector<std::string> transcript_paths;
    candidates->add_option("transcripts", transcript_paths, "Transcript files (intersected)")->required();

    auto* serve = app.add_subcommand("serve", "Run the HTTP authentication service");
    std::string bind = "127.0.0.1", store_path = "users.jsonl", key_file = "vault.key", bank_path, static_dir;
    int port = 8080, lockout = 5, display_l = 0, idle = 120;
    std::optional<std::uint64_t> service_seed;
    serve->add_option("--bind", bind, "Bind address")->envname("COLORPIN_BIND");
    serve->add_option("--port", port, "Port")->envname("COLORPIN_PORT");
    serve->add_option("--store", store_path, "User store file (JSON lines)")->envname("COLORPIN_STORE");
    serve->add_option("--vault-key-file", key_file, "Key file for plaintext-recoverable users")
        ->envname("COLORPIN_VAULT_KEY_FILE");
    serve->add_option("--lockout", lockout, "Failed attempts before lockout")->envname("COLORPIN_LOCKOUT");
    serve->add_option("--idle-timeout", idle, "Session idle timeout in seconds");
    serve->add_option("--display-l", display_l, "Shown cursor symbols per step (0 = all)");
    serve->add_option("--profile-bank", bank_path, "Profile question bank JSON");
    serve->add_option("--static-dir", static_dir, "Web client bundle to serve at /");
    serve->add_option("--seed", service_seed, "Deterministic seed (test mode only)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*attack) {
            return run_attack(rows, cols, k, l, sessions, trials, seed, csv_path, summary_path);
        }
        if (*record) {
            const auto spec = board_for(board, rows, cols);
            const auto creds = colorpin::make_credentials(spec, colorpin::tokenize_symbols(id_password),
                                                          colorpin::tokenize_symbols(ui_password));
            const auto session = colorpin::simulate_honest_session(spec, creds, record_seed, record_l);
            const auto doc = colorpin::transcript_to_json(colorpin::observe(session)).dump(2);
            if (transcript_out == "-") {
                std::cout << doc << '\n';
            } else {
                std::ofstream(transcript_out) << doc << '\n';
            }
            return 0;
        }
        if (*candidates) {
            std::vector<colorpin::SessionTranscript> transcripts;
            for (const auto& path : transcript_paths) {
                std::ifstream in(path);
                if (!in) throw colorpin::Error(colorpin::ErrorCode::io, "cannot read " + path);
                transcripts.push_back(colorpin::transcript_from_json(json::parse(in)));
            }
            const auto set = colorpin::intersect_sessions(transcripts);
            json sizes = json::array();
            for (const auto& p : set.per_position) sizes.push_back(p.size());
            std::cout << json{{"sessions", transcripts.size()},
                              {"per_position", sizes},
                              {"sequence_count", set.sequence_count()},
                              {"id_sequence_count", set.id_sequence_count()}}
                             .dump(2)
                      << '\n';
            return 0;
        }
        if (*serve) {
            colorpin::ServiceConfig config;
            config.store_path = store_path;
            config.lockout_threshold = lockout;
            config.idle_timeout = std::chrono::seconds(idle);
            config.display_l = display_l;
            config.seed = service_seed;
            config.vault = colorpin::CredentialVault::load_or_create(key_file);
            if (!bank_path.empty()) config.profile_bank = colorpin::ProfileQuestionBank::load(bank_path);
            colorpin::AuthService service(std::move(config));
            httplib::Server server;
            colorpin::mount_routes(server, service,
                                   static_dir.empty() ? std::nullopt : std::optional<std::string>(static_dir));
            std::cerr << "listening on " << bind << ':' << port << '\n';
            return server.listen(bind, port) ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
