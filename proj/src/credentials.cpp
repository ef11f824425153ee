#include "colorpin/credentials.hpp"

#include "colorpin/error.hpp"

namespace colorpin {

void Credentials::validate(const BoardSpec& spec) const {
    if (id_password.empty()) {
        throw Error(ErrorCode::invalid_argument, "ID password must not be empty");
    }
    if (ui_password.empty() || ui_password.size() > id_password.size()) {
        throw Error(ErrorCode::invalid_argument, "UI password length must lie in [1, ID length]");
    }
    for (int f : id_password) {
        if (f < 0 || f >= spec.size()) {
            throw Error(ErrorCode::unknown_symbol, "ID password symbol outside the fixed board");
        }
    }
    for (int m : ui_password) {
        if (m < 0 || m >= spec.size()) {
            throw Error(ErrorCode::unknown_symbol, "UI password symbol outside the cursor board");
        }
    }
}

std::vector<std::string> tokenize_symbols(std::string_view text) {
    std::vector<std::string> out;
    if (text.find(',') != std::string_view::npos) {
        std::size_t start = 0;
        while (start <= text.size()) {
            const auto end = std::min(text.find(',', start), text.size());
            auto token = text.substr(start, end - start);
            while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
            while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
            out.emplace_back(token);
            start = end + 1;
        }
        return out;
    }
    for (char c : text) {
        out.emplace_back(1, c);
    }
    return out;
}

Credentials make_credentials(const BoardSpec& spec, std::span<const std::string> id_symbols,
                             std::span<const std::string> ui_symbols) {
    Credentials creds;
    for (const auto& s : id_symbols) creds.id_password.push_back(spec.fixed_index(s));
    for (const auto& s : ui_symbols) creds.ui_password.push_back(spec.cursor_index(s));
    creds.validate(spec);
    return creds;
}

Credentials split_legacy_pin(const BoardSpec& spec, std::span<const std::string> pin, int ui_length) {
    const int total = static_cast<int>(pin.size());
    if (total < 2 || ui_length < 1 || ui_length >= total) {
        throw Error(ErrorCode::invalid_argument, "legacy PIN must hold an ID part and a UI part");
    }
    const int k = total - ui_length;
    if (ui_length > k) {
        throw Error(ErrorCode::invalid_argument, "UI part is longer than the ID part");
    }
    Credentials creds;
    for (int i = 0; i < k; ++i) {
        creds.id_password.push_back(spec.fixed_index(pin[i]));
    }
    for (int i = k; i < total; ++i) {
        if (auto m = spec.find_cursor(pin[i])) {
            creds.ui_password.push_back(*m);
        } else if (auto f = spec.find_fixed(pin[i])) {
            creds.ui_password.push_back(*f);
        } else {
            throw Error(ErrorCode::unknown_symbol, "'" + pin[i] + "' is on neither board");
        }
    }
    creds.validate(spec);
    return creds;
}

std::vector<int> modulo_slots(int k, int m) {
    if (k < 1 || m < 1) {
        throw Error(ErrorCode::invalid_argument, "slot counts must be positive");
    }
    std::vector<int> slots(k);
    for (int i = 0; i < k; ++i) slots[i] = i % m;
    return slots;
}

std::vector<SymbolPair> expected_pair_sequence(const Credentials& creds, std::span<const int> slots) {
    if (slots.size() != creds.id_password.size()) {
        throw Error(ErrorCode::invalid_argument, "one UI slot per ID symbol is required");
    }
    std::vector<SymbolPair> pairs;
    pairs.reserve(slots.size());
    for (std::size_t i = 0; i < slots.size(); ++i) {
        const int slot = slots[i];
        if (slot < 0 || slot >= static_cast<int>(creds.ui_password.size())) {
            throw Error(ErrorCode::invalid_argument, "UI slot out of range");
        }
        pairs.push_back({creds.id_password[i], creds.ui_password[slot]});
    }
    return pairs;
}

std::vector<SymbolPair> expected_pair_sequence(const Credentials& creds) {
    const auto slots =
        modulo_slots(static_cast<int>(creds.id_password.size()), static_cast<int>(creds.ui_password.size()));
    return expected_pair_sequence(creds, slots);
}

std::vector<std::string> id_symbols(const BoardSpec& spec, const Credentials& creds) {
    std::vector<std::string> out;
    for (int f : creds.id_password) out.push_back(spec.fixed_symbols.at(f));
    return out;
}

std::vector<std::string> ui_symbols(const BoardSpec& spec, const Credentials& creds) {
    std::vector<std::string> out;
    for (int m : creds.ui_password) out.push_back(spec.cursor_symbols.at(m));
    return out;
}

}  // namespace colorpin
