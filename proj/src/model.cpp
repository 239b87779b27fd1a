#include "pda/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pda {

DifficultyFnSpec DifficultyFnSpec::alpha_exponential(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("alpha must be a positive finite real");
    return {DifficultyKind::AlphaExponentialNonOrdered, alpha};
}

SystemConfig SystemConfig::make(int n, int k, DifficultyFnSpec fn,
                                std::vector<double> powers) {
    SystemConfig config;
    config.n = n;
    config.k = k;
    config.difficulty_fn = fn;
    config.powers = powers.empty() ? std::vector<double>(std::max(n, 0), 1.0)
                                   : std::move(powers);
    config.validate();
    return config;
}

void SystemConfig::validate() const {
    if (n < 1) throw std::invalid_argument("player count n must be >= 1");
    if (k < 1) throw std::invalid_argument("history window k must be >= 1");
    if (static_cast<int>(powers.size()) != n)
        throw std::invalid_argument("powers must have exactly n entries");
    for (double c : powers)
        if (!(c > 0.0) || !std::isfinite(c))
            throw std::invalid_argument("every computing power must be > 0");
    if (difficulty_fn.kind == DifficultyKind::AlphaExponentialNonOrdered &&
        (!(difficulty_fn.alpha > 0.0) || !std::isfinite(difficulty_fn.alpha)))
        throw std::invalid_argument("alpha must be a positive finite real");
}

bool SystemConfig::equal_powers() const {
    return std::all_of(powers.begin(), powers.end(),
                       [&](double c) { return c == powers.front(); });
}

bool SystemConfig::valid_state(const HistoryState& h) const {
    if (h.length() != k) return false;
    return std::all_of(h.winners.begin(), h.winners.end(),
                       [&](int w) { return w >= 0 && w < n; });
}

double Distribution::sum() const {
    return std::accumulate(p.begin(), p.end(), 0.0);
}

RuntimeState RuntimeState::from_history(HistoryState h, const SystemConfig& config) {
    RuntimeState state;
    state.difficulties = difficulty_vector(h, config);
    state.history = std::move(h);
    return state;
}

int win_counts(const HistoryState& history, int player, int n) {
    if (player < 0 || player >= n)
        throw std::domain_error("player index " + std::to_string(player) +
                                " out of range [0, " + std::to_string(n) + ")");
    return static_cast<int>(
        std::count(history.winners.begin(), history.winners.end(), player));
}

std::vector<int> all_win_counts(const HistoryState& history, int n) {
    std::vector<int> counts(n, 0);
    for (int w : history.winners) {
        if (w < 0 || w >= n)
            throw std::domain_error("history contains winner " + std::to_string(w) +
                                    " out of range [0, " + std::to_string(n) + ")");
        ++counts[w];
    }
    return counts;
}

DifficultyVector difficulty_vector(const HistoryState& history, const SystemConfig& config) {
    DifficultyVector out;
    out.d.assign(config.n, 0.0);
    if (config.difficulty_fn.uniform_equivalent()) {
        std::fill(out.d.begin(), out.d.end(), 1.0 / config.n);
        return out;
    }
    const std::vector<int> counts = all_win_counts(history, config.n);
    const int max_count = *std::max_element(counts.begin(), counts.end());
    // Shift exponents by the max count so entries stay in (0, 1] before
    // normalization; guards against overflow for large alpha^k.
    const double alpha = config.difficulty_fn.alpha;
    double total = 0.0;
    for (int i = 0; i < config.n; ++i) {
        out.d[i] = std::pow(alpha, counts[i] - max_count);
        total += out.d[i];
    }
    for (double& v : out.d) v /= total;
    return out;
}

Distribution win_probabilities(const std::vector<double>& powers,
                               const DifficultyVector& difficulties) {
    if (powers.size() != difficulties.d.size())
        throw std::invalid_argument("powers and difficulties must have the same length");
    Distribution out;
    out.p.resize(powers.size());
    double total = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const double d = difficulties.d[i];
        if (!(d > 0.0))
            throw std::domain_error("singular difficulty: D_" + std::to_string(i) +
                                    " must be > 0");
        if (!(powers[i] > 0.0))
            throw std::domain_error("computing power C_" + std::to_string(i) +
                                    " must be > 0");
        out.p[i] = powers[i] / d;
        total += out.p[i];
    }
    for (double& v : out.p) v /= total;
    return out;
}

// --- JSON schema ---

namespace {

SystemConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
    if (!j.contains("n") || !j.contains("k"))
        throw std::invalid_argument("config requires integer fields n and k");
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();

    DifficultyFnSpec fn = DifficultyFnSpec::uniform();
    if (j.contains("alpha") && !j.at("alpha").is_null())
        fn = DifficultyFnSpec::alpha_exponential(j.at("alpha").get<double>());

    std::vector<double> powers;
    if (j.contains("powers") && !j.at("powers").is_null())
        powers = j.at("powers").get<std::vector<double>>();

    return SystemConfig::make(n, k, fn, std::move(powers));
}

}  // namespace

SystemConfig config_from_json_text(const std::string& text) {
    return config_from_json(nlohmann::json::parse(text));
}

std::string config_to_json_text(const SystemConfig& config) {
    nlohmann::json j;
    j["n"] = config.n;
    j["k"] = config.k;
    if (config.difficulty_fn.kind == DifficultyKind::AlphaExponentialNonOrdered)
        j["alpha"] = config.difficulty_fn.alpha;
    else
        j["alpha"] = nullptr;
    j["powers"] = config.powers;
    return j.dump();
}

SystemConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json_text(buf.str());
}

}  // namespace pda
