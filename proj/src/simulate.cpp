#include "pda/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace pda {

double Rng::exponential(double rate) {
    if (!(rate > 0.0)) throw std::domain_error("exponential rate must be > 0");
    // 1 - u lies in (0, 1], so the log never sees zero.
    return -std::log1p(-uniform01()) / rate;
}

int Rng::categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw std::domain_error("categorical weights must be >= 0");
        total += w;
    }
    if (!(total > 0.0)) throw std::domain_error("categorical weights sum to zero");
    const double u = uniform01() * total;
    double acc = 0.0;
    const int last = static_cast<int>(weights.size()) - 1;
    for (int i = 0; i < last; ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return last;  // absorbs any rounding slack in the partial sums
}

namespace {

int race_winner(const std::vector<double>& powers, const std::vector<double>& difficulty,
                Rng& rng) {
    int winner = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < powers.size(); ++i) {
        const double t = rng.exponential(powers[i] / difficulty[i]);
        if (t < best) {
            best = t;
            winner = static_cast<int>(i);
        }
    }
    return winner;
}

}  // namespace

int mine_block(const HistoryState& history, const SystemConfig& config, Rng& rng,
               bool race_mode) {
    if (!config.valid_state(history))
        throw std::domain_error("history state invalid for this config");
    const DifficultyVector difficulty = difficulty_vector(history, config);
    if (race_mode) return race_winner(config.powers, difficulty.d, rng);
    const Distribution probs = win_probabilities(config.powers, difficulty);
    return rng.categorical(probs.p);
}

SimulationReport run_simulation(const SystemConfig& config, std::uint64_t blocks,
                                std::uint64_t seed, int tracked_player, bool race_mode) {
    config.validate();
    if (tracked_player < 0 || tracked_player >= config.n)
        throw std::domain_error("tracked player out of range");
    if (blocks < static_cast<std::uint64_t>(config.k))
        throw std::domain_error("blocks must be >= k");

    const int n = config.n;
    const int k = config.k;
    const bool uniform = config.difficulty_fn.uniform_equivalent();

    Rng rng(seed);

    // alpha^{-w} lookup; the winner weight C_i * alpha^{-w_i} is win
    // probability up to the common normalizer, which the draw cancels.
    std::vector<double> decay(k + 1, 1.0);
    if (!uniform)
        for (int w = 1; w <= k; ++w) decay[w] = decay[w - 1] / config.difficulty_fn.alpha;

    std::vector<int> window(k, 0);   // circular; order is irrelevant, only counts matter
    std::vector<int> counts(n, 0);
    std::vector<double> weights(n);
    std::vector<double> difficulty(n);
    int cursor = 0;

    auto draw = [&](bool window_full) -> int {
        if (!window_full || uniform) {
            // No history yet (or no difficulty function): D_i = 1/n.
            if (race_mode) {
                std::fill(difficulty.begin(), difficulty.end(), 1.0 / n);
                return race_winner(config.powers, difficulty, rng);
            }
            return rng.categorical(config.powers);
        }
        if (race_mode) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) total += 1.0 / decay[counts[i]];
            for (int i = 0; i < n; ++i) difficulty[i] = (1.0 / decay[counts[i]]) / total;
            return race_winner(config.powers, difficulty, rng);
        }
        for (int i = 0; i < n; ++i) weights[i] = config.powers[i] * decay[counts[i]];
        return rng.categorical(weights);
    };

    auto advance = [&](bool window_full) -> int {
        const int winner = draw(window_full);
        if (window_full) --counts[window[cursor]];
        window[cursor] = winner;
        ++counts[winner];
        cursor = (cursor + 1) % k;
        return winner;
    };

    // Warm-up: k blocks seed the window at uniform difficulty, then 10k
    // burn-in blocks under the real difficulty function. All discarded.
    for (int b = 0; b < k; ++b) {
        const int winner = draw(false);
        window[b] = winner;
        ++counts[winner];
    }
    const std::uint64_t burn_in = 10ull * static_cast<std::uint64_t>(k);
    for (std::uint64_t b = 0; b < burn_in; ++b) advance(true);

    SimulationReport report;
    report.blocks = blocks;
    report.win_counts.assign(n, 0);
    report.run_counts.assign(k, 0);
    report.tracked_player = tracked_player;
    report.seed = seed;
    report.race_mode = race_mode;

    // Windows straddling the warm-up boundary are excluded: the streak
    // starts at zero here, so only fully measured windows are counted.
    std::uint64_t streak = 0;
    for (std::uint64_t b = 0; b < blocks; ++b) {
        const int winner = advance(true);
        ++report.win_counts[winner];
        streak = (winner == tracked_player) ? streak + 1 : 0;
        const std::uint64_t limit = std::min<std::uint64_t>(streak, k);
        for (std::uint64_t m = 1; m <= limit; ++m) ++report.run_counts[m - 1];
    }
    return report;
}

double empirical_consecutive_rate(const SimulationReport& report, int m) {
    const int k = static_cast<int>(report.run_counts.size());
    if (m < 1 || m > k)
        throw std::domain_error("run length m must be in [1, k]");
    if (report.blocks < static_cast<std::uint64_t>(m))
        throw std::domain_error("report has fewer blocks than the run length");
    const std::uint64_t windows = report.blocks - static_cast<std::uint64_t>(m) + 1;
    return static_cast<double>(report.run_counts[m - 1]) / static_cast<double>(windows);
}

std::string report_to_json_text(const SimulationReport& report) {
    nlohmann::json j;
    j["blocks"] = report.blocks;
    j["seed"] = report.seed;
    j["tracked_player"] = report.tracked_player;
    j["race_mode"] = report.race_mode;
    j["win_counts"] = report.win_counts;
    j["run_counts"] = report.run_counts;
    std::vector<double> rates;
    for (int m = 1; m <= static_cast<int>(report.run_counts.size()); ++m)
        rates.push_back(empirical_consecutive_rate(report, m));
    j["empirical_rates"] = rates;
    return j.dump();
}

}  // namespace pda
