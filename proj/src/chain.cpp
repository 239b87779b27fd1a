#include "pda/chain.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "pda/errors.hpp"

namespace pda {

std::uint64_t checked_state_count(int n, int k, std::uint64_t budget) {
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) {
        if (count > budget / static_cast<std::uint64_t>(n))
            throw StateBudgetError(n, k, budget);
        count *= static_cast<std::uint64_t>(n);
    }
    if (count > budget) throw StateBudgetError(n, k, budget);
    return count;
}

StateIndex encode_state(const HistoryState& state, int n) {
    StateIndex index = 0;
    for (int w : state.winners) {
        if (w < 0 || w >= n)
            throw std::domain_error("winner out of range in history");
        index = index * static_cast<StateIndex>(n) + static_cast<StateIndex>(w);
    }
    return index;
}

HistoryState decode_state(StateIndex index, int n, int k) {
    HistoryState state;
    state.winners.assign(k, 0);
    for (int pos = k - 1; pos >= 0; --pos) {
        state.winners[pos] = static_cast<int>(index % n);
        index /= n;
    }
    if (index != 0) throw std::domain_error("state index out of range");
    return state;
}

std::vector<TransitionEntry> SparseChain::row(StateIndex state) const {
    std::vector<TransitionEntry> entries;
    entries.reserve(n);
    for (int winner = 0; winner < n; ++winner)
        entries.push_back({successor(state, winner), probability(state, winner)});
    return entries;
}

std::vector<WinnerProbability> transition_row(const HistoryState& state,
                                              const SystemConfig& config) {
    if (!config.valid_state(state))
        throw std::domain_error("history state invalid for this config");
    const Distribution probs =
        win_probabilities(config.powers, difficulty_vector(state, config));
    std::vector<WinnerProbability> row;
    row.reserve(config.n);
    for (int winner = 0; winner < config.n; ++winner)
        row.push_back({winner, probs.p[winner]});
    return row;
}

SparseChain build_chain(const SystemConfig& config, std::uint64_t state_budget) {
    config.validate();
    const std::uint64_t states = checked_state_count(config.n, config.k, state_budget);

    SparseChain chain;
    chain.n = config.n;
    chain.k = config.k;
    chain.stride_ = states / static_cast<std::uint64_t>(config.n);
    chain.probabilities.resize(states * static_cast<std::uint64_t>(config.n));

    // Row construction is pure in the state; decode each index once and
    // evaluate the win probabilities its history induces.
    for (StateIndex s = 0; s < states; ++s) {
        const HistoryState h = decode_state(s, config.n, config.k);
        const Distribution probs =
            win_probabilities(config.powers, difficulty_vector(h, config));
        for (int winner = 0; winner < config.n; ++winner)
            chain.probabilities[s * config.n + winner] = probs.p[winner];
    }
    return chain;
}

Distribution stationary_from_multiply(std::size_t size, const MultiplyFn& multiply,
                                      double tol, std::uint64_t max_iters) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (size == 0) throw std::invalid_argument("empty state space");

    std::vector<double> current(size, 1.0 / static_cast<double>(size));
    std::vector<double> next(size, 0.0);

    double residual = 0.0;
    for (std::uint64_t iter = 0; iter < max_iters; ++iter) {
        multiply(current, next);
        residual = 0.0;
        for (std::size_t i = 0; i < size; ++i) {
            const double diff = std::abs(next[i] - current[i]);
            if (diff > residual) residual = diff;
        }
        current.swap(next);
        if (residual <= tol) {
            Distribution out;
            out.p = std::move(current);
            return out;
        }
    }
    throw ConvergenceError(residual, max_iters, tol);
}

Distribution stationary_distribution(const SparseChain& chain, double tol,
                                     std::uint64_t max_iters) {
    const StateIndex states = chain.num_states();
    const int n = chain.n;
    const StateIndex stride = chain.stride_;
    auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (StateIndex s = 0; s < states; ++s) {
            const double mass = in[s];
            const StateIndex shifted = s / static_cast<StateIndex>(n);
            const double* row = &chain.probabilities[s * n];
            for (int winner = 0; winner < n; ++winner)
                out[static_cast<StateIndex>(winner) * stride + shifted] += mass * row[winner];
        }
    };
    return stationary_from_multiply(static_cast<std::size_t>(states), multiply, tol,
                                    max_iters);
}

double consecutive_winning_probability(const SystemConfig& config, int player,
                                       double tol, std::uint64_t max_iters,
                                       std::uint64_t state_budget) {
    if (player < 0 || player >= config.n)
        throw std::domain_error("player index out of range");
    const SparseChain chain = build_chain(config, state_budget);
    const Distribution pi = stationary_distribution(chain, tol, max_iters);
    HistoryState all_player;
    all_player.winners.assign(config.k, player);
    return pi.p[encode_state(all_player, config.n)];
}

void export_chain_csv(const SparseChain& chain, std::ostream& out) {
    auto render = [&](StateIndex s) {
        const HistoryState h = decode_state(s, chain.n, chain.k);
        std::string text = "\"";
        for (int i = 0; i < h.length(); ++i) {
            if (i) text += ',';
            text += std::to_string(h.winners[i]);
        }
        return text + "\"";
    };
    out << "state,successor,probability\n";
    for (StateIndex s = 0; s < chain.num_states(); ++s)
        for (const TransitionEntry& e : chain.row(s))
            out << render(s) << ',' << render(e.successor) << ',' << e.probability
                << '\n';
}

}  // namespace pda
