#ifndef PDA_CHAIN_HPP
#define PDA_CHAIN_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "pda/model.hpp"

namespace pda {

using StateIndex = std::uint64_t;

// Default cap on the full state space n^k.
inline constexpr std::uint64_t kDefaultStateBudget = std::uint64_t{1} << 24;

// Default stationary-solve settings: L-inf residual on pi P - pi.
inline constexpr double kDefaultTolerance = 1e-12;
inline constexpr std::uint64_t kDefaultMaxIters = 1'000'000;

// n^k, or nullopt-like overflow guard: throws StateBudgetError against budget.
std::uint64_t checked_state_count(int n, int k, std::uint64_t budget);

// Dense base-n encoding of a history; position 0 is the most significant
// digit, so the successor index is pure arithmetic (see SparseChain).
StateIndex encode_state(const HistoryState& state, int n);
HistoryState decode_state(StateIndex index, int n, int k);

struct WinnerProbability {
    int winner;
    double probability;
};

struct TransitionEntry {
    StateIndex successor;
    double probability;
};

// k-th order chain over all n^k histories. Each state has exactly n
// successors (one per candidate winner); only the probabilities are stored,
// successor indices being a one-step shift computable from the state index.
struct SparseChain {
    int n = 1;
    int k = 1;
    std::vector<double> probabilities;  // row-major, num_states() * n

    StateIndex num_states() const { return probabilities.empty() ? 0 : probabilities.size() / n; }

    // Index of the state reached from `state` when `winner` takes the block:
    // the new winner is prepended, the oldest entry drops off.
    StateIndex successor(StateIndex state, int winner) const {
        return static_cast<StateIndex>(winner) * stride_ + state / n;
    }

    double probability(StateIndex state, int winner) const {
        return probabilities[state * n + winner];
    }

    // Materialized row: n (successor, probability) pairs.
    std::vector<TransitionEntry> row(StateIndex state) const;

    StateIndex stride_ = 1;  // n^(k-1), set by build_chain
};

// One transition row evaluated from a history: the winning probability of
// each candidate next winner given the difficulties the history induces.
std::vector<WinnerProbability> transition_row(const HistoryState& state,
                                              const SystemConfig& config);

// Builds the full chain. Throws StateBudgetError when n^k exceeds the budget.
SparseChain build_chain(const SystemConfig& config,
                        std::uint64_t state_budget = kDefaultStateBudget);

// Power iteration on an abstract row-stochastic operator: multiply(in, out)
// must write in*P to out. Returns the stationary distribution; throws
// ConvergenceError when the residual stays above tol for max_iters rounds.
// Reused by the reduced chain.
using MultiplyFn = std::function<void(const std::vector<double>&, std::vector<double>&)>;
Distribution stationary_from_multiply(std::size_t size, const MultiplyFn& multiply,
                                      double tol = kDefaultTolerance,
                                      std::uint64_t max_iters = kDefaultMaxIters);

Distribution stationary_distribution(const SparseChain& chain,
                                     double tol = kDefaultTolerance,
                                     std::uint64_t max_iters = kDefaultMaxIters);

// Stationary probability that `player` holds the entire window, i.e. has won
// k consecutive blocks.
double consecutive_winning_probability(const SystemConfig& config, int player,
                                       double tol = kDefaultTolerance,
                                       std::uint64_t max_iters = kDefaultMaxIters,
                                       std::uint64_t state_budget = kDefaultStateBudget);

// Debug export: CSV with columns state,successor,probability, states rendered
// as comma-joined winner tuples (quoted).
void export_chain_csv(const SparseChain& chain, std::ostream& out);

}  // namespace pda

#endif
