#ifndef PDA_REDUCTION_HPP
#define PDA_REDUCTION_HPP

#include <cstdint>
#include <vector>

#include "pda/chain.hpp"
#include "pda/model.hpp"

namespace pda {

// Canonical representative of a relabeling orbit: labels assigned so that
// occurrence counts are non-increasing in label, ties broken by first
// appearance (earlier first appearance gets the smaller label).
struct ReducedState {
    HistoryState state;

    int length() const { return state.length(); }
    int distinct_labels() const;
    bool all_same() const;
    bool operator==(const ReducedState&) const = default;
    bool operator<(const ReducedState& o) const { return state.winners < o.state.winners; }
};

// Maps a history to its orbit's canonical form. Preserves the equality
// pattern of positions; every relabeling of a state maps to the same output.
ReducedState canonicalize(const HistoryState& state);

// All canonical states for window k with at most n distinct players: the set
// partitions of k positions into at most n blocks, sorted lexicographically.
std::vector<ReducedState> enumerate_reduced(int n, int k);

// Number of standard states in the orbit of r under player relabelings with
// n players: n*(n-1)*...*(n-d+1) for d distinct labels. Throws
// std::domain_error when d > n.
std::uint64_t orbit_size(const ReducedState& r, int n);

// Lumped chain over canonical states. Valid only for equal computing powers
// and a non-ordered difficulty function (the orbits are then lumpable).
struct ReducedChain {
    int n = 1;
    int k = 1;
    std::vector<ReducedState> states;                   // sorted; index = id
    std::vector<std::vector<TransitionEntry>> rows;     // per-state successors
    std::vector<std::uint64_t> orbit_sizes;

    std::size_t num_states() const { return states.size(); }
    std::size_t index_of(const ReducedState& r) const;  // throws if absent
};

// Builds the reduced chain. Throws LumpabilityError for heterogeneous powers.
// When n^k is within check_budget the per-orbit state counts are brute-force
// counted and cross-checked against the closed form.
ReducedChain build_reduced_chain(const SystemConfig& config,
                                 std::uint64_t check_budget = std::uint64_t{1} << 20);

Distribution reduced_stationary(const ReducedChain& chain,
                                double tol = kDefaultTolerance,
                                std::uint64_t max_iters = kDefaultMaxIters);

// Per-player consecutive-winning probability from the reduced chain: the
// all-same orbit's stationary mass split evenly over the n players.
double reduced_consecutive_probability(const SystemConfig& config,
                                       double tol = kDefaultTolerance,
                                       std::uint64_t max_iters = kDefaultMaxIters);

struct ReductionInfo {
    int n;
    int k;
    std::uint64_t standard_states;
    std::uint64_t reduced_states;
    double reduction_factor;
};

ReductionInfo reduce_info(int n, int k);
std::string reduction_info_json(const ReductionInfo& info);

}  // namespace pda

#endif
