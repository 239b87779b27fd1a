#include "pda/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "pda/errors.hpp"

namespace pda {

namespace {

// Targets accumulated while folding a row's successors; at most d+1 distinct.
struct RowAccumulator {
    std::vector<TransitionEntry> entries;

    void add(StateIndex target, double probability) {
        for (TransitionEntry& e : entries) {
            if (e.successor == target) {
                e.probability += probability;
                return;
            }
        }
        entries.push_back({target, probability});
    }

    std::vector<TransitionEntry> take() {
        std::sort(entries.begin(), entries.end(),
                  [](const TransitionEntry& a, const TransitionEntry& b) {
                      return a.successor < b.successor;
                  });
        return std::move(entries);
    }
};

HistoryState shifted(const HistoryState& h, int winner) {
    HistoryState next;
    next.winners.reserve(h.length());
    next.winners.push_back(winner);
    next.winners.insert(next.winners.end(), h.winners.begin(), h.winners.end() - 1);
    return next;
}

}  // namespace

int ReducedState::distinct_labels() const {
    if (state.winners.empty()) return 0;
    return 1 + *std::max_element(state.winners.begin(), state.winners.end());
}

bool ReducedState::all_same() const {
    return distinct_labels() <= 1;
}

ReducedState canonicalize(const HistoryState& state) {
    const int k = state.length();
    if (k == 0) throw std::domain_error("cannot canonicalize an empty history");

    // Distinct values in first-appearance order, with occurrence counts.
    std::vector<int> values;
    std::vector<int> counts;
    std::vector<int> value_id(k);
    values.reserve(k);
    counts.reserve(k);
    for (int pos = 0; pos < k; ++pos) {
        const int v = state.winners[pos];
        int id = -1;
        for (std::size_t j = 0; j < values.size(); ++j)
            if (values[j] == v) { id = static_cast<int>(j); break; }
        if (id < 0) {
            id = static_cast<int>(values.size());
            values.push_back(v);
            counts.push_back(0);
        }
        ++counts[id];
        value_id[pos] = id;
    }

    // Labels by descending count; stable sort keeps first-appearance order
    // among equal counts.
    std::vector<int> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return counts[a] > counts[b]; });
    std::vector<int> label(values.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank)
        label[order[rank]] = static_cast<int>(rank);

    ReducedState out;
    out.state.winners.resize(k);
    for (int pos = 0; pos < k; ++pos)
        out.state.winners[pos] = label[value_id[pos]];
    return out;
}

std::vector<ReducedState> enumerate_reduced(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");

    // Walk restricted-growth strings (each set partition of the k positions
    // exactly once, capped at n blocks) and canonicalize each.
    std::vector<ReducedState> out;
    HistoryState current;
    current.winners.assign(k, 0);
    auto rec = [&](auto&& self, int pos, int max_used) -> void {
        if (pos == k) {
            out.push_back(canonicalize(current));
            return;
        }
        const int limit = std::min(max_used + 1, n - 1);
        for (int v = 0; v <= limit; ++v) {
            current.winners[pos] = v;
            self(self, pos + 1, std::max(max_used, v));
        }
    };
    rec(rec, 0, -1);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t orbit_size(const ReducedState& r, int n) {
    const int d = r.distinct_labels();
    if (d > n)
        throw std::domain_error("reduced state uses " + std::to_string(d) +
                                " distinct players, more than n = " + std::to_string(n));
    unsigned __int128 size = 1;
    for (int i = 0; i < d; ++i) {
        size *= static_cast<unsigned>(n - i);
        if (size > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("orbit size exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(size);
}

std::size_t ReducedChain::index_of(const ReducedState& r) const {
    const auto it = std::lower_bound(states.begin(), states.end(), r);
    if (it == states.end() || !(*it == r))
        throw std::domain_error("state is not in the reduced space");
    return static_cast<std::size_t>(it - states.begin());
}

namespace {

// Row of the reduced chain evaluated from one standard preimage, aggregated
// by canonical successor. Used for the sampled representative-independence
// check; goes through the full model path rather than the label shortcut.
std::vector<TransitionEntry> aggregated_row_from_preimage(const HistoryState& s,
                                                          const SystemConfig& config,
                                                          const ReducedChain& chain) {
    const Distribution probs =
        win_probabilities(config.powers, difficulty_vector(s, config));
    RowAccumulator acc;
    for (int winner = 0; winner < config.n; ++winner) {
        const ReducedState target = canonicalize(shifted(s, winner));
        acc.add(static_cast<StateIndex>(chain.index_of(target)), probs.p[winner]);
    }
    return acc.take();
}

void check_rows_match(const std::vector<TransitionEntry>& a,
                      const std::vector<TransitionEntry>& b) {
    if (a.size() != b.size())
        throw std::logic_error("lumped rows disagree across preimages");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].successor != b[i].successor ||
            std::abs(a[i].probability - b[i].probability) > 1e-12)
            throw std::logic_error("lumped rows disagree across preimages");
}

}  // namespace

ReducedChain build_reduced_chain(const SystemConfig& config, std::uint64_t check_budget) {
    config.validate();
    if (!config.equal_powers())
        throw LumpabilityError("computing powers are not all equal");

    ReducedChain chain;
    chain.n = config.n;
    chain.k = config.k;
    chain.states = enumerate_reduced(config.n, config.k);
    chain.rows.resize(chain.states.size());
    chain.orbit_sizes.resize(chain.states.size());

    const bool uniform = config.difficulty_fn.uniform_equivalent();
    const double alpha = config.difficulty_fn.alpha;
    const int n = config.n;

    for (std::size_t id = 0; id < chain.states.size(); ++id) {
        const ReducedState& r = chain.states[id];
        const int d = r.distinct_labels();

        std::vector<int> counts(d, 0);
        for (int label : r.state.winners) ++counts[label];

        // Per-winner weights proportional to C/D; players absent from the
        // window all carry weight 1 and land in the same canonical successor.
        std::vector<double> weights(d);
        double z = static_cast<double>(n - d);
        for (int i = 0; i < d; ++i) {
            weights[i] = uniform ? 1.0 : std::pow(alpha, -counts[i]);
            z += weights[i];
        }

        RowAccumulator acc;
        for (int i = 0; i < d; ++i) {
            const ReducedState target = canonicalize(shifted(r.state, i));
            acc.add(static_cast<StateIndex>(chain.index_of(target)), weights[i] / z);
        }
        if (n > d) {
            const ReducedState target = canonicalize(shifted(r.state, d));
            acc.add(static_cast<StateIndex>(chain.index_of(target)),
                    static_cast<double>(n - d) / z);
        }
        chain.rows[id] = acc.take();
        chain.orbit_sizes[id] = orbit_size(r, n);
    }

    // Representative-independence spot check: a relabeled preimage must
    // aggregate to the same row.
    if (n >= 2) {
        const std::size_t samples = std::min<std::size_t>(chain.states.size(), 8);
        for (std::size_t step = 0; step < samples; ++step) {
            const std::size_t id = step * chain.states.size() / samples;
            HistoryState permuted = chain.states[id].state;
            for (int& w : permuted.winners) w = (w + 1) % n;
            check_rows_match(aggregated_row_from_preimage(permuted, config, chain),
                             chain.rows[id]);
        }
    }

    // Brute-force preimage counts are authoritative when the standard space
    // is small enough to scan; cross-check the closed form against them.
    bool in_budget = true;
    std::uint64_t standard = 1;
    for (int i = 0; i < config.k && in_budget; ++i) {
        if (standard > check_budget / static_cast<std::uint64_t>(n)) in_budget = false;
        else standard *= static_cast<std::uint64_t>(n);
    }
    if (in_budget && standard <= check_budget) {
        std::vector<std::uint64_t> counted(chain.states.size(), 0);
        for (StateIndex s = 0; s < standard; ++s) {
            const ReducedState r = canonicalize(decode_state(s, config.n, config.k));
            ++counted[chain.index_of(r)];
        }
        for (std::size_t id = 0; id < chain.states.size(); ++id) {
            if (counted[id] != chain.orbit_sizes[id])
                throw std::logic_error("orbit size formula disagrees with preimage count");
        }
    }

    return chain;
}

Distribution reduced_stationary(const ReducedChain& chain, double tol,
                                std::uint64_t max_iters) {
    auto multiply = [&](const std::vector<double>& in, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (std::size_t s = 0; s < chain.rows.size(); ++s) {
            const double mass = in[s];
            for (const TransitionEntry& e : chain.rows[s])
                out[e.successor] += mass * e.probability;
        }
    };
    return stationary_from_multiply(chain.num_states(), multiply, tol, max_iters);
}

double reduced_consecutive_probability(const SystemConfig& config, double tol,
                                       std::uint64_t max_iters) {
    const ReducedChain chain = build_reduced_chain(config);
    const Distribution pi = reduced_stationary(chain, tol, max_iters);
    ReducedState all_same;
    all_same.state.winners.assign(config.k, 0);
    return pi.p[chain.index_of(all_same)] / static_cast<double>(config.n);
}

ReductionInfo reduce_info(int n, int k) {
    if (n < 1 || k < 1) throw std::invalid_argument("n and k must be >= 1");
    ReductionInfo info;
    info.n = n;
    info.k = k;

    unsigned __int128 standard = 1;
    for (int i = 0; i < k; ++i) {
        standard *= static_cast<unsigned>(n);
        if (standard > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("n^k exceeds 64 bits");
    }
    info.standard_states = static_cast<std::uint64_t>(standard);
    info.reduced_states = static_cast<std::uint64_t>(enumerate_reduced(n, k).size());
    info.reduction_factor = static_cast<double>(info.standard_states) /
                            static_cast<double>(info.reduced_states);
    return info;
}

std::string reduction_info_json(const ReductionInfo& info) {
    nlohmann::json j;
    j["n"] = info.n;
    j["k"] = info.k;
    j["standard_states"] = info.standard_states;
    j["reduced_states"] = info.reduced_states;
    j["reduction_factor"] = info.reduction_factor;
    return j.dump();
}

}  // namespace pda
