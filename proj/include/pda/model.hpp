#ifndef PDA_MODEL_HPP
#define PDA_MODEL_HPP

#include <string>
#include <vector>

namespace pda {

// Normalization tolerance for difficulty vectors and distributions.
inline constexpr double kSumTolerance = 1e-12;

enum class DifficultyKind {
    Uniform,
    AlphaExponentialNonOrdered,
};

// Difficulty function selector. The alpha-exponential non-ordered function
// assigns D_i proportional to alpha^(wins of i in the window); alpha = 1 is
// identical to Uniform.
struct DifficultyFnSpec {
    DifficultyKind kind = DifficultyKind::Uniform;
    double alpha = 1.0;

    static DifficultyFnSpec uniform() { return {DifficultyKind::Uniform, 1.0}; }
    static DifficultyFnSpec alpha_exponential(double alpha);

    // True when the function assigns every player the same difficulty.
    bool uniform_equivalent() const {
        return kind == DifficultyKind::Uniform || alpha == 1.0;
    }
};

// Ordered window of the last k winners. winners[0] is the most recent block's
// winner, winners[k-1] the oldest in the window.
struct HistoryState {
    std::vector<int> winners;

    int length() const { return static_cast<int>(winners.size()); }
    bool operator==(const HistoryState&) const = default;
};

// Fixed parameters of the system: player count, computing powers, window
// length, difficulty function.
struct SystemConfig {
    int n = 1;
    int k = 1;
    std::vector<double> powers;  // size n, all > 0
    DifficultyFnSpec difficulty_fn;

    // Empty powers means all players at 1.0.
    static SystemConfig make(int n, int k, DifficultyFnSpec fn,
                             std::vector<double> powers = {});

    void validate() const;  // throws std::invalid_argument
    bool equal_powers() const;
    bool valid_state(const HistoryState& h) const;
};

// Per-player difficulty for one block; entries in (0,1], summing to 1.
struct DifficultyVector {
    std::vector<double> d;
};

// Probability vector over an indexed state space (players or histories).
struct Distribution {
    std::vector<double> p;

    double sum() const;
};

// Dynamic parameters: the winning history plus the difficulties it induces.
// Difficulties are always derived from the history, never stored on their own.
struct RuntimeState {
    HistoryState history;
    DifficultyVector difficulties;

    static RuntimeState from_history(HistoryState h, const SystemConfig& config);
};

// Number of blocks player won within the history window.
int win_counts(const HistoryState& history, int player, int n);

// Win counts for all n players at once; sums to the window length.
std::vector<int> all_win_counts(const HistoryState& history, int n);

// Difficulty vector induced by a history under the config's difficulty
// function. Entries sum to 1.
DifficultyVector difficulty_vector(const HistoryState& history, const SystemConfig& config);

// Single-block winning probabilities: P_i proportional to C_i / D_i.
Distribution win_probabilities(const std::vector<double>& powers,
                               const DifficultyVector& difficulties);

// --- SystemConfig JSON schema ---
// {"n": int, "k": int, "alpha": float|null, "powers": [float]|null}
// alpha null => Uniform difficulty; powers null => all 1.0.
SystemConfig config_from_json_text(const std::string& text);
std::string config_to_json_text(const SystemConfig& config);
SystemConfig load_config_file(const std::string& path);

}  // namespace pda

#endif
