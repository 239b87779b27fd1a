#ifndef PDA_SIMULATE_HPP
#define PDA_SIMULATE_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pda/model.hpp"

namespace pda {

// Seeded generator with explicitly mapped variates so a report is
// reproducible bit-for-bit for a given seed regardless of the standard
// library (std distributions are not pinned across implementations).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform on [0, 1), 53-bit mantissa.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Exponential waiting time with the given rate, via inverse CDF.
    double exponential(double rate);

    // Index draw proportional to the (unnormalized) weights.
    int categorical(const std::vector<double>& weights);

private:
    std::mt19937_64 gen_;
};

// Outcome counts of one seeded mining run. run_counts[m-1] is the number of
// length-m windows in which every block went to the tracked player; windows
// are counted over the measured segment only (warm-up excluded).
struct SimulationReport {
    std::uint64_t blocks = 0;
    std::vector<std::uint64_t> win_counts;  // per player, sums to blocks
    std::vector<std::uint64_t> run_counts;  // m = 1..k
    int tracked_player = 0;
    std::uint64_t seed = 0;
    bool race_mode = false;
};

// Samples the next winner given a full k-history. Categorical mode draws
// directly from the winning probabilities; race mode samples one exponential
// waiting time per player at rate C_i/D_i and takes the argmin.
int mine_block(const HistoryState& history, const SystemConfig& config, Rng& rng,
               bool race_mode = false);

// Mines `blocks` measured blocks after a discarded warm-up (k blocks at
// uniform difficulty to seed the history, then 10*k burn-in blocks).
// Deterministic for a fixed seed.
SimulationReport run_simulation(const SystemConfig& config, std::uint64_t blocks,
                                std::uint64_t seed, int tracked_player,
                                bool race_mode = false);

// run_counts[m-1] / (number of length-m windows in the measured segment).
double empirical_consecutive_rate(const SimulationReport& report, int m);

std::string report_to_json_text(const SimulationReport& report);

}  // namespace pda

#endif
