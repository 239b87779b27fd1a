#ifndef PDA_BASELINE_HPP
#define PDA_BASELINE_HPP

namespace pda {

// Attacker building a private chain against z confirmations with fraction q
// of the total hash power.
struct AttackerParams {
    double q;  // in (0, 1)
    int z;     // confirmation depth, >= 1

    void validate() const;  // throws std::invalid_argument
};

// Catch-up probability of the classic double-spend race: the attacker's
// private chain overtakes the public chain after z confirmations. Returns 1
// for q >= 0.5.
double attacker_success(const AttackerParams& params);

}  // namespace pda

#endif
