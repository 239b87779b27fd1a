#include "pda/baseline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pda {

void AttackerParams::validate() const {
    if (!(q > 0.0) || !(q < 1.0) || !std::isfinite(q))
        throw std::invalid_argument("attacker fraction q must be in (0, 1)");
    if (z < 1)
        throw std::invalid_argument("confirmation depth z must be >= 1");
}

double attacker_success(const AttackerParams& params) {
    params.validate();
    if (params.q >= 0.5) return 1.0;

    const double ratio = params.q / (1.0 - params.q);
    const double lambda = params.z * ratio;

    // P = 1 - sum_{j=0}^{z} Poisson(j; lambda) * (1 - ratio^(z-j)).
    // Poisson terms by iterative multiplication; no factorials.
    double term = std::exp(-lambda);
    double sum = 0.0;
    for (int j = 0; j <= params.z; ++j) {
        sum += term * (1.0 - std::pow(ratio, params.z - j));
        term *= lambda / (j + 1);
    }
    const double p = 1.0 - sum;
    return p < 0.0 ? 0.0 : (p > 1.0 ? 1.0 : p);
}

}  // namespace pda
