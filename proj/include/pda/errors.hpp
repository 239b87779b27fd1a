#ifndef PDA_ERRORS_HPP
#define PDA_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pda {

// Power iteration failed to reach the requested residual.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double residual, std::uint64_t iterations, double tol)
        : std::runtime_error("stationary solve did not converge: residual " +
                             std::to_string(residual) + " > tol " + std::to_string(tol) +
                             " after " + std::to_string(iterations) + " iterations"),
          residual(residual), iterations(iterations), tol(tol) {}

    double residual;
    std::uint64_t iterations;
    double tol;
};

// n^k exceeds the configured state budget for the full chain.
class StateBudgetError : public std::runtime_error {
public:
    StateBudgetError(int n, int k, std::uint64_t budget)
        : std::runtime_error("state space " + std::to_string(n) + "^" + std::to_string(k) +
                             " exceeds the state budget " + std::to_string(budget) +
                             "; use the reduced chain for large player counts"),
          n(n), k(k), budget(budget) {}

    int n;
    int k;
    std::uint64_t budget;
};

// State lumping requires equal computing powers and a non-ordered difficulty
// function; anything else has no valid aggregation.
class LumpabilityError : public std::runtime_error {
public:
    explicit LumpabilityError(const std::string& what)
        : std::runtime_error("lumpability violation: " + what +
                             "; solve the full chain instead") {}
};

}  // namespace pda

#endif
