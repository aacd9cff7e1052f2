#pragma once

#include <stdexcept>
#include <string>

namespace relaylab {

// Invalid inputs or violated strict power constraints.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Every start of a search landed outside the feasible set.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative numeric routine hit its cap before reaching tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double best_estimate, double error_estimate)
        : std::runtime_error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace relaylab
