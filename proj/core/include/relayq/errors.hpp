#pragma once

#include <stdexcept>
#include <string>

namespace relayq {

/// Root-finder or nonlinear-system failure (bad bracket, no convergence).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// The buffer Markov chain sits exactly on the 2p+q-1 = 0 boundary where the
/// closed-form expressions are singular.
class DegenerateChainError : public std::domain_error {
public:
    explicit DegenerateChainError(const std::string& what) : std::domain_error(what) {}
};

/// Infinite-buffer metrics requested for a policy whose delay grows without
/// bound with the buffer size (2p+q-1 <= 0).
class UnstableDelayError : public std::domain_error {
public:
    explicit UnstableDelayError(const std::string& what) : std::domain_error(what) {}
};

/// Requested average delay lies outside every achievable interval.
/// `nearest` carries the closest achievable bound.
class UnachievableDelayError : public std::domain_error {
public:
    UnachievableDelayError(const std::string& what, double nearest_bound)
        : std::domain_error(what), nearest(nearest_bound) {}
    double nearest;
};

} // namespace relayq
