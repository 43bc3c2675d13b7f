#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "relayq/errors.hpp"

namespace relayq {

/// Tolerances shared by the scalar solvers.
struct SolverConfig {
    double rel_tol = 1e-12;
    double abs_tol = 1e-12;
    int max_iter = 200;
};

/// Exponential integral E1(x) = int_x^inf e^-t / t dt, x > 0.
///
/// Power series below x = 1, modified Lentz continued fraction above.
/// Relative error is well below 1e-10 over the whole domain.
double exp_integral_e1(double x);

/// Principal branch of the Lambert W function, w * e^w = x, x >= -1/e.
double lambert_w0(double x);

/// Bisection on [lo, hi]; requires f(lo) and f(hi) to differ in sign.
/// Stops when |f(mid)| < abs_tol or the bracket shrinks below
/// rel_tol * |mid| + abs_tol.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              const SolverConfig& cfg = {});

/// Row-stochastic transition matrix of a finite Markov chain, row-major.
/// m(i, j) is the probability of moving from state i to state j.
class TransitionMatrix {
public:
    explicit TransitionMatrix(std::size_t dim);

    std::size_t dim() const { return dim_; }
    double& at(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
    double at(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

    /// Throws std::invalid_argument unless every entry is in [0,1] and every
    /// row sums to 1 within tol.
    void validate(double tol = 1e-12) const;

private:
    std::size_t dim_;
    std::vector<double> entries_;
};

/// Stationary distribution pi of a row-stochastic matrix: pi M = pi, sum pi = 1.
/// Solves the linear system directly; throws SolverError for singular or
/// reducible chains and rechecks the fixed-point residual on the way out.
std::vector<double> stationary_distribution(const TransitionMatrix& m,
                                            const SolverConfig& cfg = {});

} // namespace relayq
