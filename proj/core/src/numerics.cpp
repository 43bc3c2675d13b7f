#include "relayq/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace relayq {

namespace {

constexpr double kEulerGamma = 0.57721566490153286060651209008240;

// E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
double e1_series(double x) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 80; ++k) {
        term *= -x / k;
        const double add = -term / k;
        sum += add;
        if (std::fabs(add) < 1e-18 * std::fabs(sum) + 1e-300) break;
    }
    return -kEulerGamma - std::log(x) + sum;
}

// E1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - 9/(...)))), modified Lentz.
double e1_contfrac(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        double t = a * d + b;
        if (t == 0.0) t = tiny;
        d = 1.0 / t;
        c = b + a / c;
        if (c == 0.0) c = tiny;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return std::exp(-x) * h;
}

} // namespace

double exp_integral_e1(double x) {
    if (!(x > 0.0)) {
        if (std::isinf(x) && x > 0) return 0.0;
        throw std::domain_error("exp_integral_e1: requires x > 0");
    }
    if (std::isinf(x)) return 0.0;
    if (x < 1.0) return e1_series(x);
    if (x > 700.0) return 0.0; // e^-x underflows
    return e1_contfrac(x);
}

double lambert_w0(double x) {
    const double inv_e = std::exp(-1.0);
    if (x < -inv_e) {
        // branch point up to rounding
        if (x > -inv_e - 1e-15) x = -inv_e;
        else throw std::domain_error("lambert_w0: requires x >= -1/e");
    }
    if (x == 0.0) return 0.0;
    if (x == -inv_e) return -1.0;

    double w;
    if (x < -0.25) {
        // expansion around the branch point
        const double p = std::sqrt(2.0 * (1.0 + std::exp(1.0) * x));
        w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
    } else if (x < 0.0) {
        w = x * (1.0 - x);
    } else if (x < 100.0) {
        w = std::log1p(x);
    } else {
        const double l = std::log(x);
        const double ll = std::log(l);
        w = l - ll + ll / l;
    }

    // Halley iteration on f(w) = w e^w - x
    for (int it = 0; it < 60; ++it) {
        const double ew = std::exp(w);
        const double f = w * ew - x;
        if (f == 0.0) break;
        const double wp1 = w + 1.0;
        double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
        if (denom == 0.0 || !std::isfinite(denom)) break;
        const double dw = f / denom;
        w -= dw;
        if (std::fabs(dw) <= 1e-16 * (1.0 + std::fabs(w))) break;
    }
    return w;
}

double bisect(const std::function<double(double)>& f, double lo, double hi,
              const SolverConfig& cfg) {
    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0) || cfg.max_iter < 1)
        throw std::invalid_argument("bisect: bad solver config");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0)
        throw SolverError("bisect: f(lo) and f(hi) have the same sign");

    double mid = lo;
    for (int it = 0; it < cfg.max_iter; ++it) {
        mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) < cfg.abs_tol ||
            (hi - lo) < cfg.rel_tol * std::fabs(mid) + cfg.abs_tol)
            return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    throw SolverError("bisect: no convergence within max_iter");
}

TransitionMatrix::TransitionMatrix(std::size_t dim)
    : dim_(dim), entries_(dim * dim, 0.0) {
    if (dim == 0) throw std::invalid_argument("TransitionMatrix: dim must be >= 1");
}

void TransitionMatrix::validate(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            const double v = at(i, j);
            if (v < -tol || v > 1.0 + tol)
                throw std::invalid_argument("TransitionMatrix: entry outside [0,1]");
            row += v;
        }
        if (std::fabs(row - 1.0) > tol * dim_ + tol)
            throw std::invalid_argument("TransitionMatrix: row does not sum to 1");
    }
}

std::vector<double> stationary_distribution(const TransitionMatrix& m,
                                            const SolverConfig& cfg) {
    m.validate(1e-9);
    const std::size_t n = m.dim();

    // (M^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
    std::vector<double> a(n * n);
    std::vector<double> b(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a[i * n + j] = m.at(j, i) - (i == j ? 1.0 : 0.0);
    for (std::size_t j = 0; j < n; ++j) a[(n - 1) * n + j] = 1.0;
    b[n - 1] = 1.0;

    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> piv(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t best = col;
        double best_v = std::fabs(a[piv[col] * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::fabs(a[piv[r] * n + col]);
            if (v > best_v) { best_v = v; best = r; }
        }
        if (best_v < 1e-13)
            throw SolverError("stationary_distribution: singular or reducible chain");
        std::swap(piv[col], piv[best]);
        const double pivot = a[piv[col] * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double factor = a[piv[r] * n + col] / pivot;
            if (factor == 0.0) continue;
            for (std::size_t j = col; j < n; ++j)
                a[piv[r] * n + j] -= factor * a[piv[col] * n + j];
            b[piv[r]] -= factor * b[piv[col]];
        }
    }
    std::vector<double> pi(n);
    for (std::size_t ri = n; ri-- > 0;) {
        double s = b[piv[ri]];
        for (std::size_t j = ri + 1; j < n; ++j) s -= a[piv[ri] * n + j] * pi[j];
        pi[ri] = s / a[piv[ri] * n + ri];
    }

    double sum = 0.0;
    for (double& v : pi) {
        if (v < 0.0 && v > -1e-12) v = 0.0;
        if (v < 0.0)
            throw SolverError("stationary_distribution: negative stationary mass");
        sum += v;
    }
    for (double& v : pi) v /= sum;

    // fixed-point residual check
    double resid = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double pj = 0.0;
        for (std::size_t i = 0; i < n; ++i) pj += pi[i] * m.at(i, j);
        resid = std::max(resid, std::fabs(pj - pi[j]));
    }
    if (resid > std::max(cfg.abs_tol, 1e-10))
        throw SolverError("stationary_distribution: fixed-point residual too large");
    return pi;
}

} // namespace relayq
