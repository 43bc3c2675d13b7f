#include "relayq/mixed_rate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace relayq {

namespace {

constexpr double kLn2 = std::numbers::ln2_v<double>;
constexpr double kInf = std::numeric_limits<double>::infinity();

double expneg(double x) { return x < 700.0 ? std::exp(-x) : 0.0; }

// int_a^inf log2(1+r) f_r(r) dr for r ~ Exp(omega):
//   log2(1+a) e^(-a/omega) + e^(1/omega) E1((1+a)/omega) / ln 2
double tail_log_capacity(double a, double omega) {
    const double e = expneg(a / omega);
    double tail = std::exp(1.0 / omega) * exp_integral_e1((1.0 + a) / omega) / kLn2;
    if (e > 0.0) tail += std::log2(1.0 + a) * e;
    return tail;
}

// int_a^inf (1/lambda - 1/h) f_h(h) dh for h ~ Exp(obar):
//   e^(-a/obar)/lambda - E1(a/obar)/obar
double tail_water_power(double a, double lambda, double obar) {
    return expneg(a / obar) / lambda - exp_integral_e1(a / obar) / obar;
}

// int_a^inf log2(h/lambda) f_h(h) dh for h ~ Exp(obar), a >= lambda:
//   [E1(a/obar) + ln(a/lambda) e^(-a/obar)] / ln 2
double tail_log_gain(double a, double lambda, double obar) {
    const double e = expneg(a / obar);
    double v = exp_integral_e1(a / obar);
    if (e > 0.0) v += std::log(a / lambda) * e;
    return v / kLn2;
}

} // namespace

bool mixed_condition(const OutageProfile& prof, const RateConfig& rates, double omega_r) {
    prof.validate();
    rates.validate();
    return prof.p_s <= rates.s0 / (rates.s0 + mean_log_capacity(omega_r));
}

double mixed_arrival_side(double rho, const OutageProfile& prof, const RateConfig& rates,
                          double omega_r) {
    const double thr = outage_threshold(rho * rates.s0);
    return rates.s0 * (1.0 - prof.p_s) * -std::expm1(-thr / omega_r);
}

double mixed_service_side(double rho, const OutageProfile& prof, const RateConfig& rates,
                          double omega_r) {
    const double thr = outage_threshold(rho * rates.s0);
    return prof.p_s * mean_log_capacity(omega_r) +
           (1.0 - prof.p_s) * tail_log_capacity(thr, omega_r);
}

double solve_rho(const OutageProfile& prof, const RateConfig& rates, double omega_r,
                 const SolverConfig& cfg) {
    auto gap = [&](double rho) {
        return mixed_arrival_side(rho, prof, rates, omega_r) -
               mixed_service_side(rho, prof, rates, omega_r);
    };
    double hi = 1.0;
    while (gap(hi) < 0.0) {
        hi *= 2.0;
        if (outage_threshold(hi * rates.s0) > 1e9 * omega_r)
            throw SolverError("solve_rho: balance has no root (case-2 regime)");
    }
    SolverConfig c = cfg;
    c.abs_tol = std::min(cfg.abs_tol, 1e-12);
    return bisect(gap, 0.0, hi, c);
}

MixedPolicy make_mixed_policy(const OutageProfile& prof, const RateConfig& rates,
                              double omega_r) {
    MixedPolicy p;
    if (mixed_condition(prof, rates, omega_r)) {
        p.rho = solve_rho(prof, rates, omega_r);
        p.throughput = mixed_arrival_side(p.rho, prof, rates, omega_r);
    } else {
        p.case2 = true;
        p.throughput = rates.s0 * (1.0 - prof.p_s);
    }
    return p;
}

double throughput_mixed(const OutageProfile& prof, const RateConfig& rates, double omega_r) {
    return make_mixed_policy(prof, rates, omega_r).throughput;
}

MixedSlotDecision select_link_mixed(const MixedPolicy& policy, const SlotDraw& slot,
                                    const RateConfig& rates) {
    MixedSlotDecision dec;
    if (policy.case2) {
        dec.d = slot.o_s ? 0 : 1;
    } else if (slot.o_s == 0) {
        dec.d = 1;
    } else {
        dec.d = slot.r >= outage_threshold(policy.rho * rates.s0) ? 1 : 0;
    }
    if (dec.d == 1) dec.relay_rate = std::log2(1.0 + slot.r);
    return dec;
}

double relay_power(double h_r, double lambda) {
    if (!(lambda > 0)) throw std::domain_error("relay_power: lambda must be > 0");
    return std::max(0.0, 1.0 / lambda - 1.0 / h_r);
}

namespace {

// Threshold gain G solving ln(G/lambda) + lambda/G = rho S0 - lambda gamma_s + 1
// on [lambda, inf). When the right side is <= 1 every h >= lambda qualifies
// and G = lambda. Principal Lambert branch keeps G >= lambda.
double g_threshold(double rho, double lambda, double gamma_s, double s0) {
    const double c = lambda * gamma_s - rho * s0 - 1.0;
    if (c > -1.0) return lambda;
    const double a = -expneg(-c); // -e^c, c <= -1
    if (a == 0.0) return kInf;
    const double w = lambert_w0(a);
    if (w == 0.0) return kInf;
    return -lambda / w;
}

struct PaContext {
    double obar_r;
    double gamma_s;
    double s0;
    double ps;
    double budget;
};

double pa_rate_gap(double rho, double lambda, const PaContext& ctx) {
    const double g = g_threshold(rho, lambda, ctx.gamma_s, ctx.s0);
    if (!std::isfinite(g))
        return ctx.s0 * (1.0 - ctx.ps) -
               ctx.ps * exp_integral_e1(lambda / ctx.obar_r) / kLn2;
    const double eg = expneg(g / ctx.obar_r);
    const double lhs = ctx.s0 * (1.0 - ctx.ps) * (1.0 - eg);
    const double rhs = ctx.ps * exp_integral_e1(lambda / ctx.obar_r) / kLn2 +
                       (1.0 - ctx.ps) * tail_log_gain(g, lambda, ctx.obar_r);
    return lhs - rhs;
}

double pa_spent_power(double rho, double lambda, const PaContext& ctx) {
    const double t1 = ctx.ps * tail_water_power(lambda, lambda, ctx.obar_r);
    const double g = g_threshold(rho, lambda, ctx.gamma_s, ctx.s0);
    if (!std::isfinite(g)) return t1 + ctx.gamma_s * (1.0 - ctx.ps);
    const double eg = expneg(g / ctx.obar_r);
    return t1 + (1.0 - ctx.ps) * tail_water_power(g, lambda, ctx.obar_r) +
           ctx.gamma_s * (1.0 - ctx.ps) * (1.0 - eg);
}

// Inner solve for rho at a trial lambda. Returns nullopt tagged by sign:
// +inf when the relay can serve any load (lambda too small for a balance),
// -inf when arrivals exceed service even at rho = 0 (lambda too large).
std::optional<double> pa_solve_rho(double lambda, const PaContext& ctx, bool& starved) {
    starved = false;
    auto f = [&](double rho) { return pa_rate_gap(rho, lambda, ctx); };
    if (f(0.0) > 0.0) {
        starved = true;
        return std::nullopt;
    }
    double hi = 1.0;
    while (f(hi) < 0.0) {
        hi *= 2.0;
        if (hi > 1e8) return std::nullopt;
    }
    SolverConfig c;
    c.abs_tol = 1e-14;
    c.rel_tol = 1e-14;
    return bisect(f, 0.0, hi, c);
}

} // namespace

MixedPolicy solve_power_allocation(const ChannelParams& params, const RateConfig& rates,
                                   double gamma_budget, const SolverConfig& cfg) {
    params.validate();
    rates.validate();
    if (!(gamma_budget > 0))
        throw std::invalid_argument("solve_power_allocation: budget must be > 0");

    PaContext ctx;
    ctx.obar_r = params.omega_bar_r;
    ctx.gamma_s = params.gamma_s;
    ctx.s0 = rates.s0;
    ctx.ps = -std::expm1(-outage_threshold(rates.s0) / params.omega_s());
    ctx.budget = gamma_budget;

    MixedPolicy pol;
    pol.power_allocation = true;
    pol.gamma_budget = gamma_budget;
    pol.gamma_s = params.gamma_s;

    // solver error must sit far below the Monte Carlo noise of any run that
    // verifies the policy, so the configured tolerances are only tightened
    SolverConfig tight = cfg;
    tight.abs_tol = std::min(cfg.abs_tol, 1e-15);
    tight.rel_tol = std::min(cfg.rel_tol, 1e-15);
    tight.max_iter = std::max(cfg.max_iter, 300);

    // lambda_t: water level of the case-2 policy, from the budget equation
    // P_S * waterfill(lambda_t) + gamma_s (1 - P_S) = Gamma.
    const double base_spend = ctx.gamma_s * (1.0 - ctx.ps);
    if (base_spend >= gamma_budget)
        throw SolverError("solve_power_allocation: source power alone exceeds the budget");
    auto case2_gap = [&](double lam) {
        return ctx.ps * tail_water_power(lam, lam, ctx.obar_r) + base_spend - gamma_budget;
    };
    double lo = 1e-12, hi = 1.0;
    while (case2_gap(hi) > 0.0) hi *= 2.0;
    const double lambda_t = bisect(case2_gap, lo, hi, tight);

    // PA condition: P_S <= S0 / (S0 + E1(lambda_t/obar_r)/ln 2)
    const bool case1 =
        ctx.ps <= ctx.s0 / (ctx.s0 + exp_integral_e1(lambda_t / ctx.obar_r) / kLn2);
    if (!case1) {
        pol.case2 = true;
        pol.lambda = lambda_t;
        pol.g_limit = lambda_t;
        pol.throughput = ctx.s0 * (1.0 - ctx.ps);
        return pol;
    }

    // Outer bisection on lambda against the power budget. Service starvation
    // (rate gap positive at rho = 0) marks lambda too large; a missing balance
    // root marks lambda too small.
    auto outer = [&](double lam) {
        bool starved = false;
        const std::optional<double> rho = pa_solve_rho(lam, ctx, starved);
        if (!rho) return starved ? -kInf : kInf;
        return pa_spent_power(*rho, lam, ctx) - gamma_budget;
    };
    lo = 1e-9;
    hi = 1.0;
    while (outer(hi) > 0.0) {
        hi *= 2.0;
        if (hi > 1e9) throw SolverError("solve_power_allocation: no outer bracket");
    }
    double flo = outer(lo);
    if (flo < 0.0) {
        while (flo < 0.0) {
            lo *= 0.5;
            if (lo < 1e-300) throw SolverError("solve_power_allocation: no outer bracket");
            flo = outer(lo);
        }
    }
    for (int it = 0; it < tight.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = outer(mid);
        if (std::fabs(fm) < 1e-12 || (hi - lo) < 1e-16 * mid) { lo = hi = mid; break; }
        if (fm > 0.0) lo = mid; else hi = mid;
    }
    pol.lambda = 0.5 * (lo + hi);
    bool starved = false;
    const std::optional<double> rho = pa_solve_rho(pol.lambda, ctx, starved);
    if (!rho) {
        std::ostringstream msg;
        msg << "solve_power_allocation: inner balance lost at lambda = " << pol.lambda
            << " (bracket [" << lo << ", " << hi << "])";
        throw SolverError(msg.str());
    }
    pol.rho = *rho;
    pol.g_limit = g_threshold(pol.rho, pol.lambda, ctx.gamma_s, ctx.s0);
    pol.throughput = ctx.s0 * (1.0 - ctx.ps) * (1.0 - expneg(pol.g_limit / ctx.obar_r));

    const PaResiduals res = pa_residuals(pol, params, rates);
    if (std::fabs(res.rate) > 1e-8 || std::fabs(res.power) > 1e-8) {
        std::ostringstream msg;
        msg << "solve_power_allocation: residuals too large (rate " << res.rate
            << ", power " << res.power << ") at rho = " << pol.rho
            << ", lambda = " << pol.lambda;
        throw SolverError(msg.str());
    }
    return pol;
}

PaResiduals pa_residuals(const MixedPolicy& policy, const ChannelParams& params,
                         const RateConfig& rates) {
    PaContext ctx;
    ctx.obar_r = params.omega_bar_r;
    ctx.gamma_s = params.gamma_s;
    ctx.s0 = rates.s0;
    ctx.ps = -std::expm1(-outage_threshold(rates.s0) / params.omega_s());
    ctx.budget = policy.gamma_budget;
    PaResiduals r;
    if (policy.case2) {
        r.rate = 0.0;
        r.power = ctx.ps * tail_water_power(policy.lambda, policy.lambda, ctx.obar_r) +
                  ctx.gamma_s * (1.0 - ctx.ps) - policy.gamma_budget;
        return r;
    }
    r.rate = pa_rate_gap(policy.rho, policy.lambda, ctx);
    r.power = pa_spent_power(policy.rho, policy.lambda, ctx) - policy.gamma_budget;
    return r;
}

MixedSlotDecision select_link_mixed_pa(const MixedPolicy& policy, int o_s, double h_r) {
    MixedSlotDecision dec;
    if (policy.case2) {
        dec.d = o_s ? 0 : 1;
    } else if (o_s == 0) {
        dec.d = h_r >= policy.lambda ? 1 : 0; // epsilon slot below the cutoff
    } else {
        dec.d = h_r >= policy.g_limit ? 1 : 0;
    }
    if (dec.d == 1) {
        dec.relay_power = relay_power(h_r, policy.lambda);
        dec.relay_rate = std::log2(1.0 + dec.relay_power * h_r);
    }
    return dec;
}

int select_link_mixed_delay(double q_prev, double q_max, const SlotDraw& slot,
                            const MixedPolicy& policy, const RateConfig& rates) {
    if (q_prev < 0 || q_prev > q_max)
        throw std::invalid_argument("select_link_mixed_delay: queue outside [0, q_max]");
    if (slot.o_s == 0) return 1;
    const double rate = std::log2(1.0 + slot.r);
    if (rate <= q_prev && q_prev <= q_max - rates.s0)
        return select_link_mixed(policy, slot, rates).d;
    if (q_prev > q_max - rates.s0) return 1;
    return 0;
}

} // namespace relayq
