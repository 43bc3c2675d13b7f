#include "relayq/fixed_rate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

namespace relayq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Case-1 selection table (coin breaks the both-links-up tie; both-links-down
// slots are silent and we pin d = 0 for reproducibility).
int case1_select(const SlotDraw& s, int coin) {
    if (s.o_s == 1 && s.o_r == 0) return 0;
    if (s.o_s == 0 && s.o_r == 1) return 1;
    if (s.o_s == 1 && s.o_r == 1) return coin;
    return 0;
}

// Case-2 table: relay preferred; coin may idle the slot when only the source
// link is up (keeps the queue from absorbing).
int case2_select(const SlotDraw& s, int coin) {
    if (s.o_s == 1 && s.o_r == 0) return coin;
    if (s.o_r == 1) return 1;
    return 0;
}

} // namespace

PolicyCase classify_case(const OutageProfile& prof, const RateConfig& rates) {
    prof.validate();
    rates.validate();
    const double s0 = rates.s0, r0 = rates.r0;
    if (prof.p_r > r0 / (r0 + s0 * (1.0 - prof.p_s))) return PolicyCase::Case2;
    if (prof.p_s > s0 / (s0 + r0 * (1.0 - prof.p_r))) return PolicyCase::Case3;
    return PolicyCase::Case1;
}

double coin_probability(PolicyCase c, const OutageProfile& prof, const RateConfig& rates) {
    const double ps = prof.p_s, pr = prof.p_r, s0 = rates.s0, r0 = rates.r0;
    double pc;
    switch (c) {
        case PolicyCase::Case1:
            pc = (s0 * (1.0 - ps) - (1.0 - pr) * ps * r0) /
                 ((1.0 - ps) * (1.0 - pr) * (s0 + r0));
            break;
        case PolicyCase::Case2:
            pc = (s0 * (1.0 - ps) * pr - (1.0 - pr) * r0) / ((1.0 - ps) * pr * s0);
            break;
        case PolicyCase::Case3:
            pc = (s0 * (1.0 - ps)) / (r0 * (1.0 - pr) * ps);
            break;
        default:
            throw std::logic_error("coin_probability: bad case");
    }
    if (pc < -1e-12 || pc > 1.0 + 1e-12)
        throw std::domain_error("coin_probability: case inconsistent with (P_S, P_R)");
    return std::clamp(pc, 0.0, 1.0);
}

FixedRatePolicy make_fixed_rate_policy(const OutageProfile& prof, const RateConfig& rates) {
    const PolicyCase c = classify_case(prof, rates);
    return {c, coin_probability(c, prof, rates)};
}

int select_link_optimal(const FixedRatePolicy& policy, const SlotDraw& slot, int coin) {
    switch (policy.policy_case) {
        case PolicyCase::Case1: return case1_select(slot, coin);
        case PolicyCase::Case2: return case2_select(slot, coin);
        case PolicyCase::Case3: return slot.o_s ? 0 : 1; // simplified rule, no R-D CSI
    }
    return 0;
}

double throughput_optimal(const OutageProfile& prof, const RateConfig& rates) {
    switch (classify_case(prof, rates)) {
        case PolicyCase::Case1:
            return rates.s0 * rates.r0 / (rates.s0 + rates.r0) * (1.0 - prof.p_s * prof.p_r);
        case PolicyCase::Case2:
            return rates.r0 * (1.0 - prof.p_r);
        case PolicyCase::Case3:
            return rates.s0 * (1.0 - prof.p_s);
    }
    return 0.0;
}

double throughput_no_outage(const RateConfig& rates) {
    return rates.s0 * rates.r0 / (rates.s0 + rates.r0);
}

double outage_optimal(const OutageProfile& prof, const RateConfig& rates) {
    const double ps = prof.p_s, pr = prof.p_r;
    switch (classify_case(prof, rates)) {
        case PolicyCase::Case2: return pr - (1.0 - pr) * rates.r0 / rates.s0;
        case PolicyCase::Case3: return ps - (1.0 - ps) * rates.s0 / rates.r0;
        case PolicyCase::Case1: return ps * pr;
    }
    return 0.0;
}

HighSnrFixed high_snr_fixed(const ChannelParams& params, const RateConfig& rates) {
    params.validate();
    rates.validate();
    HighSnrFixed h;
    h.tau_limit = throughput_no_outage(rates);
    const double gamma = params.gamma_s;
    h.fout_asymptote = outage_threshold(rates.s0) / params.omega_bar_s *
                       outage_threshold(rates.r0) / params.omega_bar_r / (gamma * gamma);
    return h;
}

double diversity_multiplexing(double r) {
    if (r < 0.0 || r >= 0.5)
        throw std::domain_error("diversity_multiplexing: requires 0 <= r < 1/2");
    return 2.0 * (1.0 - 2.0 * r);
}

RateConfig optimal_rates(double tau0) {
    if (!(tau0 > 0)) throw std::domain_error("optimal_rates: tau0 must be > 0");
    return {2.0 * tau0, 2.0 * tau0};
}

// ===========================================================================
// Delay-constrained policies
// ===========================================================================

DelayVariant make_delay_variant(DelayPolicy v, const OutageProfile& prof, double p_c) {
    prof.validate();
    if (p_c < 0.0 || p_c > 1.0)
        throw std::invalid_argument("make_delay_variant: p_c must be in [0,1]");
    const double ps = prof.p_s, pr = prof.p_r;
    DelayVariant dv;
    dv.variant = v;
    dv.p_c = p_c;
    if (v == DelayPolicy::V3) {
        dv.p = 1.0 - pr;
        dv.q = ps * pr + (1.0 - ps) * pr * p_c;
    } else {
        dv.p = (1.0 - ps) * (1.0 - pr) * p_c + ps * (1.0 - pr);
        dv.q = ps * pr;
    }
    return dv;
}

int select_link_delay(const DelayVariant& dv, double q_prev, const SlotDraw& slot,
                      int coin, const RateConfig& rates) {
    if (q_prev < 0)
        throw std::invalid_argument("select_link_delay: negative queue");
    const bool override_state = dv.variant == DelayPolicy::V1
                                    ? q_prev <= rates.r0
                                    : q_prev == 0.0;
    if (override_state && slot.o_s == 1) return 0;
    if (dv.variant == DelayPolicy::V3) return case2_select(slot, coin);
    return case1_select(slot, coin);
}

TransitionMatrix buffer_chain_matrix(DelayPolicy v, double p, double q, double ps, int L) {
    if (L < 1) throw std::invalid_argument("buffer_chain_matrix: L must be >= 1");
    TransitionMatrix m(static_cast<std::size_t>(L) + 1);
    m.at(0, 0) = ps;
    m.at(0, 1) = 1.0 - ps;
    for (int k = 1; k <= L; ++k) {
        double down, up;
        if (v == DelayPolicy::V1 && k == 1) {
            down = ps - q; // P_S (1 - P_R)
            up = 1.0 - ps;
        } else {
            down = p;
            up = 1.0 - p - q;
        }
        m.at(k, k - 1) = down;
        if (k < L) {
            m.at(k, k + 1) = up;
            m.at(k, k) = 1.0 - down - up;
        } else {
            m.at(k, k) = 1.0 - down;
        }
    }
    m.validate(1e-12);
    return m;
}

TransitionMatrix buffer_chain_matrix(const DelayVariant& dv, const OutageProfile& prof, int L) {
    return buffer_chain_matrix(dv.variant, dv.p, dv.q, prof.p_s, L);
}

std::vector<double> markov_stationary_closed(DelayPolicy v, double p, double q,
                                             double ps, int L, double degenerate_tol) {
    if (L < 1) throw std::invalid_argument("markov_stationary_closed: L must be >= 1");
    if (std::fabs(2.0 * p + q - 1.0) < degenerate_tol)
        throw DegenerateChainError("markov closed form singular at 2p+q-1 = 0");
    if (!(p > 0))
        throw DegenerateChainError("markov closed form requires p > 0");

    // Occupancy weights with the common p^(L-...) power divided out:
    //   V1:    w0 = p (P_S - q), w1 = p (1 - P_S), wk = (1-P_S)^2 x^(k-2)
    //   V2/V3: w0 = p,           wk = (1 - P_S) x^(k-1)
    // where x = (1-p-q)/p.
    const double x = (1.0 - p - q) / p;
    std::vector<double> w(static_cast<std::size_t>(L) + 1);
    if (v == DelayPolicy::V1) {
        w[0] = p * (ps - q);
        w[1] = p * (1.0 - ps);
        double t = (1.0 - ps) * (1.0 - ps);
        for (int k = 2; k <= L; ++k) {
            w[k] = t;
            t *= x;
        }
    } else {
        w[0] = p;
        double t = 1.0 - ps;
        for (int k = 1; k <= L; ++k) {
            w[k] = t;
            t *= x;
        }
    }
    double sum = 0.0;
    for (double v_ : w) sum += v_;
    for (double& v_ : w) v_ /= sum;
    return w;
}

std::vector<double> markov_stationary_closed(const DelayVariant& dv,
                                             const OutageProfile& prof, int L) {
    return markov_stationary_closed(dv.variant, dv.p, dv.q, prof.p_s, L);
}

MarkovAnalysis markov_metrics(const DelayVariant& dv, const OutageProfile& prof,
                              int L, const RateConfig& rates) {
    rates.validate();
    if (std::fabs(rates.s0 - rates.r0) > 1e-12)
        throw std::invalid_argument("markov_metrics: the packet chain requires S0 = R0");
    const double r0 = rates.r0;
    const double ps = prof.p_s;
    const double p = dv.p, q = dv.q;

    MarkovAnalysis a;
    a.occupancy = markov_stationary_closed(dv, prof, L);
    const std::vector<double>& pi = a.occupancy;

    for (int k = 0; k <= L; ++k) a.mean_queue += k * pi[k];
    a.mean_queue *= r0;

    // Accepted arrivals and departures from the per-state rates; in steady
    // state the two coincide (birth-death flow balance).
    double arr = 0.0, dep = 0.0;
    if (dv.variant == DelayPolicy::V1) {
        arr += (1.0 - ps) * pi[0];
        if (L >= 2) arr += (1.0 - ps) * pi[1];
        for (int k = 2; k <= L - 1; ++k) arr += (1.0 - p - q) * pi[k];
        dep += (ps - q) * pi[1];
        for (int k = 2; k <= L; ++k) dep += p * pi[k];
    } else {
        arr += (1.0 - ps) * pi[0];
        for (int k = 1; k <= L - 1; ++k) arr += (1.0 - p - q) * pi[k];
        for (int k = 1; k <= L; ++k) dep += p * pi[k];
    }
    a.arrival_rate = r0 * arr;
    a.throughput = r0 * dep;
    a.mean_delay = a.mean_queue / a.arrival_rate;
    a.outage = 1.0 - a.throughput / (r0 / 2.0);
    return a;
}

InfiniteBufferMetrics infinite_buffer_metrics(const DelayVariant& dv,
                                              const OutageProfile& prof,
                                              const RateConfig& rates) {
    rates.validate();
    const double ps = prof.p_s, pr = prof.p_r, pc = dv.p_c, r0 = rates.r0;
    const double margin = 2.0 * dv.p + dv.q - 1.0;
    if (margin <= 0.0)
        throw UnstableDelayError("infinite_buffer_metrics: 2p+q-1 <= 0, delay unbounded");

    InfiniteBufferMetrics m;
    switch (dv.variant) {
        case DelayPolicy::V1:
            m.pr_empty = ps * (2.0 * pc * (1.0 - pr) * (1.0 - ps) + (2.0 - pr) * ps - 1.0) /
                         (2.0 * pc * (1.0 - ps) * (1.0 - ps * pr) + ps * ps * (1.0 - pr));
            m.mean_delay = 1.0 / margin +
                           2.0 * pc * (1.0 - ps) /
                               (ps * ps * (pc * (2.0 * pr - 1.0) - pr + 1.0) -
                                2.0 * pc * pr * ps + pc);
            m.throughput = r0 * (1.0 - ps) *
                           (ps * ps * (pc * (2.0 * pr - 1.0) - pr + 1.0) -
                            2.0 * pc * pr * ps + pc) /
                           (2.0 * pc * (1.0 - ps) * (1.0 - ps * pr) + (1.0 - pr) * ps * ps);
            break;
        case DelayPolicy::V2:
            m.pr_empty = (2.0 * pc * (1.0 - pr) * (1.0 - ps) + ps * (2.0 - pr) - 1.0) /
                         ((1.0 - pr) * (ps + 2.0 * pc * (1.0 - ps)));
            m.mean_delay = 1.0 / margin;
            m.throughput = r0 * (1.0 - ps) * (pc * (1.0 - ps) + ps) /
                           (2.0 * pc * (1.0 - ps) + ps);
            break;
        case DelayPolicy::V3:
            m.pr_empty = margin / (margin + 1.0 - ps);
            m.mean_delay = 1.0 / margin;
            m.throughput = r0 * (1.0 + ps * pr - pr - ps) / (margin + 1.0 - ps);
            break;
    }
    return m;
}

DelayLimits delay_limits(DelayPolicy v, const OutageProfile& prof) {
    prof.validate();
    const double ps = prof.p_s, pr = prof.p_r;
    DelayLimits lim;
    const bool v12_regime = pr < 1.0 / (2.0 - ps);
    const double t_cap = ps > 1.0 / (2.0 - pr) ? 1.0 / (ps * (2.0 - pr) - 1.0) : kInf;
    switch (v) {
        case DelayPolicy::V1:
            if (!v12_regime)
                throw std::domain_error("delay_limits: V1 requires P_R < 1/(2-P_S)");
            lim.t_min = 1.0 / (1.0 - pr * (2.0 - ps)) +
                        2.0 * (1.0 - ps) / (1.0 - ps * pr * (2.0 - ps));
            lim.t_max = t_cap;
            break;
        case DelayPolicy::V2:
            if (!v12_regime)
                throw std::domain_error("delay_limits: V2 requires P_R < 1/(2-P_S)");
            lim.t_min = 1.0 / (1.0 - pr * (2.0 - ps));
            lim.t_max = t_cap;
            break;
        case DelayPolicy::V3:
            if (!(pr < 1.0))
                throw std::domain_error("delay_limits: V3 requires P_R < 1");
            lim.t_min = 1.0 / (1.0 - pr);
            lim.t_max = v12_regime ? 1.0 / (1.0 - pr * (2.0 - ps)) : kInf;
            break;
    }
    return lim;
}

namespace {

// E{T} as a function of P_C for bisection; +inf in the unstable region.
double delay_of_pc(DelayPolicy v, const OutageProfile& prof, double pc,
                   const RateConfig& rates) {
    const DelayVariant dv = make_delay_variant(v, prof, pc);
    if (2.0 * dv.p + dv.q - 1.0 <= 0.0) return kInf;
    return infinite_buffer_metrics(dv, prof, rates).mean_delay;
}

} // namespace

namespace {

std::optional<DelayVariant> try_tune_variant(DelayPolicy v, double target,
                                             const OutageProfile& prof,
                                             double& nearest, double target_ref) {
    constexpr double kEdge = 1e-12;
    const RateConfig unit{1.0, 1.0}; // delay does not depend on the rate
    DelayLimits lim;
    try {
        lim = delay_limits(v, prof);
    } catch (const std::domain_error&) {
        return std::nullopt;
    }
    for (double bound : {lim.t_min, lim.t_max})
        if (std::isfinite(bound) &&
            (std::isinf(nearest) || std::fabs(bound - target_ref) < std::fabs(nearest - target_ref)))
            nearest = bound;
    if (target < lim.t_min - kEdge || target > lim.t_max + kEdge) return std::nullopt;

    // E{T}(P_C) is decreasing: P_C = 1 gives t_min, P_C = 0 gives t_max.
    if (target <= lim.t_min + kEdge) return make_delay_variant(v, prof, 1.0);
    if (std::isfinite(lim.t_max) && target >= lim.t_max - kEdge)
        return make_delay_variant(v, prof, 0.0);

    auto f = [&](double pc) { return delay_of_pc(v, prof, pc, unit) - target; };
    double lo = 0.0, hi = 1.0; // f(hi) = t_min - target < 0 <= f(lo)
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (std::fabs(fm) < 1e-12 * target) { lo = hi = mid; break; }
        if (fm > 0.0) lo = mid; else hi = mid;
    }
    return make_delay_variant(v, prof, 0.5 * (lo + hi));
}

[[noreturn]] void throw_unachievable(double target, double nearest) {
    std::ostringstream msg;
    msg << "target delay " << target << " not achievable; nearest bound " << nearest;
    if (target < nearest)
        msg << " (delays below 1/(1-P_R) call for Conventional Relaying 2)";
    throw UnachievableDelayError(msg.str(), nearest);
}

} // namespace

DelayVariant tune_delay(double target, const OutageProfile& prof) {
    prof.validate();
    if (!(target > 0))
        throw std::invalid_argument("tune_delay: target must be > 0");
    double nearest = kInf;
    for (DelayPolicy v : {DelayPolicy::V1, DelayPolicy::V2, DelayPolicy::V3})
        if (auto dv = try_tune_variant(v, target, prof, nearest, target)) return *dv;
    throw_unachievable(target, nearest);
}

DelayVariant tune_delay(double target, const OutageProfile& prof, DelayPolicy v) {
    prof.validate();
    if (!(target > 0))
        throw std::invalid_argument("tune_delay: target must be > 0");
    double nearest = kInf;
    if (auto dv = try_tune_variant(v, target, prof, nearest, target)) return *dv;
    throw_unachievable(target, nearest);
}

double outage_delay_constrained(const DelayVariant& dv, const OutageProfile& prof, int L) {
    const std::vector<double> pi = markov_stationary_closed(dv, prof, L);
    const double ps = prof.p_s, pr = prof.p_r, pc = dv.p_c;

    // Slots without an effective transmission: empty buffer with the S-R link
    // down; interior hold slots; full buffer with either a silent slot or a
    // dropped packet.
    double full;
    if (dv.variant == DelayPolicy::V3) {
        full = pr;
    } else if (dv.variant == DelayPolicy::V1 && L == 1) {
        full = (1.0 - ps) + ps * pr; // override still forces the source at k = 1
    } else {
        full = pr + (1.0 - ps) * (1.0 - pr) * (1.0 - pc);
    }
    const double interior = 1.0 - pi.front() - pi.back();
    return ps * pi.front() + dv.q * interior + full * pi.back();
}

double outage_delay_constrained_inf(const DelayVariant& dv, const OutageProfile& prof) {
    const RateConfig unit{1.0, 1.0};
    const double pr_empty = infinite_buffer_metrics(dv, prof, unit).pr_empty;
    return prof.p_s * pr_empty + dv.q * (1.0 - pr_empty);
}

double outage_high_snr_delay(double target_delay, const OutageProfile& prof) {
    if (!(target_delay > 1.0))
        throw std::domain_error("outage_high_snr_delay: requires E{T} > 1");
    const double ps = prof.p_s, pr = prof.p_r;
    if (target_delay > 3.0) return ps * ps / (target_delay - 1.0) + ps * pr;
    return ps / (target_delay + 1.0);
}

} // namespace relayq
