#pragma once

#include <limits>
#include <vector>

#include "relayq/channel.hpp"
#include "relayq/errors.hpp"
#include "relayq/numerics.hpp"

namespace relayq {

// ===========================================================================
// Throughput-optimal link selection, no delay constraint
// ===========================================================================

/// The three mutually exclusive operating regimes of the optimal policy.
enum class PolicyCase { Case1, Case2, Case3 };

/// Optimal link-selection policy for fixed-rate transmission: regime plus the
/// coin probability P_C used to break ties.
struct FixedRatePolicy {
    PolicyCase policy_case = PolicyCase::Case1;
    double p_c = 0.5;
};

/// Regime classification from the outage probabilities.
/// Case2 iff P_R > R0/(R0+S0(1-P_S)); Case3 iff P_S > S0/(S0+R0(1-P_R));
/// Case1 otherwise. At most one strict inequality can hold.
PolicyCase classify_case(const OutageProfile& prof, const RateConfig& rates);

/// Coin probability P_C for the given regime. Throws std::domain_error if the
/// regime does not match classify_case (formula lands outside [0,1]).
double coin_probability(PolicyCase c, const OutageProfile& prof, const RateConfig& rates);

/// Convenience: classify and compute the coin in one step.
FixedRatePolicy make_fixed_rate_policy(const OutageProfile& prof, const RateConfig& rates);

/// Per-slot link selection d in {0,1}; d=1 selects the relay-destination link.
/// coin must be drawn Bernoulli(p_c). Case 3 uses the simplified rule
/// d = 1 - O_S, which achieves the same throughput without R-D outage state.
int select_link_optimal(const FixedRatePolicy& policy, const SlotDraw& slot, int coin);

/// Maximum throughput per regime (bits/slot).
double throughput_optimal(const OutageProfile& prof, const RateConfig& rates);

/// Maximum throughput when neither link is ever in outage: S0 R0/(S0+R0).
double throughput_no_outage(const RateConfig& rates);

/// Outage probability of the optimal policy; equals 1 - tau/tau0.
double outage_optimal(const OutageProfile& prof, const RateConfig& rates);

/// High-SNR behaviour at gamma_s = gamma_r = gamma: throughput limit and the
/// gamma^-2 outage asymptote (2^S0-1)(2^R0-1) / (obar_s obar_r gamma^2).
struct HighSnrFixed {
    double tau_limit = 0.0;
    double fout_asymptote = 0.0;
};
HighSnrFixed high_snr_fixed(const ChannelParams& params, const RateConfig& rates);

/// Diversity-multiplexing tradeoff of the optimal policy: DM(r) = 2(1-2r),
/// 0 <= r < 1/2.
double diversity_multiplexing(double multiplexing_gain);

/// Rayleigh-optimal rates at high SNR for target no-outage throughput tau0:
/// S0 = R0 = 2 tau0.
RateConfig optimal_rates(double tau0);

// ===========================================================================
// Delay-constrained link selection and its Markov-chain analysis (S0 = R0)
// ===========================================================================

/// Queue-aware variants of the optimal policy.
/// V1: source forced whenever Q <= R0 and the S-R link is up; falls through
///     to the Case-1 table otherwise.
/// V2: source forced only at Q = 0; Case-1 table otherwise.
/// V3: source forced only at Q = 0; Case-2 table otherwise.
enum class DelayPolicy { V1, V2, V3 };

/// A delay-constrained policy: variant, coin probability and the induced
/// birth-death parameters p (down-transition) and q (hold).
struct DelayVariant {
    DelayPolicy variant = DelayPolicy::V1;
    double p_c = 1.0;
    double p = 0.0;
    double q = 0.0;
};

/// Build a DelayVariant from outage probabilities and a coin probability.
/// V1/V2: p = (1-P_S)(1-P_R)P_C + P_S(1-P_R), q = P_S P_R.
/// V3:    p = 1-P_R, q = P_S P_R + (1-P_S) P_R P_C.
DelayVariant make_delay_variant(DelayPolicy v, const OutageProfile& prof, double p_c);

/// Per-slot selection for the delay-constrained policies. q_prev is the queue
/// content in bits before the slot; the buffer-state override applies first,
/// then the slot falls through to the regular case table.
int select_link_delay(const DelayVariant& dv, double q_prev, const SlotDraw& slot,
                      int coin, const RateConfig& rates);

/// Explicit (L+1)-state transition matrix of the buffer occupancy chain.
/// Exposed so the generic stationary solver can serve as an oracle for the
/// closed forms. Raw-parameter version: p, q, ps need not come from a
/// consistent (P_S, P_R, P_C) triple.
TransitionMatrix buffer_chain_matrix(DelayPolicy v, double p, double q, double ps, int L);
TransitionMatrix buffer_chain_matrix(const DelayVariant& dv, const OutageProfile& prof, int L);

/// Closed-form stationary occupancy Pr{Q = k R0}, k = 0..L, evaluated in a
/// ratio form that stays finite for large L. Throws DegenerateChainError when
/// |2p+q-1| is below tol (the printed forms are singular there).
std::vector<double> markov_stationary_closed(DelayPolicy v, double p, double q,
                                             double ps, int L,
                                             double degenerate_tol = 1e-9);
std::vector<double> markov_stationary_closed(const DelayVariant& dv,
                                             const OutageProfile& prof, int L);

/// Stationary throughput/queue/delay metrics of the finite-buffer chain.
struct MarkovAnalysis {
    std::vector<double> occupancy; ///< Pr{Q = k R0}, k = 0..L
    double mean_queue = 0.0;       ///< E{Q}, bits
    double mean_delay = 0.0;       ///< E{T}, slots (Little's law)
    double arrival_rate = 0.0;     ///< A, bits/slot (accepted arrivals)
    double throughput = 0.0;       ///< tau, bits/slot
    double outage = 0.0;           ///< F_out = 1 - tau/(R0/2)
};

/// Full finite-L analysis. Requires S0 = R0 (the chain counts R0-bit packets).
MarkovAnalysis markov_metrics(const DelayVariant& dv, const OutageProfile& prof,
                              int L, const RateConfig& rates);

/// Infinite-buffer limits: Pr{Q=0}, E{T} and tau. Requires 2p+q-1 > 0, else
/// throws UnstableDelayError (delay grows with L).
struct InfiniteBufferMetrics {
    double pr_empty = 0.0;
    double mean_delay = 0.0;
    double throughput = 0.0;
};
InfiniteBufferMetrics infinite_buffer_metrics(const DelayVariant& dv,
                                              const OutageProfile& prof,
                                              const RateConfig& rates);

/// Achievable mean-delay interval of a variant at the given outage profile.
/// t_max is +inf where the variant can reach any delay above t_min. Throws
/// std::domain_error when the variant's regime condition fails.
struct DelayLimits {
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
};
DelayLimits delay_limits(DelayPolicy v, const OutageProfile& prof);

/// Pick the variant whose interval contains the target delay (preferring V1,
/// then V2, then V3) and solve E{T}(P_C) = target by bisection. Throws
/// UnachievableDelayError with the nearest achievable bound otherwise.
DelayVariant tune_delay(double target_delay, const OutageProfile& prof);

/// Same, constrained to one variant.
DelayVariant tune_delay(double target_delay, const OutageProfile& prof, DelayPolicy v);

/// Outage probability of the finite-buffer delay-constrained policy,
/// by stationary-weighted counting of slots with no effective transmission
/// (silent links, empty-buffer relay slots, and full-buffer packet drops).
/// Identical to 1 - tau/(R0/2) with tau from markov_metrics.
double outage_delay_constrained(const DelayVariant& dv, const OutageProfile& prof, int L);

/// Same in the L -> infinity limit: P_S Pr{Q=0} + q (1 - Pr{Q=0}).
double outage_delay_constrained_inf(const DelayVariant& dv, const OutageProfile& prof);

/// High-SNR asymptote of the delay-constrained outage probability:
/// P_S/(E{T}+1) for 1 < E{T} <= 3, P_S^2/(E{T}-1) + P_S P_R for E{T} > 3.
double outage_high_snr_delay(double target_delay, const OutageProfile& prof);

} // namespace relayq
