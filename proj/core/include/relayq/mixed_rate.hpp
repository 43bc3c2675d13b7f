#pragma once

#include <optional>

#include "relayq/channel.hpp"
#include "relayq/errors.hpp"
#include "relayq/numerics.hpp"

namespace relayq {

// Mixed rate transmission: the source keeps the fixed rate S0, the relay
// tracks its channel and transmits at log2(1+r), so the R-D link is never in
// outage. Closed forms below are for Rayleigh fading.

/// Solved mixed-rate policy. Fixed-power mode uses only rho (threshold
/// 2^(rho S0) - 1 on the relay SNR); power-allocation mode adds the water
/// level lambda, the budget Gamma and the gain threshold G >= lambda.
/// case2 marks the degenerate regime where the rule is simply d = 1 - O_S.
struct MixedPolicy {
    double rho = 0.0;
    bool case2 = false;
    bool power_allocation = false;
    double lambda = 0.0;       ///< water level (PA mode; lambda_t in case 2)
    double gamma_budget = 0.0; ///< average power budget (PA mode)
    double g_limit = 0.0;      ///< selection threshold on h_R (PA mode)
    double gamma_s = 0.0;      ///< fixed source transmit SNR (PA mode)
    double throughput = 0.0;   ///< analytic throughput of the solved policy
};

/// Per-slot decision: link selection, the rate the relay would use, and the
/// relay transmit SNR (PA mode; equals the fixed gamma_r otherwise).
struct MixedSlotDecision {
    int d = 0;
    double relay_rate = 0.0;
    double relay_power = 0.0;
};

/// True iff the non-degenerate regime applies:
/// P_S <= S0 / (S0 + E{log2(1+r)}).
bool mixed_condition(const OutageProfile& prof, const RateConfig& rates, double omega_r);

/// Solve the arrival/service balance for rho (Rayleigh closed form, bisection
/// with a doubling upper bracket). Throws SolverError if the balance has no
/// root, i.e. mixed_condition fails.
double solve_rho(const OutageProfile& prof, const RateConfig& rates, double omega_r,
                 const SolverConfig& cfg = {});

/// Arrival-side and service-side values of the balance at a given rho;
/// exposed for residual checks and tests.
double mixed_arrival_side(double rho, const OutageProfile& prof, const RateConfig& rates,
                          double omega_r);
double mixed_service_side(double rho, const OutageProfile& prof, const RateConfig& rates,
                          double omega_r);

/// Solved fixed-power policy (case decided internally).
MixedPolicy make_mixed_policy(const OutageProfile& prof, const RateConfig& rates,
                              double omega_r);

/// Analytic throughput of the fixed-power mixed policy.
double throughput_mixed(const OutageProfile& prof, const RateConfig& rates, double omega_r);

/// Per-slot selection under the fixed-power policy.
MixedSlotDecision select_link_mixed(const MixedPolicy& policy, const SlotDraw& slot,
                                    const RateConfig& rates);

/// Water-filling relay power max{0, 1/lambda - 1/h_r}.
double relay_power(double h_r, double lambda);

/// Solve the joint (rho, lambda) system for relay power allocation under the
/// average budget gamma_budget with fixed source SNR gamma_s. Falls back to
/// the case-2 policy (lambda = lambda_t) when the PA condition fails.
/// Outer bisection on lambda against the power equation, inner on rho against
/// the rate balance.
MixedPolicy solve_power_allocation(const ChannelParams& params, const RateConfig& rates,
                                   double gamma_budget, const SolverConfig& cfg = {});

/// Residuals of the solved PA system, for verification.
struct PaResiduals {
    double rate = 0.0;
    double power = 0.0;
};
PaResiduals pa_residuals(const MixedPolicy& policy, const ChannelParams& params,
                         const RateConfig& rates);

/// Per-slot selection under power allocation, given the S-R outage state and
/// the instantaneous relay gain h_r.
MixedSlotDecision select_link_mixed_pa(const MixedPolicy& policy, int o_s, double h_r);

/// Buffer-limited heuristic: rule 1 sends the relay whenever the source link
/// is down; rules 3/4 guard against overflow and underflow; rule 2 falls
/// through to the unconstrained policy.
int select_link_mixed_delay(double q_prev, double q_max, const SlotDraw& slot,
                            const MixedPolicy& policy, const RateConfig& rates);

} // namespace relayq
