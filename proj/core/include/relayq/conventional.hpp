#pragma once

#include "relayq/channel.hpp"
#include "relayq/errors.hpp"

namespace relayq {

// Conventional relaying baselines: the transmission schedule is fixed ahead
// of time instead of selected per slot.

/// Conventional Relaying 1: source owns the first xi N slots, relay the rest.
struct Conv1Result {
    double xi = 0.5;        ///< optimized source-slot fraction
    double throughput = 0.0;
    double outage = 0.0;
};

/// Fixed-rate Conventional 1 with the optimal split xi = (1-P_R)/(2-P_S-P_R).
/// The benchmark assumes equal rates, so a single rate r0 is taken.
Conv1Result conv1_fixed(const OutageProfile& prof, double r0);

/// High-SNR asymptote of the Conventional-1 outage at gamma_s=gamma_r=gamma:
/// (2^r0 - 1)(obar_s + obar_r) / (2 obar_s obar_r gamma)  — diversity one.
double conv1_fixed_outage_high_snr(const ChannelParams& params, double r0);

/// Fixed-rate Conventional 2: strict source/relay slot alternation.
struct Conv2Result {
    double throughput = 0.0;
    double outage = 0.0;
};
Conv2Result conv2_fixed(const OutageProfile& prof, double r0);

/// Mixed-rate Conventional 1: fixed-rate source, rate-adaptive relay;
/// mean_cap = E{log2(1+r)} of the relay link (fixed power or water-filled).
Conv1Result conv1_mixed(const OutageProfile& prof, double s0, double mean_cap);

/// Water-filling level lambda_c for mixed Conventional 1 with power
/// allocation, from (1-P_S) gamma_s + int_{lambda_c}^inf (1/lambda_c - 1/h) f dh
/// = 2 Gamma (the budget convention printed with the scheme). The resulting
/// mean capacity is E1(lambda_c/obar_r)/ln 2.
double conv1_mixed_pa_level(const ChannelParams& params, const RateConfig& rates,
                            double gamma_budget);
double conv1_mixed_pa_mean_cap(double lambda_c, double omega_bar_r);

/// Delay-constrained conventional mixed schedule: k source slots then n relay
/// slots, repeated.
struct ConvMixedSchedule {
    int k = 1;
    int n = 1;

    void validate() const {
        if (k < 1 || n < 1)
            throw std::invalid_argument("ConvMixedSchedule: k and n must be >= 1");
    }
};

/// Throughput k/(k+n) (1-P_S) S0 of the k/n cycle. Throws std::domain_error
/// when the queue would absorb, i.e. k(1-P_S)S0 > n E{log2(1+r)}.
double conv_mixed_delay(const ConvMixedSchedule& sched, const OutageProfile& prof,
                        double s0, double mean_cap);

/// High-SNR limits for a target average delay: tau -> S0 (1 - 1/(2 E{T})),
/// multiplexing gain r -> 1 - 1/(2 E{T}); the implied schedule is
/// k = 2 E{T} - 1, n = 1.
struct ConvMixedHighSnr {
    double throughput_limit = 0.0;
    double multiplexing_gain = 0.0;
    ConvMixedSchedule schedule;
};
ConvMixedHighSnr conv_mixed_high_snr(double target_delay, double s0);

} // namespace relayq
