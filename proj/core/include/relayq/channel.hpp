#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

namespace relayq {

/// Average squared channel gains and transmit SNRs of the source-relay and
/// relay-destination links. Average link SNRs are omega_s() and omega_r().
struct ChannelParams {
    double omega_bar_s = 1.0; ///< E{h_S}
    double omega_bar_r = 1.0; ///< E{h_R}
    double gamma_s = 1.0;     ///< source transmit SNR, linear
    double gamma_r = 1.0;     ///< relay transmit SNR, linear

    double omega_s() const { return gamma_s * omega_bar_s; }
    double omega_r() const { return gamma_r * omega_bar_r; }

    void validate() const {
        if (!(omega_bar_s > 0) || !(omega_bar_r > 0) || !(gamma_s > 0) || !(gamma_r > 0))
            throw std::invalid_argument("ChannelParams: all fields must be > 0");
    }
};

/// Fixed transmission rates of source and relay in bits/slot.
struct RateConfig {
    double s0 = 2.0;
    double r0 = 2.0;

    void validate() const {
        if (!(s0 > 0) || !(r0 > 0))
            throw std::invalid_argument("RateConfig: rates must be > 0");
    }
};

/// One slot of the block-fading process: instantaneous SNRs and the
/// non-outage indicators. o_s = 1 iff s >= 2^s0 - 1 (boundary counts as up).
struct SlotDraw {
    double s = 0.0;
    double r = 0.0;
    int o_s = 0;
    int o_r = 0;
};

/// Link outage probabilities P_S = Pr{s < 2^s0 - 1}, P_R = Pr{r < 2^r0 - 1}.
struct OutageProfile {
    double p_s = 0.0;
    double p_r = 0.0;

    void validate() const {
        if (p_s < 0 || p_s > 1 || p_r < 0 || p_r > 1)
            throw std::invalid_argument("OutageProfile: probabilities must be in [0,1]");
    }
};

/// Deterministic per-run random stream. All simulations consume exactly
/// three uniforms per slot in fixed order (channel S, channel R, coin), so a
/// seed pins the whole trajectory regardless of the policy being run.
class SlotRng {
public:
    explicit SlotRng(std::uint64_t seed) : gen_(seed) {}

    /// uniform in (0,1)
    double uniform() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// exponential with the given mean, inverse-CDF
    double exponential(double mean) { return -mean * std::log(uniform()); }

private:
    std::mt19937_64 gen_;
};

double outage_threshold(double rate); ///< 2^rate - 1

/// Draw one slot of i.i.d. Rayleigh fading: s ~ Exp(omega_s), r ~ Exp(omega_r),
/// indicators set against the rate thresholds.
SlotDraw draw_slot(const ChannelParams& params, const RateConfig& rates, SlotRng& rng);

/// Draw one slot directly from the outage probabilities (indicator-only model;
/// SNRs are pinned to the threshold or zero). Used when a run is specified by
/// (P_S, P_R) instead of channel gains.
SlotDraw draw_slot(const OutageProfile& prof, const RateConfig& rates, SlotRng& rng);

/// Closed-form Rayleigh outage probabilities 1 - exp(-(2^rate - 1)/Omega).
OutageProfile rayleigh_outage_probs(const ChannelParams& params, const RateConfig& rates);

/// Mean link SNR that reproduces outage probability p at the given rate.
double omega_for_outage(double p, double rate);

/// E{log2(1+r)} for a Rayleigh link with mean SNR omega_r:
/// e^(1/omega_r) E1(1/omega_r) / ln 2.
double mean_log_capacity(double omega_r);

} // namespace relayq
