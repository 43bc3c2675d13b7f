#include "relayq/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "relayq/numerics.hpp"

namespace relayq {

double outage_threshold(double rate) { return std::exp2(rate) - 1.0; }

SlotDraw draw_slot(const ChannelParams& params, const RateConfig& rates, SlotRng& rng) {
    SlotDraw d;
    d.s = rng.exponential(params.omega_s());
    d.r = rng.exponential(params.omega_r());
    d.o_s = d.s >= outage_threshold(rates.s0) ? 1 : 0;
    d.o_r = d.r >= outage_threshold(rates.r0) ? 1 : 0;
    return d;
}

SlotDraw draw_slot(const OutageProfile& prof, const RateConfig& rates, SlotRng& rng) {
    SlotDraw d;
    d.o_s = rng.uniform() >= prof.p_s ? 1 : 0;
    d.o_r = rng.uniform() >= prof.p_r ? 1 : 0;
    d.s = d.o_s ? outage_threshold(rates.s0) : 0.0;
    d.r = d.o_r ? outage_threshold(rates.r0) : 0.0;
    return d;
}

OutageProfile rayleigh_outage_probs(const ChannelParams& params, const RateConfig& rates) {
    params.validate();
    rates.validate();
    OutageProfile prof;
    prof.p_s = -std::expm1(-outage_threshold(rates.s0) / params.omega_s());
    prof.p_r = -std::expm1(-outage_threshold(rates.r0) / params.omega_r());
    return prof;
}

double omega_for_outage(double p, double rate) {
    if (p < 0 || p >= 1)
        throw std::invalid_argument("omega_for_outage: p must be in [0,1)");
    if (p == 0.0) return std::numeric_limits<double>::infinity();
    return outage_threshold(rate) / (-std::log1p(-p));
}

double mean_log_capacity(double omega_r) {
    if (!(omega_r > 0)) {
        if (omega_r == 0.0) return 0.0;
        throw std::domain_error("mean_log_capacity: omega_r must be > 0");
    }
    const double x = 1.0 / omega_r;
    // e^x E1(x) evaluated without overflow for small omega_r
    if (x > 700.0) {
        // e^x E1(x) ~ 1/x - 1/x^2 + 2/x^3 for large x
        return (1.0 / x - 1.0 / (x * x) + 2.0 / (x * x * x)) / std::numbers::ln2_v<double>;
    }
    return std::exp(x) * exp_integral_e1(x) / std::numbers::ln2_v<double>;
}

} // namespace relayq
