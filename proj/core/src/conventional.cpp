#include "relayq/conventional.hpp"

#include <cmath>
#include <numbers>

#include "relayq/numerics.hpp"

namespace relayq {

namespace {
constexpr double kLn2 = std::numbers::ln2_v<double>;
}

Conv1Result conv1_fixed(const OutageProfile& prof, double r0) {
    prof.validate();
    if (!(r0 > 0)) throw std::invalid_argument("conv1_fixed: r0 must be > 0");
    const double ps = prof.p_s, pr = prof.p_r;
    Conv1Result res;
    res.xi = (1.0 - pr) / (2.0 - ps - pr);
    res.throughput = r0 * (1.0 - ps) * (1.0 - pr) / (2.0 - ps - pr);
    res.outage = 1.0 - 2.0 * (1.0 - ps) * (1.0 - pr) / (2.0 - ps - pr);
    return res;
}

double conv1_fixed_outage_high_snr(const ChannelParams& params, double r0) {
    params.validate();
    return (std::exp2(r0) - 1.0) / 2.0 *
           (params.omega_bar_s + params.omega_bar_r) /
           (params.omega_bar_s * params.omega_bar_r) / params.gamma_s;
}

Conv2Result conv2_fixed(const OutageProfile& prof, double r0) {
    prof.validate();
    if (!(r0 > 0)) throw std::invalid_argument("conv2_fixed: r0 must be > 0");
    Conv2Result res;
    res.throughput = r0 / 2.0 * (1.0 - prof.p_s) * (1.0 - prof.p_r);
    res.outage = 1.0 - (1.0 - prof.p_s) * (1.0 - prof.p_r);
    return res;
}

Conv1Result conv1_mixed(const OutageProfile& prof, double s0, double mean_cap) {
    prof.validate();
    if (!(mean_cap > 0)) throw std::invalid_argument("conv1_mixed: mean_cap must be > 0");
    const double srv = s0 * (1.0 - prof.p_s);
    Conv1Result res;
    res.xi = mean_cap / (srv + mean_cap);
    res.throughput = srv * mean_cap / (srv + mean_cap);
    res.outage = 0.0; // relay link never in outage; no outage figure printed
    return res;
}

double conv1_mixed_pa_level(const ChannelParams& params, const RateConfig& rates,
                            double gamma_budget) {
    params.validate();
    rates.validate();
    const double ps = -std::expm1(-outage_threshold(rates.s0) / params.omega_s());
    const double obar = params.omega_bar_r;
    const double base = (1.0 - ps) * params.gamma_s;
    if (base >= 2.0 * gamma_budget)
        throw SolverError("conv1_mixed_pa_level: source power exceeds the 2*Gamma budget");
    auto gap = [&](double lam) {
        const double wf = std::exp(-lam / obar) / lam - exp_integral_e1(lam / obar) / obar;
        return base + wf - 2.0 * gamma_budget;
    };
    double hi = 1.0;
    while (gap(hi) > 0.0) hi *= 2.0;
    SolverConfig tight;
    tight.abs_tol = 1e-14;
    tight.rel_tol = 1e-14;
    return bisect(gap, 1e-12, hi, tight);
}

double conv1_mixed_pa_mean_cap(double lambda_c, double omega_bar_r) {
    return exp_integral_e1(lambda_c / omega_bar_r) / kLn2;
}

double conv_mixed_delay(const ConvMixedSchedule& sched, const OutageProfile& prof,
                        double s0, double mean_cap) {
    sched.validate();
    prof.validate();
    const double arrivals = sched.k * (1.0 - prof.p_s) * s0;
    if (arrivals > sched.n * mean_cap)
        throw std::domain_error("conv_mixed_delay: k(1-P_S)S0 > n E{log2(1+r)}, queue absorbs");
    return static_cast<double>(sched.k) / (sched.k + sched.n) * (1.0 - prof.p_s) * s0;
}

ConvMixedHighSnr conv_mixed_high_snr(double target_delay, double s0) {
    if (!(target_delay >= 1.0))
        throw std::domain_error("conv_mixed_high_snr: requires E{T} >= 1");
    ConvMixedHighSnr h;
    h.throughput_limit = s0 * (1.0 - 1.0 / (2.0 * target_delay));
    h.multiplexing_gain = 1.0 - 1.0 / (2.0 * target_delay);
    h.schedule.k = std::max(1, static_cast<int>(std::lround(2.0 * target_delay - 1.0)));
    h.schedule.n = 1;
    return h;
}

} // namespace relayq
