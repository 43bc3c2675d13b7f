#include "relayq/sim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <limits>
#include <thread>

namespace relayq {

namespace {

struct SchemeName {
    Scheme scheme;
    const char* name;
};

constexpr SchemeName kSchemeNames[] = {
    {Scheme::FixedOptimal, "fixed-optimal"},
    {Scheme::FixedDelayV1, "fixed-delay-v1"},
    {Scheme::FixedDelayV2, "fixed-delay-v2"},
    {Scheme::FixedDelayV3, "fixed-delay-v3"},
    {Scheme::Mixed, "mixed"},
    {Scheme::MixedPa, "mixed-pa"},
    {Scheme::MixedDelay, "mixed-delay"},
    {Scheme::Conv1Fixed, "conv1-fixed"},
    {Scheme::Conv2Fixed, "conv2-fixed"},
    {Scheme::Conv1Mixed, "conv1-mixed"},
    {Scheme::ConvMixedKn, "conv-mixed-kn"},
};

bool is_fixed_scheme(Scheme s) {
    return s == Scheme::FixedOptimal || s == Scheme::FixedDelayV1 ||
           s == Scheme::FixedDelayV2 || s == Scheme::FixedDelayV3;
}

bool is_delay_constrained(Scheme s) {
    return s == Scheme::FixedDelayV1 || s == Scheme::FixedDelayV2 ||
           s == Scheme::FixedDelayV3 || s == Scheme::MixedDelay;
}

DelayPolicy delay_policy_of(Scheme s) {
    switch (s) {
        case Scheme::FixedDelayV1: return DelayPolicy::V1;
        case Scheme::FixedDelayV2: return DelayPolicy::V2;
        default: return DelayPolicy::V3;
    }
}

// Per-run accounting. Queue content is tracked in bits; the FIFO tracker
// carries (bits, arrival slot) entries for the per-packet delay cross-check.
struct Tally {
    double queue = 0.0;
    double arrived = 0.0;
    double delivered = 0.0;
    double queue_sum = 0.0;
    double queue_max = 0.0;
    double power = 0.0;
    std::uint64_t silent = 0;
    std::uint64_t dropped = 0;
    std::uint64_t main_slots = 0;
    std::uint64_t extra_slots = 0;
    bool fifo_on = false;
    std::deque<std::pair<double, std::uint64_t>> fifo;
    double fifo_weighted = 0.0;
    double fifo_bits = 0.0;

    void arrive(double bits, std::uint64_t slot) {
        queue += bits;
        arrived += bits;
        if (fifo_on) fifo.emplace_back(bits, slot);
    }
    double depart(double want, std::uint64_t slot) {
        const double bits = std::min(want, queue);
        queue -= bits;
        delivered += bits;
        if (fifo_on) {
            double left = bits;
            while (left > 0.0 && !fifo.empty()) {
                auto& [b, t0] = fifo.front();
                const double take = std::min(b, left);
                fifo_weighted += take * static_cast<double>(slot - t0);
                fifo_bits += take;
                b -= take;
                left -= take;
                if (b <= 1e-12) fifo.pop_front();
            }
        }
        return bits;
    }
    void close_main_slot(double moved) {
        if (moved == 0.0) ++silent;
        queue_sum += queue;
        queue_max = std::max(queue_max, queue);
        ++main_slots;
    }
};

SimResult finish(const RunConfig& cfg, const Tally& t, double prefill,
                 std::optional<double> tau0) {
    SimResult r;
    const double n = static_cast<double>(t.main_slots);
    const double total = static_cast<double>(t.main_slots + t.extra_slots);
    r.throughput = t.delivered / total;
    r.arrival_rate = t.arrived / n;
    if (prefill > 0.0) {
        // steady mode ignores buffer transients; queue statistics there
        // describe the artificial backlog, not the protocol
        r.mean_queue = std::numeric_limits<double>::quiet_NaN();
        r.mean_delay = std::numeric_limits<double>::quiet_NaN();
    } else {
        r.mean_queue = t.queue_sum / n;
        r.mean_delay = r.arrival_rate > 0 ? r.mean_queue / r.arrival_rate : 0.0;
    }
    if (tau0) r.outage = 1.0 - r.throughput / *tau0;
    r.slots = cfg.slots;
    r.seed = cfg.seed;
    r.dropped_packets = t.dropped;
    r.silent_fraction = static_cast<double>(t.silent) / n;
    r.mean_power = t.power / total;
    r.max_queue_bits = t.queue_max;
    if (t.fifo_on && t.fifo_bits > 0) r.fifo_delay = t.fifo_weighted / t.fifo_bits;
    r.total_arrived_bits = t.arrived;
    r.total_delivered_bits = t.delivered;
    r.final_queue_bits = t.queue;
    return r;
}

// One slot of channel randomness. Every simulation consumes exactly three
// uniforms per slot in this order, so trajectories depend only on the seed.
struct SlotSampler {
    const RunConfig& cfg;
    SlotRng rng;
    double omega_s = 0.0;
    double omega_r = 0.0;
    bool indicator_only = false;
    OutageProfile prof;

    SlotSampler(const RunConfig& c) : cfg(c), rng(c.seed) {
        if (c.channel) {
            omega_s = c.channel->omega_s();
            omega_r = c.channel->omega_r();
        } else {
            indicator_only = true;
            prof = *c.profile;
        }
    }

    // returns (slot, hr, coin); hr is the raw R-D gain for PA schemes
    void next(SlotDraw& slot, double& h_r, int& coin, double p_c) {
        if (indicator_only) {
            slot.o_s = rng.uniform() >= prof.p_s ? 1 : 0;
            slot.o_r = rng.uniform() >= prof.p_r ? 1 : 0;
            slot.s = slot.o_s ? outage_threshold(cfg.rates.s0) : 0.0;
            slot.r = slot.o_r ? outage_threshold(cfg.rates.r0) : 0.0;
            h_r = slot.r;
        } else {
            slot.s = rng.exponential(omega_s);
            const double u = rng.uniform();
            h_r = -cfg.channel->omega_bar_r * std::log(u);
            slot.r = cfg.channel->gamma_r * h_r;
            slot.o_s = slot.s >= outage_threshold(cfg.rates.s0) ? 1 : 0;
            slot.o_r = slot.r >= outage_threshold(cfg.rates.r0) ? 1 : 0;
        }
        coin = rng.uniform() < p_c ? 1 : 0;
    }
};

double steady_prefill_bits(const RunConfig& cfg, double per_slot_scale) {
    const double n = static_cast<double>(cfg.slots);
    return (10.0 * std::sqrt(n) + 100.0) * per_slot_scale;
}

// Relay-only drain after the source stops (full mode). Consumes the same
// three uniforms per slot as the main loop.
void drain_fixed(Tally& t, SlotSampler& smp, const RunConfig& cfg, double p_c) {
    if (cfg.transient != TransientMode::Full) return;
    const OutageProfile prof = cfg.effective_profile();
    if (prof.p_r >= 1.0) return;
    const std::uint64_t cap =
        200 + static_cast<std::uint64_t>(20.0 * t.queue / (cfg.rates.r0 * (1.0 - prof.p_r)));
    SlotDraw slot;
    double h_r;
    int coin;
    for (std::uint64_t i = 0; i < cap && t.queue > 1e-12; ++i) {
        smp.next(slot, h_r, coin, p_c);
        if (slot.o_r) t.depart(cfg.rates.r0, t.main_slots + t.extra_slots);
        ++t.extra_slots;
    }
}

void drain_mixed(Tally& t, SlotSampler& smp, const RunConfig& cfg) {
    if (cfg.transient != TransientMode::Full) return;
    const std::uint64_t cap = 200 + static_cast<std::uint64_t>(20.0 * t.queue);
    SlotDraw slot;
    double h_r;
    int coin;
    for (std::uint64_t i = 0; i < cap && t.queue > 1e-12; ++i) {
        smp.next(slot, h_r, coin, 0.5);
        t.depart(std::log2(1.0 + slot.r), t.main_slots + t.extra_slots);
        ++t.extra_slots;
    }
}

} // namespace

const char* scheme_name(Scheme s) {
    for (const auto& e : kSchemeNames)
        if (e.scheme == s) return e.name;
    return "unknown";
}

std::optional<Scheme> scheme_from_name(const std::string& name) {
    for (const auto& e : kSchemeNames)
        if (name == e.name) return e.scheme;
    return std::nullopt;
}

std::optional<SweepAxis> sweep_axis_from_name(const std::string& name) {
    if (name == "gamma-db") return SweepAxis::GammaDb;
    if (name == "gamma-budget-db") return SweepAxis::GammaBudgetDb;
    if (name == "target-delay") return SweepAxis::TargetDelay;
    if (name == "qmax-bits") return SweepAxis::QmaxBits;
    if (name == "buffer-packets") return SweepAxis::BufferPackets;
    if (name == "rate") return SweepAxis::Rate;
    return std::nullopt;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }

OutageProfile RunConfig::effective_profile() const {
    if (channel) return rayleigh_outage_probs(*channel, rates);
    if (profile) return *profile;
    throw std::invalid_argument("RunConfig: neither channel parameters nor outage profile set");
}

void RunConfig::validate() const {
    rates.validate();
    if (slots < 1) throw std::invalid_argument("RunConfig: slots must be >= 1");
    if (channel && profile)
        throw std::invalid_argument(
            "RunConfig: channel parameters and outage profile are mutually exclusive "
            "(P_S/P_R are derived from gamma under Rayleigh)");
    if (!channel && !profile)
        throw std::invalid_argument("RunConfig: need channel parameters or an outage profile");
    if (channel) channel->validate();
    if (profile) profile->validate();
    if (!is_fixed_scheme(scheme) && scheme != Scheme::Conv1Fixed &&
        scheme != Scheme::Conv2Fixed && !channel)
        throw std::invalid_argument("RunConfig: mixed-rate schemes need channel parameters");
    if (is_delay_constrained(scheme) && transient == TransientMode::Steady)
        throw std::invalid_argument(
            "RunConfig: delay-constrained schemes measure transients; use TransientMode::Full");
    if (scheme == Scheme::FixedDelayV1 || scheme == Scheme::FixedDelayV2 ||
        scheme == Scheme::FixedDelayV3) {
        if (buffer_packets < 1)
            throw std::invalid_argument("RunConfig: buffer_packets must be >= 1");
        if (std::fabs(rates.s0 - rates.r0) > 1e-12)
            throw std::invalid_argument("RunConfig: delay-constrained analysis requires S0 = R0");
        if (!p_c && !target_delay)
            throw std::invalid_argument(
                "RunConfig: fixed-delay schemes need p_c or target_delay");
    }
    if (scheme == Scheme::MixedDelay && !(q_max_bits >= rates.s0))
        throw std::invalid_argument("RunConfig: q_max_bits must be >= S0");
    if (scheme == Scheme::MixedPa && !gamma_budget)
        throw std::invalid_argument("RunConfig: mixed-pa needs gamma_budget");
    if (scheme == Scheme::ConvMixedKn) schedule.validate();
}

namespace {

DelayVariant resolve_delay_variant(const RunConfig& cfg, const OutageProfile& prof) {
    const DelayPolicy v = delay_policy_of(cfg.scheme);
    if (cfg.p_c) return make_delay_variant(v, prof, *cfg.p_c);
    return tune_delay(*cfg.target_delay, prof, v);
}

} // namespace

SimResult run_fixed(const RunConfig& cfg) {
    cfg.validate();
    if (!is_fixed_scheme(cfg.scheme))
        throw std::invalid_argument("run_fixed: not a fixed-rate scheme");
    const OutageProfile prof = cfg.effective_profile();
    const RateConfig& rates = cfg.rates;

    Tally t;
    t.fifo_on = cfg.measure_fifo_delay;
    SlotSampler smp(cfg);
    SlotDraw slot;
    double h_r;
    int coin;

    if (cfg.scheme == Scheme::FixedOptimal) {
        const FixedRatePolicy policy = make_fixed_rate_policy(prof, rates);
        double prefill = 0.0;
        if (cfg.transient == TransientMode::Steady &&
            policy.policy_case != PolicyCase::Case3) {
            // the balanced policies keep the buffer backlogged; the
            // simplified case-3 rule is arrival-limited and runs
            // queue-light, so it starts empty
            prefill = steady_prefill_bits(cfg, rates.r0);
            t.queue = prefill;
        }
        for (std::uint64_t i = 0; i < cfg.slots; ++i) {
            smp.next(slot, h_r, coin, policy.p_c);
            const int d = select_link_optimal(policy, slot, coin);
            double moved = 0.0;
            if (d == 0) {
                if (slot.o_s) {
                    t.arrive(rates.s0, i);
                    moved = rates.s0;
                    t.power += cfg.channel ? cfg.channel->gamma_s : 0.0;
                }
            } else if (slot.o_r) {
                moved = t.depart(rates.r0, i);
                if (moved > 0 && cfg.channel) t.power += cfg.channel->gamma_r;
            }
            t.close_main_slot(moved);
        }
        drain_fixed(t, smp, cfg, policy.p_c);
        SimResult r = finish(cfg, t, prefill, throughput_no_outage(rates));
        // in steady mode the outage probability is measured by the
        // silent-slot count (outage events and silent slots coincide for the
        // optimal policy), which is binomial-exact and free of the terminal
        // random-walk noise of 1 - tau/tau0
        if (cfg.transient == TransientMode::Steady) r.outage = r.silent_fraction;
        return r;
    }

    // delay-constrained variants: exact packet bookkeeping, full transients
    const DelayVariant dv = resolve_delay_variant(cfg, prof);
    const int L = cfg.buffer_packets;
    const double r0 = rates.r0;
    std::int64_t packets = 0;
    for (std::uint64_t i = 0; i < cfg.slots; ++i) {
        smp.next(slot, h_r, coin, dv.p_c);
        const double q_prev = packets * r0;
        const int d = select_link_delay(dv, q_prev, slot, coin, rates);
        double moved = 0.0;
        if (d == 0) {
            if (slot.o_s) {
                if (packets == L) {
                    ++t.dropped; // full buffer: the fresh packet is lost
                } else {
                    ++packets;
                    t.arrive(r0, i);
                    moved = r0;
                }
                if (cfg.channel) t.power += cfg.channel->gamma_s;
            }
        } else if (slot.o_r && packets > 0) {
            --packets;
            moved = t.depart(r0, i);
            if (cfg.channel) t.power += cfg.channel->gamma_r;
        }
        t.close_main_slot(moved);
    }
    drain_fixed(t, smp, cfg, dv.p_c);
    return finish(cfg, t, 0.0, throughput_no_outage(rates));
}

SimResult run_mixed(const RunConfig& cfg) {
    cfg.validate();
    const RateConfig& rates = cfg.rates;
    const OutageProfile prof = cfg.effective_profile();
    const ChannelParams& ch = *cfg.channel;

    Tally t;
    t.fifo_on = cfg.measure_fifo_delay;
    SlotSampler smp(cfg);
    SlotDraw slot;
    double h_r;
    int coin;

    if (cfg.scheme == Scheme::Mixed || cfg.scheme == Scheme::MixedPa) {
        MixedPolicy pol;
        if (cfg.scheme == Scheme::Mixed) {
            pol = make_mixed_policy(prof, rates, ch.omega_r());
        } else {
            pol = solve_power_allocation(ch, rates, *cfg.gamma_budget);
        }
        double prefill = 0.0;
        if (cfg.transient == TransientMode::Steady && !pol.case2) {
            // backlogged only in the balanced regime; the case-2 rule
            // (d = 1 - O_S) is arrival-limited and runs queue-light
            prefill = steady_prefill_bits(cfg, std::max(rates.s0, mean_log_capacity(ch.omega_r())));
            t.queue = prefill;
        }
        for (std::uint64_t i = 0; i < cfg.slots; ++i) {
            smp.next(slot, h_r, coin, 0.5);
            MixedSlotDecision dec;
            if (cfg.scheme == Scheme::Mixed) {
                dec = select_link_mixed(pol, slot, rates);
                if (dec.d == 1) dec.relay_power = ch.gamma_r;
            } else {
                dec = select_link_mixed_pa(pol, slot.o_s, h_r);
                if (dec.d == 1) dec.relay_rate = std::log2(1.0 + dec.relay_power * h_r);
            }
            double moved = 0.0;
            if (dec.d == 0) {
                if (slot.o_s) {
                    t.arrive(rates.s0, i);
                    moved = rates.s0;
                    t.power += ch.gamma_s;
                }
            } else {
                moved = t.depart(dec.relay_rate, i);
                t.power += dec.relay_power;
            }
            t.close_main_slot(moved);
        }
        drain_mixed(t, smp, cfg);
        return finish(cfg, t, prefill, std::nullopt);
    }

    if (cfg.scheme != Scheme::MixedDelay)
        throw std::invalid_argument("run_mixed: not a mixed-rate scheme");

    // buffer-limited heuristic; always Full
    const MixedPolicy pol = make_mixed_policy(prof, rates, ch.omega_r());
    const double q_max = cfg.q_max_bits;
    for (std::uint64_t i = 0; i < cfg.slots; ++i) {
        smp.next(slot, h_r, coin, 0.5);
        const int d = select_link_mixed_delay(t.queue, q_max, slot, pol, rates);
        double moved = 0.0;
        if (d == 0) {
            if (slot.o_s) {
                t.arrive(rates.s0, i);
                moved = rates.s0;
                t.power += ch.gamma_s;
            }
        } else {
            moved = t.depart(std::log2(1.0 + slot.r), i);
            if (moved > 0) t.power += ch.gamma_r;
        }
        t.close_main_slot(moved);
    }
    drain_mixed(t, smp, cfg);
    return finish(cfg, t, 0.0, std::nullopt);
}

SimResult run_conventional(const RunConfig& cfg) {
    cfg.validate();
    const RateConfig& rates = cfg.rates;
    const OutageProfile prof = cfg.effective_profile();

    Tally t;
    t.fifo_on = cfg.measure_fifo_delay;
    SlotSampler smp(cfg);
    SlotDraw slot;
    double h_r;
    int coin;

    switch (cfg.scheme) {
        case Scheme::Conv1Fixed: {
            if (std::fabs(rates.s0 - rates.r0) > 1e-12)
                throw std::invalid_argument("conv1-fixed assumes S0 = R0");
            const double xi = conv1_fixed(prof, rates.r0).xi;
            const std::uint64_t n_src =
                static_cast<std::uint64_t>(std::llround(xi * static_cast<double>(cfg.slots)));
            for (std::uint64_t i = 0; i < cfg.slots; ++i) {
                smp.next(slot, h_r, coin, 0.5);
                double moved = 0.0;
                if (i < n_src) {
                    if (slot.o_s) {
                        t.arrive(rates.s0, i);
                        moved = rates.s0;
                    }
                } else if (slot.o_r) {
                    moved = t.depart(rates.r0, i);
                }
                t.close_main_slot(moved);
            }
            drain_fixed(t, smp, cfg, 0.5);
            return finish(cfg, t, 0.0, rates.r0 / 2.0);
        }
        case Scheme::Conv2Fixed: {
            if (std::fabs(rates.s0 - rates.r0) > 1e-12)
                throw std::invalid_argument("conv2-fixed assumes S0 = R0");
            bool pending = false; // decoded packet awaiting the relay slot
            std::uint64_t arrival_slot = 0;
            for (std::uint64_t i = 0; i < cfg.slots; ++i) {
                smp.next(slot, h_r, coin, 0.5);
                double moved = 0.0;
                if (i % 2 == 0) {
                    pending = slot.o_s == 1;
                    if (pending) {
                        t.arrive(rates.s0, i);
                        arrival_slot = i;
                        moved = rates.s0;
                    }
                } else {
                    if (pending && slot.o_r) {
                        moved = t.depart(rates.r0, i);
                    } else if (pending) {
                        // no buffer: the undeliverable codeword is abandoned
                        t.queue = 0.0;
                        ++t.dropped;
                        if (t.fifo_on) t.fifo.clear();
                        (void)arrival_slot;
                    }
                    pending = false;
                }
                t.close_main_slot(moved);
            }
            return finish(cfg, t, 0.0, rates.r0 / 2.0);
        }
        case Scheme::Conv1Mixed: {
            const ChannelParams& ch = *cfg.channel;
            double mean_cap = mean_log_capacity(ch.omega_r());
            std::optional<double> lambda_c;
            if (cfg.gamma_budget) {
                lambda_c = conv1_mixed_pa_level(ch, rates, *cfg.gamma_budget);
                mean_cap = conv1_mixed_pa_mean_cap(*lambda_c, ch.omega_bar_r);
            }
            const double xi = conv1_mixed(prof, rates.s0, mean_cap).xi;
            const std::uint64_t n_src =
                static_cast<std::uint64_t>(std::llround(xi * static_cast<double>(cfg.slots)));
            for (std::uint64_t i = 0; i < cfg.slots; ++i) {
                smp.next(slot, h_r, coin, 0.5);
                double moved = 0.0;
                if (i < n_src) {
                    if (slot.o_s) {
                        t.arrive(rates.s0, i);
                        moved = rates.s0;
                        t.power += ch.gamma_s;
                    }
                } else {
                    double rate, power;
                    if (lambda_c) {
                        power = relay_power(h_r, *lambda_c);
                        rate = std::log2(1.0 + power * h_r);
                    } else {
                        power = ch.gamma_r;
                        rate = std::log2(1.0 + slot.r);
                    }
                    moved = t.depart(rate, i);
                    t.power += power;
                }
                t.close_main_slot(moved);
            }
            drain_mixed(t, smp, cfg);
            return finish(cfg, t, 0.0, std::nullopt);
        }
        case Scheme::ConvMixedKn: {
            const ChannelParams& ch = *cfg.channel;
            const int cycle = cfg.schedule.k + cfg.schedule.n;
            for (std::uint64_t i = 0; i < cfg.slots; ++i) {
                smp.next(slot, h_r, coin, 0.5);
                double moved = 0.0;
                if (static_cast<int>(i % cycle) < cfg.schedule.k) {
                    if (slot.o_s) {
                        t.arrive(rates.s0, i);
                        moved = rates.s0;
                        t.power += ch.gamma_s;
                    }
                } else {
                    moved = t.depart(std::log2(1.0 + slot.r), i);
                    t.power += ch.gamma_r;
                }
                t.close_main_slot(moved);
            }
            drain_mixed(t, smp, cfg);
            return finish(cfg, t, 0.0, std::nullopt);
        }
        default:
            throw std::invalid_argument("run_conventional: not a conventional scheme");
    }
}

SimResult run(const RunConfig& cfg) {
    if (is_fixed_scheme(cfg.scheme)) return run_fixed(cfg);
    if (cfg.scheme == Scheme::Mixed || cfg.scheme == Scheme::MixedPa ||
        cfg.scheme == Scheme::MixedDelay)
        return run_mixed(cfg);
    return run_conventional(cfg);
}

AnalyticPoint analyze_config(const RunConfig& cfg) {
    cfg.validate();
    const OutageProfile prof = cfg.effective_profile();
    const RateConfig& rates = cfg.rates;
    AnalyticPoint a;

    switch (cfg.scheme) {
        case Scheme::FixedOptimal: {
            const FixedRatePolicy pol = make_fixed_rate_policy(prof, rates);
            a.throughput = throughput_optimal(prof, rates);
            a.outage = outage_optimal(prof, rates);
            a.p_c = pol.p_c;
            a.case_label = pol.policy_case == PolicyCase::Case1   ? "case1"
                           : pol.policy_case == PolicyCase::Case2 ? "case2"
                                                                  : "case3";
            break;
        }
        case Scheme::FixedDelayV1:
        case Scheme::FixedDelayV2:
        case Scheme::FixedDelayV3: {
            const DelayVariant dv = resolve_delay_variant(cfg, prof);
            const MarkovAnalysis m = markov_metrics(dv, prof, cfg.buffer_packets, rates);
            a.throughput = m.throughput;
            a.outage = m.outage;
            a.delay = m.mean_delay;
            a.p_c = dv.p_c;
            a.case_label = dv.variant == DelayPolicy::V1   ? "v1"
                           : dv.variant == DelayPolicy::V2 ? "v2"
                                                           : "v3";
            break;
        }
        case Scheme::Mixed: {
            const MixedPolicy pol = make_mixed_policy(prof, rates, cfg.channel->omega_r());
            a.throughput = pol.throughput;
            a.case_label = pol.case2 ? "case2" : "case1";
            break;
        }
        case Scheme::MixedPa: {
            const MixedPolicy pol =
                solve_power_allocation(*cfg.channel, rates, *cfg.gamma_budget);
            a.throughput = pol.throughput;
            a.case_label = pol.case2 ? "case2" : "case1";
            break;
        }
        case Scheme::MixedDelay:
            a.case_label = "heuristic"; // evaluated by simulation only
            break;
        case Scheme::Conv1Fixed: {
            const Conv1Result c = conv1_fixed(prof, rates.r0);
            a.throughput = c.throughput;
            a.outage = c.outage;
            break;
        }
        case Scheme::Conv2Fixed: {
            const Conv2Result c = conv2_fixed(prof, rates.r0);
            a.throughput = c.throughput;
            a.outage = c.outage;
            a.delay = 1.0;
            break;
        }
        case Scheme::Conv1Mixed: {
            double mean_cap = mean_log_capacity(cfg.channel->omega_r());
            if (cfg.gamma_budget) {
                const double lc = conv1_mixed_pa_level(*cfg.channel, rates, *cfg.gamma_budget);
                mean_cap = conv1_mixed_pa_mean_cap(lc, cfg.channel->omega_bar_r);
            }
            a.throughput = conv1_mixed(prof, rates.s0, mean_cap).throughput;
            break;
        }
        case Scheme::ConvMixedKn: {
            const double mean_cap = mean_log_capacity(cfg.channel->omega_r());
            a.throughput = conv_mixed_delay(cfg.schedule, prof, rates.s0, mean_cap);
            a.delay = (cfg.schedule.k + 1) / 2.0; // high-SNR cycle average
            break;
        }
    }
    return a;
}

namespace {

RunConfig apply_axis(const RunConfig& base, SweepAxis axis, double value) {
    RunConfig cfg = base;
    switch (axis) {
        case SweepAxis::GammaDb: {
            if (!cfg.channel)
                throw std::invalid_argument("sweep: gamma-db needs channel parameters");
            const double g = db_to_linear(value);
            cfg.channel->gamma_s = g;
            cfg.channel->gamma_r = g;
            break;
        }
        case SweepAxis::GammaBudgetDb: {
            // evaluation convention: gamma_s = gamma_r = Gamma
            if (!cfg.channel)
                throw std::invalid_argument("sweep: gamma-budget-db needs channel parameters");
            const double g = db_to_linear(value);
            cfg.gamma_budget = g;
            cfg.channel->gamma_s = g;
            cfg.channel->gamma_r = g;
            break;
        }
        case SweepAxis::TargetDelay:
            cfg.target_delay = value;
            cfg.p_c.reset();
            break;
        case SweepAxis::QmaxBits:
            cfg.q_max_bits = value;
            break;
        case SweepAxis::BufferPackets:
            cfg.buffer_packets = static_cast<int>(std::lround(value));
            break;
        case SweepAxis::Rate:
            cfg.rates.s0 = value;
            cfg.rates.r0 = value;
            break;
    }
    return cfg;
}

} // namespace

std::vector<SweepPoint> sweep(const RunConfig& base, SweepAxis axis,
                              const std::vector<double>& values, unsigned max_workers) {
    std::vector<SweepPoint> out(values.size());
    if (values.empty()) return out;
    if (max_workers == 0)
        max_workers = std::max(1u, std::thread::hardware_concurrency());

    auto eval = [&](std::size_t i) {
        SweepPoint pt;
        pt.value = values[i];
        pt.config = apply_axis(base, axis, values[i]);
        pt.config.seed = base.seed ^ static_cast<std::uint64_t>(i);
        pt.analytic = analyze_config(pt.config);
        pt.sim = run(pt.config);
        return pt;
    };

    std::size_t next = 0;
    while (next < values.size()) {
        const std::size_t batch = std::min<std::size_t>(max_workers, values.size() - next);
        std::vector<std::future<SweepPoint>> futs;
        futs.reserve(batch);
        for (std::size_t j = 0; j < batch; ++j)
            futs.push_back(std::async(std::launch::async, eval, next + j));
        for (std::size_t j = 0; j < batch; ++j) out[next + j] = futs[j].get();
        next += batch;
    }
    return out;
}

} // namespace relayq
