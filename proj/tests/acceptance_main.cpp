// Acceptance suite: one check per numbered criterion, full-length Monte
// Carlo runs, one PASS/FAIL line each. Exit code 0 only when every
// criterion holds.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "relayq/experiment.hpp"
#include "relayq/figures.hpp"
#include "relayq/sim.hpp"

using namespace relayq;

namespace {

constexpr std::uint64_t kSlots = 10'000'000;
constexpr std::uint64_t kSeed = 0xACCE5517;

struct Criterion {
    int id;
    std::string name;
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        pass = false;
        if (!detail.empty()) detail += "; ";
        detail += why;
    }
    void note(const std::string& what) {
        if (detail.empty()) detail = what;
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

bool rel_ok(double got, double want, double tol) {
    return std::fabs(got - want) <= tol * std::fabs(want);
}

// run a batch of configs, two at a time
std::vector<SimResult> run_batch(const std::vector<RunConfig>& cfgs) {
    std::vector<SimResult> out(cfgs.size());
    std::size_t next = 0;
    while (next < cfgs.size()) {
        const std::size_t batch = std::min<std::size_t>(2, cfgs.size() - next);
        std::vector<std::future<SimResult>> futs;
        for (std::size_t j = 0; j < batch; ++j)
            futs.push_back(std::async(std::launch::async,
                                      [&cfgs, i = next + j] { return run(cfgs[i]); }));
        for (std::size_t j = 0; j < batch; ++j) out[next + j] = futs[j].get();
        next += batch;
    }
    return out;
}

// ---------------------------------------------------------------------------
// 1. closed form vs simulation for the optimal fixed-rate policy
// ---------------------------------------------------------------------------
Criterion criterion1() {
    Criterion c{1, "fixed-rate optimal policy: simulation vs closed forms (0.5%)"};
    const RateConfig rates{2.0, 2.0};
    std::vector<RunConfig> cfgs;
    for (double ps : {0.1, 0.5, 0.8}) {
        for (double pr : {0.1, 0.5, 0.8}) {
            RunConfig cfg;
            cfg.scheme = Scheme::FixedOptimal;
            cfg.slots = kSlots;
            cfg.seed = kSeed ^ cfgs.size();
            cfg.rates = rates;
            cfg.profile = OutageProfile{ps, pr};
            cfgs.push_back(cfg);
        }
    }
    const std::vector<SimResult> sims = run_batch(cfgs);
    double worst_tau = 0.0, worst_f = 0.0;
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        const OutageProfile prof = *cfgs[i].profile;
        const double tau = throughput_optimal(prof, rates);
        const double fout = outage_optimal(prof, rates);
        const double dtau = std::fabs(sims[i].throughput - tau) / tau;
        const double df = std::fabs(*sims[i].outage - fout) / fout;
        worst_tau = std::max(worst_tau, dtau);
        worst_f = std::max(worst_f, df);
        if (dtau > 0.005)
            c.fail("tau off " + fmt(100 * dtau) + "% at P_S=" + fmt(prof.p_s) +
                   ", P_R=" + fmt(prof.p_r));
        if (df > 0.005)
            c.fail("F_out off " + fmt(100 * df) + "% at P_S=" + fmt(prof.p_s) +
                   ", P_R=" + fmt(prof.p_r));
    }
    c.note("worst tau dev " + fmt(100 * worst_tau) + "%, worst F_out dev " +
           fmt(100 * worst_f) + "% across 9 grid points");
    return c;
}

// ---------------------------------------------------------------------------
// 2. diversity order: analytic slopes -2 (adaptive) and -1 (conventional 1)
// ---------------------------------------------------------------------------
Criterion criterion2() {
    Criterion c{2, "diversity order: outage slopes at high SNR"};
    const RateConfig rates{2.0, 2.0};
    auto profile_at = [&](double gdb) {
        const double g = db_to_linear(gdb);
        return rayleigh_outage_probs(ChannelParams{1.0, 1.0, g, g}, rates);
    };
    auto ba_out = [&](double gdb) { return outage_optimal(profile_at(gdb), rates); };
    auto c1_out = [&](double gdb) { return conv1_fixed(profile_at(gdb), 2.0).outage; };

    const double slope_ba = std::log10(ba_out(40) / ba_out(30));
    const double slope_c1 = std::log10(c1_out(40) / c1_out(30));
    if (std::fabs(slope_ba + 2.0) > 0.05)
        c.fail("adaptive analytic slope " + fmt(slope_ba));
    if (std::fabs(slope_c1 + 1.0) > 0.05)
        c.fail("conv1 analytic slope " + fmt(slope_c1));

    // simulated slopes over the highest 5 dB pair with F_out * N >= 100
    auto pick_pair = [&](auto fout) {
        double lo = 0, hi = 0;
        for (double g = 45.0; g >= 10.0; g -= 5.0)
            if (fout(g) * kSlots >= 100.0 && fout(g - 5.0) * kSlots >= 100.0) {
                lo = g - 5.0;
                hi = g;
                break;
            }
        return std::pair<double, double>{lo, hi};
    };
    auto sim_out = [&](Scheme scheme, double gdb, std::uint64_t salt) {
        RunConfig cfg;
        cfg.scheme = scheme;
        cfg.slots = kSlots;
        cfg.seed = kSeed ^ salt;
        cfg.rates = rates;
        const double g = db_to_linear(gdb);
        cfg.channel = ChannelParams{1.0, 1.0, g, g};
        return *run(cfg).outage;
    };

    const auto [ba_lo, ba_hi] = pick_pair(ba_out);
    const auto [c1_lo, c1_hi] = pick_pair(c1_out);
    if (ba_hi == 0 || c1_hi == 0) {
        c.fail("no simulable 5 dB pair with F_out*N >= 100");
        return c;
    }
    const double sim_ba =
        std::log10(sim_out(Scheme::FixedOptimal, ba_hi, 101) /
                   sim_out(Scheme::FixedOptimal, ba_lo, 102)) /
        ((ba_hi - ba_lo) / 10.0);
    const double sim_c1 = std::log10(sim_out(Scheme::Conv1Fixed, c1_hi, 103) /
                                     sim_out(Scheme::Conv1Fixed, c1_lo, 104)) /
                          ((c1_hi - c1_lo) / 10.0);
    if (std::fabs(sim_ba + 2.0) > 0.15)
        c.fail("adaptive simulated slope " + fmt(sim_ba) + " over " + fmt(ba_lo) + "-" +
               fmt(ba_hi) + " dB");
    if (std::fabs(sim_c1 + 1.0) > 0.15)
        c.fail("conv1 simulated slope " + fmt(sim_c1) + " over " + fmt(c1_lo) + "-" +
               fmt(c1_hi) + " dB");
    c.note("analytic " + fmt(slope_ba) + "/" + fmt(slope_c1) + ", simulated " +
           fmt(sim_ba) + " (" + fmt(ba_lo) + "-" + fmt(ba_hi) + " dB) / " + fmt(sim_c1) +
           " (" + fmt(c1_lo) + "-" + fmt(c1_hi) + " dB)");
    return c;
}

// ---------------------------------------------------------------------------
// 3. Markov oracle equivalence and simulation agreement for delay variants
// ---------------------------------------------------------------------------
Criterion criterion3() {
    Criterion c{3, "delay variants: closed forms vs stationary solve and simulation"};
    const RateConfig rates{2.0, 2.0};
    std::mt19937_64 gen(4242);
    std::uniform_real_distribution<double> up(0.1, 0.7), upc(0.1, 0.9);

    // 20 random triples, conditioned away from the degenerate boundary and
    // from vanishing outage probability so the 1% relative check is testable
    struct Point { OutageProfile prof; double pc; };
    std::vector<Point> points;
    while (points.size() < 20) {
        const Point pt{{up(gen), up(gen)}, upc(gen)};
        bool ok = true;
        for (DelayPolicy v : {DelayPolicy::V1, DelayPolicy::V2, DelayPolicy::V3}) {
            const DelayVariant dv = make_delay_variant(v, pt.prof, pt.pc);
            if (std::fabs(2 * dv.p + dv.q - 1) < 0.05) ok = false;
            if (outage_delay_constrained(dv, pt.prof, 3) < 0.02) ok = false;
        }
        if (ok) points.push_back(pt);
    }

    double worst_occ = 0.0;
    std::vector<RunConfig> cfgs;
    std::vector<MarkovAnalysis> refs;
    for (const Point& pt : points) {
        for (DelayPolicy v : {DelayPolicy::V1, DelayPolicy::V2, DelayPolicy::V3}) {
            for (int L : {1, 3, 5, 20}) {
                const DelayVariant dv = make_delay_variant(v, pt.prof, pt.pc);
                const auto closed = markov_stationary_closed(dv, pt.prof, L);
                const auto pi = stationary_distribution(buffer_chain_matrix(dv, pt.prof, L));
                for (std::size_t k = 0; k < pi.size(); ++k)
                    worst_occ = std::max(worst_occ, std::fabs(closed[k] - pi[k]));

                RunConfig cfg;
                cfg.scheme = v == DelayPolicy::V1   ? Scheme::FixedDelayV1
                             : v == DelayPolicy::V2 ? Scheme::FixedDelayV2
                                                    : Scheme::FixedDelayV3;
                cfg.slots = kSlots;
                cfg.seed = kSeed ^ (cfgs.size() * 2654435761ULL);
                cfg.rates = rates;
                cfg.profile = pt.prof;
                cfg.p_c = pt.pc;
                cfg.buffer_packets = L;
                cfg.transient = TransientMode::Full;
                cfgs.push_back(cfg);
                refs.push_back(markov_metrics(dv, pt.prof, L, rates));
            }
        }
    }
    if (worst_occ >= 1e-10)
        c.fail("occupancy mismatch " + fmt(worst_occ) + " vs generic solve");

    const std::vector<SimResult> sims = run_batch(cfgs);
    double worst = 0.0;
    int bad = 0;
    for (std::size_t i = 0; i < sims.size(); ++i) {
        const double dt = std::fabs(sims[i].throughput - refs[i].throughput) /
                          refs[i].throughput;
        const double dd = std::fabs(sims[i].mean_delay - refs[i].mean_delay) /
                          refs[i].mean_delay;
        const double df = std::fabs(*sims[i].outage - refs[i].outage) / refs[i].outage;
        worst = std::max({worst, dt, dd, df});
        if (dt > 0.01 || dd > 0.01 || df > 0.01) {
            ++bad;
            if (bad <= 3)
                c.fail("point " + std::to_string(i) + ": tau/delay/outage devs " +
                       fmt(100 * dt) + "/" + fmt(100 * dd) + "/" + fmt(100 * df) + "%");
        }
    }
    if (bad > 3) c.fail(std::to_string(bad) + " of 240 points exceeded 1%");
    c.note("240 combos; worst occupancy gap " + fmt(worst_occ) + ", worst sim dev " +
           fmt(100 * worst) + "%");
    return c;
}

// ---------------------------------------------------------------------------
// 4. delay tuning round trip through simulation
// ---------------------------------------------------------------------------
Criterion criterion4() {
    Criterion c{4, "tune_delay: measured Little's-law delay within 2% of target"};
    const OutageProfile prof{0.05, 0.05};
    const RateConfig rates{2.0, 2.0};
    std::vector<RunConfig> cfgs;
    std::vector<double> targets{1.5, 2.0, 3.1, 5.0, 10.0};
    for (double target : targets) {
        const DelayVariant dv = tune_delay(target, prof);
        RunConfig cfg;
        cfg.scheme = dv.variant == DelayPolicy::V1   ? Scheme::FixedDelayV1
                     : dv.variant == DelayPolicy::V2 ? Scheme::FixedDelayV2
                                                     : Scheme::FixedDelayV3;
        cfg.slots = kSlots;
        cfg.seed = kSeed ^ (7000 + cfgs.size());
        cfg.rates = rates;
        cfg.profile = prof;
        cfg.p_c = dv.p_c;
        cfg.buffer_packets = 60;
        cfg.transient = TransientMode::Full;
        cfgs.push_back(cfg);
    }
    const std::vector<SimResult> sims = run_batch(cfgs);
    double worst = 0.0;
    for (std::size_t i = 0; i < sims.size(); ++i) {
        const double dev = std::fabs(sims[i].mean_delay - targets[i]) / targets[i];
        worst = std::max(worst, dev);
        if (dev > 0.02)
            c.fail("target " + fmt(targets[i]) + ": measured " +
                   fmt(sims[i].mean_delay) + " (" + fmt(100 * dev) + "%)");
    }
    c.note("worst dev " + fmt(100 * worst) + "% over targets {1.5, 2, 3.1, 5, 10}");
    return c;
}

// ---------------------------------------------------------------------------
// 5. high-SNR delay-constrained outage laws
// ---------------------------------------------------------------------------
Criterion criterion5() {
    Criterion c{5, "delay-constrained outage: gamma^-2 law for E{T}=3.1, gamma^-1 for E{T}=2"};
    const RateConfig rates{2.0, 2.0};
    const int L = 60;
    const std::vector<double> gammas{35.0, 40.0, 45.0};

    for (double target : {3.1, 2.0}) {
        std::vector<double> analytic;
        std::vector<RunConfig> cfgs;
        std::vector<double> expected_events;
        for (double gdb : gammas) {
            const double g = db_to_linear(gdb);
            const ChannelParams ch{1.0, 1.0, g, g};
            const OutageProfile prof = rayleigh_outage_probs(ch, rates);
            const DelayVariant dv = tune_delay(target, prof);
            analytic.push_back(outage_delay_constrained(dv, prof, L));

            RunConfig cfg;
            cfg.scheme = dv.variant == DelayPolicy::V1   ? Scheme::FixedDelayV1
                         : dv.variant == DelayPolicy::V2 ? Scheme::FixedDelayV2
                                                         : Scheme::FixedDelayV3;
            cfg.slots = kSlots;
            cfg.seed = kSeed ^ (9000 + cfgs.size() + (target > 3 ? 100 : 0));
            cfg.rates = rates;
            cfg.channel = ch;
            cfg.p_c = dv.p_c;
            cfg.buffer_packets = L;
            cfg.transient = TransientMode::Full;
            cfgs.push_back(cfg);
            expected_events.push_back(analytic.back() * static_cast<double>(kSlots));
        }

        const double want = target > 3.0 ? 10.0 : std::sqrt(10.0);
        for (std::size_t i = 0; i + 1 < analytic.size(); ++i) {
            const double factor = analytic[i] / analytic[i + 1];
            if (std::fabs(factor - want) > 0.2 * want)
                c.fail("E{T}=" + fmt(target) + ": analytic factor " + fmt(factor) +
                       " per 5 dB at " + fmt(gammas[i]) + "->" + fmt(gammas[i + 1]));
        }

        const std::vector<SimResult> sims = run_batch(cfgs);
        for (std::size_t i = 0; i < sims.size(); ++i) {
            // outage events are the slots with no effective transmission
            // (drop slots already count as silent); Poisson agreement with
            // the analytic mean covers both the measurable and the
            // event-starved points
            const double events =
                sims[i].silent_fraction * static_cast<double>(sims[i].slots);
            const double err = std::fabs(events - expected_events[i]);
            if (err > 3.0 * std::sqrt(expected_events[i] + 1.0) + 3.0)
                c.fail("E{T}=" + fmt(target) + " at " + fmt(gammas[i]) + " dB: " +
                       fmt(events) + " outage events vs expected " +
                       fmt(expected_events[i]));
        }
        if (target < 3.0) {
            // enough events at every point: check the simulated decade factor
            const auto out35 = sims[0], out45 = sims[2];
            const double f35 = *out35.outage, f45 = *out45.outage;
            const double sim_factor = std::sqrt(f35 / f45);
            if (std::fabs(sim_factor - want) > 0.2 * want)
                c.fail("E{T}=2 simulated per-5dB factor " + fmt(sim_factor));
            c.note("E{T}=2 simulated factor " + fmt(sim_factor) + " per 5 dB (want " +
                   fmt(want) + "); E{T}=3.1 checked by event counts");
        }
    }
    return c;
}

// ---------------------------------------------------------------------------
// 6. mixed rate without power allocation
// ---------------------------------------------------------------------------
Criterion criterion6() {
    Criterion c{6, "mixed rate, fixed power: balance root and simulation (0.5%)"};
    const RateConfig rates{2.0, 2.0};

    // case 1 regime: Omega_S = Omega_R = 10 linear
    RunConfig cfg;
    cfg.scheme = Scheme::Mixed;
    cfg.slots = kSlots;
    cfg.seed = kSeed ^ 0x600;
    cfg.rates = rates;
    cfg.channel = ChannelParams{10.0, 10.0, 1.0, 1.0};
    const OutageProfile prof = cfg.effective_profile();
    const double rho = solve_rho(prof, rates, 10.0);
    const double resid = mixed_arrival_side(rho, prof, rates, 10.0) -
                         mixed_service_side(rho, prof, rates, 10.0);
    if (std::fabs(resid) > 1e-9) c.fail("rho residual " + fmt(resid));
    const double tau = mixed_arrival_side(rho, prof, rates, 10.0);
    const SimResult r = run(cfg);
    if (!rel_ok(r.throughput, tau, 0.005))
        c.fail("case-1 sim tau " + fmt(r.throughput) + " vs " + fmt(tau));

    // case 2 regime: Omega_S = 3, Omega_R = 10
    RunConfig cfg2 = cfg;
    cfg2.seed = kSeed ^ 0x601;
    cfg2.channel = ChannelParams{3.0, 10.0, 1.0, 1.0};
    const OutageProfile prof2 = cfg2.effective_profile();
    if (mixed_condition(prof2, rates, 10.0)) c.fail("expected case-2 regime");
    const double tau2 = rates.s0 * (1.0 - prof2.p_s);
    const SimResult r2 = run(cfg2);
    if (!rel_ok(r2.throughput, tau2, 0.005))
        c.fail("case-2 sim tau " + fmt(r2.throughput) + " vs " + fmt(tau2));
    c.note("case-1 tau " + fmt(tau) + " (sim " + fmt(r.throughput) + "), case-2 tau " +
           fmt(tau2) + " (sim " + fmt(r2.throughput) + ")");
    return c;
}

// ---------------------------------------------------------------------------
// 7. mixed rate with power allocation
// ---------------------------------------------------------------------------
Criterion criterion7() {
    Criterion c{7, "power allocation: residuals, budget, and dominance over fixed power"};
    const RateConfig rates{2.0, 2.0};
    double max_gap_high = 0.0;
    std::vector<RunConfig> cfgs;
    std::vector<MixedPolicy> pols;
    std::vector<double> gaps;
    for (double gdb = 0.0; gdb <= 35.0 + 1e-9; gdb += 5.0) {
        const double g = db_to_linear(gdb);
        const ChannelParams ch{10.0, 1.0, g, g};
        const MixedPolicy pol = solve_power_allocation(ch, rates, g);
        const PaResiduals res = pa_residuals(pol, ch, rates);
        if (std::fabs(res.rate) > 1e-8 || std::fabs(res.power) > 1e-8)
            c.fail("residuals " + fmt(res.rate) + "/" + fmt(res.power) + " at " +
                   fmt(gdb) + " dB");

        const double tau_fixed =
            throughput_mixed(rayleigh_outage_probs(ch, rates), rates, ch.omega_r());
        const double gap = pol.throughput - tau_fixed;
        gaps.push_back(gap);
        if (gap < -1e-9)
            c.fail("PA below fixed power by " + fmt(-gap) + " at " + fmt(gdb) + " dB");
        if (gdb > 30.0) max_gap_high = std::max(max_gap_high, gap);

        RunConfig cfg;
        cfg.scheme = Scheme::MixedPa;
        cfg.slots = kSlots;
        cfg.seed = kSeed ^ (0x700 + cfgs.size());
        cfg.rates = rates;
        cfg.channel = ch;
        cfg.gamma_budget = g;
        cfgs.push_back(cfg);
        pols.push_back(pol);
    }
    const std::vector<SimResult> sims = run_batch(cfgs);
    for (std::size_t i = 0; i < sims.size(); ++i) {
        const double budget = *cfgs[i].gamma_budget;
        if (!rel_ok(sims[i].mean_power, budget, 0.01))
            c.fail("mean power " + fmt(sims[i].mean_power) + " vs budget " + fmt(budget));
        if (!rel_ok(sims[i].throughput, pols[i].throughput, 0.01))
            c.fail("PA sim tau " + fmt(sims[i].throughput) + " vs " +
                   fmt(pols[i].throughput));
    }
    if (max_gap_high > 0.02)
        c.fail("PA gap " + fmt(max_gap_high) + " bits/slot above 30 dB (should vanish)");
    c.note("gap at 0 dB " + fmt(gaps.front()) + ", at 35 dB " + fmt(gaps.back()) +
           " bits/slot");
    return c;
}

// ---------------------------------------------------------------------------
// 8. multiplexing law of the delay-constrained mixed schemes
// ---------------------------------------------------------------------------
Criterion criterion8() {
    Criterion c{8, "delay-constrained mixed: k/n law and adaptive dominance"};
    const RateConfig rates{2.0, 2.0};

    // k = 9, n = 1 at the stated 45 dB. The schedule's own stability
    // condition k(1-P_S)S0 <= n E{log2(1+r)} does not hold there
    // (18.0 bits/cycle arrive against 14.1 bits/cycle of relay capacity), so
    // the queue absorbs and the stated targets cannot be met; the check runs
    // as written and the law is verified separately at an SNR where the
    // stability condition holds.
    auto run_kn = [&](double gdb, std::uint64_t salt) {
        RunConfig kn;
        kn.scheme = Scheme::ConvMixedKn;
        kn.slots = kSlots;
        kn.seed = kSeed ^ salt;
        kn.rates = rates;
        const double g = db_to_linear(gdb);
        kn.channel = ChannelParams{1.0, 1.0, g, g};
        kn.schedule = {9, 1};
        kn.transient = TransientMode::Full;
        return run(kn);
    };
    const double cap45 = mean_log_capacity(db_to_linear(45.0));
    const SimResult rk = run_kn(45.0, 0x800);
    if (!rel_ok(rk.throughput, 1.8, 0.02))
        c.fail("k/n at stated 45 dB: tau " + fmt(rk.throughput) +
               " vs 1.8 (cycle arrival 18.0 > relay capacity " + fmt(cap45) +
               " bits, queue absorbs)");
    if (!rel_ok(rk.mean_delay, 5.0, 0.02))
        c.fail("k/n at stated 45 dB: delay " + fmt(rk.mean_delay) + " vs 5");
    const SimResult rk_hi = run_kn(70.0, 0x801);
    if (!rel_ok(rk_hi.throughput, 1.8, 0.02) || !rel_ok(rk_hi.mean_delay, 5.0, 0.02))
        c.fail("k/n law broken even at 70 dB: tau " + fmt(rk_hi.throughput) +
               ", delay " + fmt(rk_hi.mean_delay));
    if (!c.detail.empty()) c.detail += "; ";
    c.detail += "k/n law at 70 dB (stable regime): tau " + fmt(rk_hi.throughput) +
                ", delay " + fmt(rk_hi.mean_delay);

    // adaptive heuristic vs best k/n cycle across the sweep
    std::string sweep_note;
    for (double gdb = 10.0; gdb <= 45.0 + 1e-9; gdb += 5.0) {
        const double g = db_to_linear(gdb);
        RunConfig base;
        base.slots = 2'000'000;
        base.seed = kSeed ^ (0x810 + static_cast<std::uint64_t>(gdb));
        base.rates = rates;
        base.channel = ChannelParams{1.0, 1.0, g, g};
        base.transient = TransientMode::Full;

        RunConfig ad = base;
        ad.scheme = Scheme::MixedDelay;
        double tau_ad = 0.0;
        try {
            ad.q_max_bits = tune_qmax(ad, 5.0, 400'000);
            tau_ad = run(ad).throughput;
        } catch (const std::exception& e) {
            c.fail("q_max tuning failed at " + fmt(gdb) + " dB: " + e.what());
            continue;
        }

        RunConfig cv = base;
        cv.scheme = Scheme::ConvMixedKn;
        const auto sched = pick_kn_schedule(cv, 5.0, 400'000);
        if (!sched) continue; // no stable cycle at this SNR
        cv.schedule = *sched;
        const double tau_kn = run(cv).throughput;
        if (tau_ad < tau_kn * 0.995)
            c.fail("adaptive " + fmt(tau_ad) + " < k/n " + fmt(tau_kn) + " at " +
                   fmt(gdb) + " dB (k=" + std::to_string(sched->k) +
                   ",n=" + std::to_string(sched->n) + ")");
        if (gdb == 30.0)
            sweep_note = "; at 30 dB adaptive " + fmt(tau_ad) + " vs k/n " + fmt(tau_kn);
    }
    c.detail += sweep_note;
    return c;
}

// ---------------------------------------------------------------------------
// 9. analytic dominance and monotonicity on a dense grid
// ---------------------------------------------------------------------------
Criterion criterion9() {
    Criterion c{9, "dominance: adaptive >= conv1 >= conv2; monotone in P_S, P_R"};
    const RateConfig rates{2.0, 2.0};
    const int n = 50;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const OutageProfile prof{i / double(n), j / double(n)};
            const double ba = throughput_optimal(prof, rates);
            const double c1 = conv1_fixed(prof, rates.r0).throughput;
            const double c2 = conv2_fixed(prof, rates.r0).throughput;
            if (!(ba >= c1 - 1e-12 && c1 >= c2 - 1e-12)) {
                c.fail("ordering broken at P_S=" + fmt(prof.p_s) +
                       ", P_R=" + fmt(prof.p_r));
                return c;
            }
            if (i > 0 &&
                throughput_optimal({(i - 1) / double(n), j / double(n)}, rates) <
                    ba - 1e-12) {
                c.fail("not monotone in P_S at " + fmt(prof.p_s) + "," + fmt(prof.p_r));
                return c;
            }
            if (j > 0 &&
                throughput_optimal({i / double(n), (j - 1) / double(n)}, rates) <
                    ba - 1e-12) {
                c.fail("not monotone in P_R at " + fmt(prof.p_s) + "," + fmt(prof.p_r));
                return c;
            }
        }
    }
    c.note("50x50 grid clean");
    return c;
}

// ---------------------------------------------------------------------------
// 10. figure tables and their shape invariants
// ---------------------------------------------------------------------------
Criterion criterion10() {
    Criterion c{10, "reproduce: figure tables with the expected shapes"};
    FigureParams p;
    p.slots = 400'000;
    p.seed = kSeed;
    p.tuning_slots = 200'000;

    // fig2a: ratio >= 1 everywhere, -> 1 at high SNR, saturation at tau0
    {
        const ResultTable t = reproduce_figure(FigureId::Fig2a, p);
        double ba45 = 0.0;
        for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2) {
            const ResultRow& ba = t.rows[i];
            const ResultRow& cv = t.rows[i + 1];
            if (cv.scheme != "conv1-fixed") { c.fail("fig2a row order"); break; }
            const double ratio = *ba.throughput_analytic / *cv.throughput_analytic;
            if (ratio < 1.0 - 1e-12)
                c.fail("fig2a ratio < 1 at " + fmt(*ba.gamma_db) + " dB");
            if (*ba.gamma_db == 45.0) {
                if (std::fabs(ratio - 1.0) > 0.02)
                    c.fail("fig2a ratio at 45 dB " + fmt(ratio));
                ba45 = *ba.throughput_analytic;
            }
            // simulated agreement only where the throughput is measurable
            // at the table's run length
            if (ba.throughput_sim && *ba.throughput_analytic > 0.01 &&
                !rel_ok(*ba.throughput_sim, *ba.throughput_analytic, 0.02))
                c.fail("fig2a sim/analytic gap at " + fmt(*ba.gamma_db) + " dB");
        }
        if (std::fabs(ba45 - 1.0) > 0.005)
            c.fail("fig2a adaptive does not saturate at S0R0/(S0+R0)");
    }

    // fig2: outage ordering by scheme and by obar_s at fixed gamma
    {
        const ResultTable t = reproduce_figure(FigureId::Fig2, p);
        // scheme ordering
        for (std::size_t i = 0; i + 1 < t.rows.size(); i += 2)
            if (*t.rows[i].outage_analytic > *t.rows[i + 1].outage_analytic + 1e-12)
                c.fail("fig2: adaptive outage above conv1 at " +
                       fmt(*t.rows[i].gamma_db) + " dB");
        // curve ordering in obar_s: rows come in blocks of the three gains
        const std::size_t block = t.rows.size() / 3;
        for (std::size_t i = 0; i < block; i += 2) {
            const double f_weak = *t.rows[i].outage_analytic;        // obar_s = 0.1
            const double f_mid = *t.rows[i + block].outage_analytic; // obar_s = 1
            const double f_strong = *t.rows[i + 2 * block].outage_analytic;
            if (!(f_weak >= f_mid && f_mid >= f_strong))
                c.fail("fig2: curves not ordered by obar_s at " +
                       fmt(*t.rows[i].gamma_db) + " dB");
        }
    }

    // fig6: PA above fixed power, adaptive above conventional, saturation at S0
    {
        const ResultTable t = reproduce_figure(FigureId::Fig6, p);
        auto tau_of = [&](const std::string& scheme, double gdb) {
            for (const ResultRow& r : t.rows)
                if (r.scheme == scheme && r.gamma_db == gdb) return *r.throughput_analytic;
            return -1.0;
        };
        for (double gdb = 0.0; gdb <= 45.0 + 1e-9; gdb += 5.0) {
            const double ba = tau_of("mixed", gdb);
            const double pa = tau_of("mixed-pa", gdb);
            const double cv = tau_of("conv1-mixed", gdb);
            const double cvpa = tau_of("conv1-mixed-pa", gdb);
            if (pa < ba - 1e-9) c.fail("fig6: PA below fixed power at " + fmt(gdb));
            if (ba < cv - 1e-9) c.fail("fig6: adaptive below conv1 at " + fmt(gdb));
            if (pa < cvpa - 1e-9) c.fail("fig6: adaptive PA below conv1 PA at " + fmt(gdb));
        }
        // climb toward the S0 ceiling: monotone and already past 0.85 S0
        const double t25 = tau_of("mixed", 25.0), t35 = tau_of("mixed", 35.0),
                     t45 = tau_of("mixed", 45.0);
        if (!(t25 < t35 && t35 < t45 && t45 < 2.0))
            c.fail("fig6: throughput not climbing toward S0");
        if (t45 < 0.85 * 2.0)
            c.fail("fig6: adaptive mixed still far from S0 at 45 dB (" + fmt(t45) + ")");
    }

    // fig7: adaptive above the k/n benchmark, both near 1.8 at 45 dB
    {
        FigureParams p7 = p;
        p7.slots = 1'000'000;
        const ResultTable t = reproduce_figure(FigureId::Fig7, p7);
        double ad45 = 0.0, kn45 = 0.0;
        for (const ResultRow& r : t.rows) {
            if (r.scheme == "mixed-delay" && *r.gamma_db >= 10.0) {
                for (const ResultRow& s : t.rows)
                    if (s.scheme == "conv-mixed-kn" && s.gamma_db == r.gamma_db &&
                        *r.throughput_sim < *s.throughput_sim * 0.995)
                        c.fail("fig7: adaptive below k/n at " + fmt(*r.gamma_db) + " dB");
            }
            if (*r.gamma_db == 45.0 && r.scheme == "mixed-delay") ad45 = *r.throughput_sim;
            if (*r.gamma_db == 45.0 && r.scheme == "conv-mixed-kn")
                kn45 = *r.throughput_sim;
        }
        if (!rel_ok(ad45, 1.8, 0.03)) c.fail("fig7: adaptive at 45 dB " + fmt(ad45));
        // stable k/n cycles cap slightly under the 1.8 bound at finite SNR
        // (k = 7, n = 1 is the best stable schedule at 45 dB, tau = 1.75)
        if (kn45 < 0.88 * 1.8) c.fail("fig7: k/n at 45 dB " + fmt(kn45));
    }
    c.note("fig2a, fig2, fig6, fig7 shapes verified");
    return c;
}

} // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion1());
    results.push_back(criterion2());
    results.push_back(criterion3());
    results.push_back(criterion4());
    results.push_back(criterion5());
    results.push_back(criterion6());
    results.push_back(criterion7());
    results.push_back(criterion8());
    results.push_back(criterion9());
    results.push_back(criterion10());

    bool all = true;
    for (const Criterion& c : results) {
        std::printf("criterion %2d [%s] %s%s%s\n", c.id, c.pass ? "PASS" : "FAIL",
                    c.name.c_str(), c.detail.empty() ? "" : " -- ", c.detail.c_str());
        all = all && c.pass;
    }
    std::printf("acceptance: %s\n", all ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return all ? 0 : 1;
}
