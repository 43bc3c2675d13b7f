#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relayq/channel.hpp"
#include "relayq/conventional.hpp"
#include "relayq/fixed_rate.hpp"
#include "relayq/mixed_rate.hpp"

namespace relayq {

/// Every scheme the simulator and the analytic dispatcher understand.
enum class Scheme {
    FixedOptimal,
    FixedDelayV1,
    FixedDelayV2,
    FixedDelayV3,
    Mixed,
    MixedPa,
    MixedDelay,
    Conv1Fixed,
    Conv2Fixed,
    Conv1Mixed,
    ConvMixedKn,
};

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(const std::string& name);

/// Steady ignores buffer filling/emptying transients (backlogged relay);
/// Full starts empty and drains the buffer once the source stops.
enum class TransientMode { Steady, Full };

/// One seeded run. The channel is given either as Rayleigh parameters or as a
/// bare outage profile (indicator-only; fixed-rate schemes only).
struct RunConfig {
    Scheme scheme = Scheme::FixedOptimal;
    std::uint64_t slots = 10'000'000;
    std::uint64_t seed = 1;
    TransientMode transient = TransientMode::Steady;
    RateConfig rates{2.0, 2.0};

    std::optional<ChannelParams> channel;
    std::optional<OutageProfile> profile;

    std::optional<double> target_delay; ///< fixed-delay: solve p_c for this E{T}
    std::optional<double> p_c;          ///< fixed-delay: explicit coin probability
    int buffer_packets = 60;            ///< L for the fixed-delay chain
    double q_max_bits = 40.0;           ///< buffer cap of the mixed delay heuristic
    std::optional<double> gamma_budget; ///< average power budget (PA; linear)
    ConvMixedSchedule schedule;         ///< k/n cycle
    bool measure_fifo_delay = false;

    /// Outage probabilities implied by the configuration.
    OutageProfile effective_profile() const;
    void validate() const;
};

/// Measured statistics of one run. Delay is Little's law on the measured
/// queue average and accepted arrival rate; fifo_delay is the per-packet
/// timestamp cross-check when requested.
struct SimResult {
    double throughput = 0.0;   ///< bits/slot delivered to the destination
    double arrival_rate = 0.0; ///< bits/slot accepted into the buffer
    double mean_queue = 0.0;   ///< E{Q}, bits
    double mean_delay = 0.0;   ///< E{Q}/A, slots
    std::optional<double> outage; ///< 1 - tau/tau0 where tau0 is defined
    std::uint64_t slots = 0;
    std::uint64_t seed = 0;
    std::uint64_t dropped_packets = 0;
    double silent_fraction = 0.0; ///< slots with no effective transmission
    double mean_power = 0.0;      ///< time-average spent transmit SNR
    double max_queue_bits = 0.0;
    std::optional<double> fifo_delay; ///< slots, when measure_fifo_delay
    double total_arrived_bits = 0.0;
    double total_delivered_bits = 0.0;
    double final_queue_bits = 0.0;
};

/// Analytic counterparts for the same configuration, where closed forms
/// exist. case_label is the policy regime (case1..3 or v1..v3).
struct AnalyticPoint {
    std::optional<double> throughput;
    std::optional<double> outage;
    std::optional<double> delay;
    std::optional<double> p_c;
    std::string case_label;
};

/// Closed-form evaluation of a configuration (no simulation).
AnalyticPoint analyze_config(const RunConfig& cfg);

/// Seeded Monte Carlo run of a fixed-rate scheme (optimal or delay variant).
SimResult run_fixed(const RunConfig& cfg);

/// Seeded run of a mixed-rate scheme (fixed power, PA, or delay heuristic).
SimResult run_mixed(const RunConfig& cfg);

/// Seeded run of a conventional schedule.
SimResult run_conventional(const RunConfig& cfg);

/// Dispatch on cfg.scheme.
SimResult run(const RunConfig& cfg);

/// Sweep axes understood by sweep().
enum class SweepAxis { GammaDb, GammaBudgetDb, TargetDelay, QmaxBits, BufferPackets, Rate };

std::optional<SweepAxis> sweep_axis_from_name(const std::string& name);

struct SweepPoint {
    double value = 0.0;
    RunConfig config;
    AnalyticPoint analytic;
    SimResult sim;
};

/// Run one simulation per axis value; point i uses seed base.seed ^ i so the
/// points are independent and the whole table is reproducible. Points may be
/// evaluated concurrently; results are ordered by index.
std::vector<SweepPoint> sweep(const RunConfig& base, SweepAxis axis,
                              const std::vector<double>& values,
                              unsigned max_workers = 0);

double db_to_linear(double db);
double linear_to_db(double x);

} // namespace relayq
