#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relayq/sim.hpp"
#include "relayq/table.hpp"

namespace relayq {

/// The data tables behind the standard evaluation figures.
///   fig2a  throughput ratio adaptive / Conventional 1, fixed rate
///   fig2   outage, adaptive vs Conventional 1, fixed rate
///   fig3   throughput vs gamma under delay constraints, fixed rate
///   fig4   outage vs gamma under delay constraints, fixed rate
///   fig5   fig4 on a fine 35-45 dB grid (diversity-slope detail)
///   fig6   mixed-rate throughput vs Gamma, with and without power allocation
///   fig7   mixed-rate throughput vs Gamma under an average delay constraint
enum class FigureId { Fig2a, Fig2, Fig3, Fig4, Fig5, Fig6, Fig7 };

std::optional<FigureId> figure_from_name(const std::string& name);
const char* figure_name(FigureId id);

struct FigureParams {
    std::uint64_t slots = 10'000'000;
    std::uint64_t seed = 0x5eed;
    /// sweep grid in dB; empty selects the figure's default
    std::vector<double> gamma_db;
    /// fig3/fig4: average delay targets; defaults to the values named in the
    /// evaluation text
    std::vector<double> delay_targets{1.1, 2.0, 3.1, 50.0};
    /// fig7: the delay constraint
    double target_delay = 5.0;
    /// fig3/fig4/fig5: relay buffer size in packets
    int buffer_packets = 60;
    /// shorter runs used while tuning q_max / picking (k, n) for fig7
    std::uint64_t tuning_slots = 400'000;
    unsigned max_workers = 0;
};

/// Build the data table of one figure. Analytic columns are always filled
/// where a closed form exists; simulated columns follow the figure's markers.
ResultTable reproduce_figure(FigureId id, const FigureParams& params = {});

/// Bisect the buffer cap of the mixed delay heuristic until the measured
/// Little's-law delay hits the target. Returns the tuned q_max in bits.
double tune_qmax(const RunConfig& base, double target_delay,
                 std::uint64_t tuning_slots);

/// Smallest-delay feasible k/n schedule maximizing throughput subject to the
/// stability condition and a measured-delay cap. Returns nullopt when no
/// schedule in the search grid is stable.
std::optional<ConvMixedSchedule> pick_kn_schedule(const RunConfig& base,
                                                  double target_delay,
                                                  std::uint64_t tuning_slots);

} // namespace relayq
