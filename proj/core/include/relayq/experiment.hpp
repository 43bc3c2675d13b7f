#pragma once

#include <optional>
#include <string>
#include <vector>

#include "relayq/figures.hpp"
#include "relayq/sim.hpp"
#include "relayq/table.hpp"

namespace relayq {

enum class Mode { Analyze, Simulate, Sweep, Reproduce };

std::optional<Mode> mode_from_name(const std::string& name);
const char* mode_name(Mode m);

/// Everything one experiment invocation needs. SNR flags are in dB at this
/// layer and converted to linear internally; omega_s/omega_r are the average
/// squared channel gains.
struct ExperimentConfig {
    Mode mode = Mode::Analyze;
    std::optional<Scheme> scheme;

    std::optional<double> s0;
    std::optional<double> r0;
    double omega_s = 1.0;
    double omega_r = 1.0;
    std::optional<double> gamma_db;
    std::optional<double> gamma_budget_db;
    std::optional<double> ps;
    std::optional<double> pr;
    std::optional<double> target_delay;
    std::optional<double> p_c;
    int buffer_packets = 60;
    std::optional<double> qmax_bits;
    int k = 1;
    int n_relay = 1;
    std::uint64_t slots = 10'000'000;
    std::uint64_t seed = 1;
    std::optional<TransientMode> transient; ///< default chosen per scheme

    EmitFormat format = EmitFormat::Csv;
    std::string out; ///< empty writes to stdout

    std::optional<SweepAxis> axis;      ///< sweep mode
    std::vector<double> values;         ///< sweep mode
    std::optional<FigureId> figure;     ///< reproduce mode
    std::vector<double> delay_targets;  ///< reproduce fig3/fig4 override

    /// Throws std::invalid_argument listing every violated constraint.
    void validate() const;

    /// Build the simulator configuration (validates first).
    RunConfig to_run_config() const;
};

/// JSON round-trip for configs; parse(serialize(c)) == c.
std::string experiment_to_json(const ExperimentConfig& cfg);
ExperimentConfig experiment_from_json(const std::string& text);

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

/// Run the configured experiment and return its table.
ResultTable run_experiment(const ExperimentConfig& cfg);

} // namespace relayq
