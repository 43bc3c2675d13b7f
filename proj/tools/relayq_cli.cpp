#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "relayq/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitDelay = 4;

void add_common_options(CLI::App* cmd, relayq::ExperimentConfig& cfg,
                        std::string& scheme, std::string& transient,
                        std::string& format, std::string& config_path) {
    cmd->add_option("--config", config_path, "JSON config file; flags override its fields");
    cmd->add_option("--scheme", scheme,
                    "fixed-optimal|fixed-delay-v1|fixed-delay-v2|fixed-delay-v3|mixed|"
                    "mixed-pa|mixed-delay|conv1-fixed|conv2-fixed|conv1-mixed|conv-mixed-kn");
    cmd->add_option("--s0", [&cfg](const CLI::results_t& r) {
        cfg.s0 = std::stod(r[0]); return true; }, "source rate, bits/slot");
    cmd->add_option("--r0", [&cfg](const CLI::results_t& r) {
        cfg.r0 = std::stod(r[0]); return true; }, "relay rate, bits/slot");
    cmd->add_option("--omega-s", cfg.omega_s, "mean squared S-R channel gain");
    cmd->add_option("--omega-r", cfg.omega_r, "mean squared R-D channel gain");
    cmd->add_option("--gamma-db", [&cfg](const CLI::results_t& r) {
        cfg.gamma_db = std::stod(r[0]); return true; }, "transmit SNR of both nodes, dB");
    cmd->add_option("--gamma-budget-db", [&cfg](const CLI::results_t& r) {
        cfg.gamma_budget_db = std::stod(r[0]); return true; }, "average power budget, dB");
    cmd->add_option("--ps", [&cfg](const CLI::results_t& r) {
        cfg.ps = std::stod(r[0]); return true; }, "S-R outage probability");
    cmd->add_option("--pr", [&cfg](const CLI::results_t& r) {
        cfg.pr = std::stod(r[0]); return true; }, "R-D outage probability");
    cmd->add_option("--target-delay", [&cfg](const CLI::results_t& r) {
        cfg.target_delay = std::stod(r[0]); return true; }, "average delay target, slots");
    cmd->add_option("--pc", [&cfg](const CLI::results_t& r) {
        cfg.p_c = std::stod(r[0]); return true; }, "coin probability override");
    cmd->add_option("--buffer-packets", cfg.buffer_packets, "relay buffer size L, packets");
    cmd->add_option("--qmax-bits", [&cfg](const CLI::results_t& r) {
        cfg.qmax_bits = std::stod(r[0]); return true; }, "buffer cap of the mixed delay heuristic");
    cmd->add_option("--k", cfg.k, "source slots per conventional mixed cycle");
    cmd->add_option("--n-relay", cfg.n_relay, "relay slots per conventional mixed cycle");
    cmd->add_option("--slots", cfg.slots, "simulated slots N");
    cmd->add_option("--seed", cfg.seed, "64-bit run seed");
    cmd->add_option("--transient", transient, "steady|full");
    cmd->add_option("--format", format, "csv|json");
    cmd->add_option("--out", cfg.out, "output path (stdout when omitted)");
}

int finalize_strings(relayq::ExperimentConfig& cfg, const std::string& scheme,
                     const std::string& transient, const std::string& format) {
    if (!scheme.empty()) {
        const auto s = relayq::scheme_from_name(scheme);
        if (!s) {
            std::cerr << "error: unknown scheme '" << scheme << "'\n";
            return kExitConfig;
        }
        cfg.scheme = s;
    }
    if (!transient.empty()) {
        if (transient == "steady") cfg.transient = relayq::TransientMode::Steady;
        else if (transient == "full") cfg.transient = relayq::TransientMode::Full;
        else {
            std::cerr << "error: unknown transient mode '" << transient << "'\n";
            return kExitConfig;
        }
    }
    if (!format.empty()) {
        const auto f = relayq::emit_format_from_name(format);
        if (!f) {
            std::cerr << "error: unknown format '" << format << "'\n";
            return kExitConfig;
        }
        cfg.format = *f;
    }
    return kExitOk;
}

int emit_table(const relayq::ResultTable& table, const relayq::ExperimentConfig& cfg) {
    const std::string text = cfg.format == relayq::EmitFormat::Csv
                                 ? relayq::to_csv(table)
                                 : relayq::to_json(table);
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        relayq::emit(table, cfg.format, cfg.out);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"buffer-aided relaying protocols: analysis and Monte Carlo verification"};
    app.require_subcommand(1);

    relayq::ExperimentConfig cfg;
    std::string scheme, transient, format, config_path, fig, axis;
    bool print_config = false;

    CLI::App* analyze = app.add_subcommand("analyze", "closed-form evaluation of one scheme");
    CLI::App* simulate = app.add_subcommand("simulate", "seeded Monte Carlo run of one scheme");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "simulate across one parameter axis");
    CLI::App* reproduce = app.add_subcommand("reproduce", "rebuild a standard evaluation figure table");

    for (CLI::App* cmd : {analyze, simulate, sweep_cmd, reproduce}) {
        add_common_options(cmd, cfg, scheme, transient, format, config_path);
        cmd->add_flag("--print-config", print_config,
                      "serialize the effective config as JSON and exit");
    }
    sweep_cmd->add_option("--axis", axis,
                          "gamma-db|gamma-budget-db|target-delay|qmax-bits|buffer-packets|rate");
    sweep_cmd->add_option("--values", cfg.values, "axis values")->delimiter(',');
    reproduce->add_option("--fig", fig, "fig2a|fig2|fig3|fig4|fig5|fig6|fig7");
    reproduce->add_option("--delay-targets", cfg.delay_targets,
                          "fig3/fig4 delay targets")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) {
                std::cerr << "error: cannot read config file " << config_path << "\n";
                return kExitConfig;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            relayq::ExperimentConfig from_file = relayq::experiment_from_json(buf.str());
            // flags already collected override the file's values
            relayq::ExperimentConfig flags = cfg;
            cfg = from_file;
            if (flags.scheme) cfg.scheme = flags.scheme;
            if (flags.s0) cfg.s0 = flags.s0;
            if (flags.r0) cfg.r0 = flags.r0;
            if (flags.gamma_db) cfg.gamma_db = flags.gamma_db;
            if (flags.gamma_budget_db) cfg.gamma_budget_db = flags.gamma_budget_db;
            if (flags.ps) cfg.ps = flags.ps;
            if (flags.pr) cfg.pr = flags.pr;
            if (flags.target_delay) cfg.target_delay = flags.target_delay;
            if (flags.p_c) cfg.p_c = flags.p_c;
            if (flags.qmax_bits) cfg.qmax_bits = flags.qmax_bits;
            if (!flags.values.empty()) cfg.values = flags.values;
            if (!flags.out.empty()) cfg.out = flags.out;
        }

        if (analyze->parsed()) cfg.mode = relayq::Mode::Analyze;
        if (simulate->parsed()) cfg.mode = relayq::Mode::Simulate;
        if (sweep_cmd->parsed()) cfg.mode = relayq::Mode::Sweep;
        if (reproduce->parsed()) cfg.mode = relayq::Mode::Reproduce;

        const int rc = finalize_strings(cfg, scheme, transient, format);
        if (rc != kExitOk) return rc;
        if (!axis.empty()) {
            const auto a = relayq::sweep_axis_from_name(axis);
            if (!a) {
                std::cerr << "error: unknown sweep axis '" << axis << "'\n";
                return kExitConfig;
            }
            cfg.axis = a;
        }
        if (!fig.empty()) {
            const auto f = relayq::figure_from_name(fig);
            if (!f) {
                std::cerr << "error: unknown figure id '" << fig << "'\n";
                return kExitConfig;
            }
            cfg.figure = f;
        }

        if (print_config) {
            cfg.validate();
            std::cout << relayq::experiment_to_json(cfg);
            return kExitOk;
        }

        const relayq::ResultTable table = relayq::run_experiment(cfg);
        return emit_table(table, cfg);
    } catch (const relayq::UnachievableDelayError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDelay;
    } catch (const relayq::SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
