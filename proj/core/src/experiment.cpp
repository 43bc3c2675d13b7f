#include "relayq/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

namespace relayq {

namespace {

bool is_fixed_rate_scheme(Scheme s) {
    switch (s) {
        case Scheme::FixedOptimal:
        case Scheme::FixedDelayV1:
        case Scheme::FixedDelayV2:
        case Scheme::FixedDelayV3:
        case Scheme::Conv1Fixed:
        case Scheme::Conv2Fixed:
            return true;
        default:
            return false;
    }
}

bool is_delay_scheme(Scheme s) {
    return s == Scheme::FixedDelayV1 || s == Scheme::FixedDelayV2 ||
           s == Scheme::FixedDelayV3 || s == Scheme::MixedDelay;
}

} // namespace

std::optional<Mode> mode_from_name(const std::string& name) {
    if (name == "analyze") return Mode::Analyze;
    if (name == "simulate") return Mode::Simulate;
    if (name == "sweep") return Mode::Sweep;
    if (name == "reproduce") return Mode::Reproduce;
    return std::nullopt;
}

const char* mode_name(Mode m) {
    switch (m) {
        case Mode::Analyze: return "analyze";
        case Mode::Simulate: return "simulate";
        case Mode::Sweep: return "sweep";
        case Mode::Reproduce: return "reproduce";
    }
    return "unknown";
}

void ExperimentConfig::validate() const {
    std::vector<std::string> problems;
    auto need = [&](bool ok, const char* msg) {
        if (!ok) problems.emplace_back(msg);
    };

    if (mode == Mode::Reproduce) {
        need(figure.has_value(), "reproduce: missing figure id (--fig)");
    } else {
        need(scheme.has_value(), "missing parameter: scheme");
        need(s0.has_value(), "missing parameter: s0");
        need(r0.has_value(), "missing parameter: r0");
        if (scheme) {
            const Scheme sc = *scheme;
            const bool have_channel = gamma_db.has_value();
            const bool have_profile = ps.has_value() || pr.has_value();
            if (have_channel && have_profile)
                problems.emplace_back(
                    "conflict: --gamma-db with --ps/--pr over-specifies the outage "
                    "probabilities (P_S and P_R are derived from gamma under Rayleigh)");
            if (!have_channel && !(ps.has_value() && pr.has_value()))
                problems.emplace_back(
                    "missing parameter: either --gamma-db or both --ps and --pr");
            if (have_profile && !is_fixed_rate_scheme(sc))
                problems.emplace_back(
                    "mixed-rate schemes need channel parameters (--gamma-db), not --ps/--pr");
            if (is_delay_scheme(sc) && sc != Scheme::MixedDelay)
                need(p_c.has_value() || target_delay.has_value(),
                     "fixed-delay schemes need --pc or --target-delay");
            if (sc == Scheme::MixedPa)
                need(gamma_budget_db.has_value(), "missing parameter: gamma-budget-db");
            if (sc == Scheme::MixedDelay)
                need(qmax_bits.has_value() || target_delay.has_value(),
                     "mixed-delay needs --qmax-bits or --target-delay");
            if (sc == Scheme::ConvMixedKn) {
                need(k >= 1, "k must be >= 1");
                need(n_relay >= 1, "n-relay must be >= 1");
            }
        }
        need(slots >= 1, "slots must be >= 1");
        if (s0 && !(*s0 > 0)) problems.emplace_back("s0 must be > 0");
        if (r0 && !(*r0 > 0)) problems.emplace_back("r0 must be > 0");
        need(omega_s > 0, "omega-s must be > 0");
        need(omega_r > 0, "omega-r must be > 0");
        if (ps && (*ps < 0 || *ps >= 1)) problems.emplace_back("ps must be in [0,1)");
        if (pr && (*pr < 0 || *pr >= 1)) problems.emplace_back("pr must be in [0,1)");
        if (mode == Mode::Sweep) {
            need(axis.has_value(), "sweep: missing axis");
            need(!values.empty(), "sweep: missing values");
        }
    }

    if (!problems.empty()) {
        std::ostringstream msg;
        msg << "invalid configuration:";
        for (const std::string& p : problems) msg << "\n  - " << p;
        throw std::invalid_argument(msg.str());
    }
}

RunConfig ExperimentConfig::to_run_config() const {
    validate();
    RunConfig rc;
    rc.scheme = *scheme;
    rc.slots = slots;
    rc.seed = seed;
    rc.rates = {*s0, *r0};
    if (gamma_db) {
        const double g = db_to_linear(*gamma_db);
        rc.channel = ChannelParams{omega_s, omega_r, g, g};
    } else {
        rc.profile = OutageProfile{ps.value_or(0.0), pr.value_or(0.0)};
    }
    rc.target_delay = target_delay;
    rc.p_c = p_c;
    rc.buffer_packets = buffer_packets;
    if (qmax_bits) rc.q_max_bits = *qmax_bits;
    if (gamma_budget_db) rc.gamma_budget = db_to_linear(*gamma_budget_db);
    rc.schedule = ConvMixedSchedule{k, n_relay};
    rc.transient = transient.value_or(is_delay_scheme(*scheme) ? TransientMode::Full
                                                               : TransientMode::Steady);
    return rc;
}

namespace {

using nlohmann::ordered_json;

template <typename T>
void put_opt(ordered_json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

template <typename T>
void get_opt(const ordered_json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key)) v = j.at(key).get<T>();
}

} // namespace

std::string experiment_to_json(const ExperimentConfig& c) {
    ordered_json j;
    j["mode"] = mode_name(c.mode);
    if (c.scheme) j["scheme"] = scheme_name(*c.scheme);
    put_opt(j, "s0", c.s0);
    put_opt(j, "r0", c.r0);
    j["omega_s"] = c.omega_s;
    j["omega_r"] = c.omega_r;
    put_opt(j, "gamma_db", c.gamma_db);
    put_opt(j, "gamma_budget_db", c.gamma_budget_db);
    put_opt(j, "ps", c.ps);
    put_opt(j, "pr", c.pr);
    put_opt(j, "target_delay", c.target_delay);
    put_opt(j, "pc", c.p_c);
    j["buffer_packets"] = c.buffer_packets;
    put_opt(j, "qmax_bits", c.qmax_bits);
    j["k"] = c.k;
    j["n_relay"] = c.n_relay;
    j["slots"] = c.slots;
    j["seed"] = c.seed;
    if (c.transient)
        j["transient"] = *c.transient == TransientMode::Steady ? "steady" : "full";
    j["format"] = c.format == EmitFormat::Csv ? "csv" : "json";
    j["out"] = c.out;
    if (c.axis) {
        const char* names[] = {"gamma-db", "gamma-budget-db", "target-delay",
                               "qmax-bits", "buffer-packets", "rate"};
        j["axis"] = names[static_cast<int>(*c.axis)];
    }
    if (!c.values.empty()) j["values"] = c.values;
    if (c.figure) j["figure"] = figure_name(*c.figure);
    if (!c.delay_targets.empty()) j["delay_targets"] = c.delay_targets;
    return j.dump(2) + "\n";
}

ExperimentConfig experiment_from_json(const std::string& text) {
    const ordered_json j = ordered_json::parse(text);
    ExperimentConfig c;
    if (const auto m = mode_from_name(j.at("mode").get<std::string>())) c.mode = *m;
    else throw std::invalid_argument("config: unknown mode");
    if (j.contains("scheme")) {
        const auto s = scheme_from_name(j.at("scheme").get<std::string>());
        if (!s) throw std::invalid_argument("config: unknown scheme");
        c.scheme = s;
    }
    get_opt(j, "s0", c.s0);
    get_opt(j, "r0", c.r0);
    if (j.contains("omega_s")) c.omega_s = j.at("omega_s").get<double>();
    if (j.contains("omega_r")) c.omega_r = j.at("omega_r").get<double>();
    get_opt(j, "gamma_db", c.gamma_db);
    get_opt(j, "gamma_budget_db", c.gamma_budget_db);
    get_opt(j, "ps", c.ps);
    get_opt(j, "pr", c.pr);
    get_opt(j, "target_delay", c.target_delay);
    get_opt(j, "pc", c.p_c);
    if (j.contains("buffer_packets")) c.buffer_packets = j.at("buffer_packets").get<int>();
    get_opt(j, "qmax_bits", c.qmax_bits);
    if (j.contains("k")) c.k = j.at("k").get<int>();
    if (j.contains("n_relay")) c.n_relay = j.at("n_relay").get<int>();
    if (j.contains("slots")) c.slots = j.at("slots").get<std::uint64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("transient"))
        c.transient = j.at("transient").get<std::string>() == "steady"
                          ? TransientMode::Steady
                          : TransientMode::Full;
    if (j.contains("format")) {
        const auto f = emit_format_from_name(j.at("format").get<std::string>());
        if (!f) throw std::invalid_argument("config: unknown format");
        c.format = *f;
    }
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("axis")) {
        const auto a = sweep_axis_from_name(j.at("axis").get<std::string>());
        if (!a) throw std::invalid_argument("config: unknown axis");
        c.axis = a;
    }
    if (j.contains("values")) c.values = j.at("values").get<std::vector<double>>();
    if (j.contains("figure")) {
        const auto f = figure_from_name(j.at("figure").get<std::string>());
        if (!f) throw std::invalid_argument("config: unknown figure");
        c.figure = f;
    }
    if (j.contains("delay_targets"))
        c.delay_targets = j.at("delay_targets").get<std::vector<double>>();
    return c;
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
    return a.mode == b.mode && a.scheme == b.scheme && a.s0 == b.s0 && a.r0 == b.r0 &&
           a.omega_s == b.omega_s && a.omega_r == b.omega_r && a.gamma_db == b.gamma_db &&
           a.gamma_budget_db == b.gamma_budget_db && a.ps == b.ps && a.pr == b.pr &&
           a.target_delay == b.target_delay && a.p_c == b.p_c &&
           a.buffer_packets == b.buffer_packets && a.qmax_bits == b.qmax_bits &&
           a.k == b.k && a.n_relay == b.n_relay && a.slots == b.slots && a.seed == b.seed &&
           a.transient == b.transient && a.format == b.format && a.out == b.out &&
           a.axis == b.axis && a.values == b.values && a.figure == b.figure &&
           a.delay_targets == b.delay_targets;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    ResultTable table;
    switch (cfg.mode) {
        case Mode::Analyze: {
            const RunConfig rc = cfg.to_run_config();
            ResultRow row;
            row.gamma_db = cfg.gamma_db;
            row.scheme = scheme_name(rc.scheme);
            const OutageProfile prof = rc.effective_profile();
            row.ps = prof.p_s;
            row.pr = prof.p_r;
            const AnalyticPoint a = analyze_config(rc);
            row.pc = a.p_c;
            row.case_label = a.case_label;
            row.throughput_analytic = a.throughput;
            row.outage_analytic = a.outage;
            row.delay_analytic = a.delay;
            table.rows.push_back(row);
            break;
        }
        case Mode::Simulate: {
            RunConfig rc = cfg.to_run_config();
            if (rc.scheme == Scheme::MixedDelay && !cfg.qmax_bits && cfg.target_delay)
                rc.q_max_bits = tune_qmax(rc, *cfg.target_delay,
                                          std::min<std::uint64_t>(rc.slots, 400'000));
            ResultRow row;
            row.gamma_db = cfg.gamma_db;
            row.scheme = scheme_name(rc.scheme);
            const OutageProfile prof = rc.effective_profile();
            row.ps = prof.p_s;
            row.pr = prof.p_r;
            const AnalyticPoint a = analyze_config(rc);
            row.pc = a.p_c;
            row.case_label = a.case_label;
            row.throughput_analytic = a.throughput;
            row.outage_analytic = a.outage;
            row.delay_analytic = a.delay;
            const SimResult s = run(rc);
            row.throughput_sim = s.throughput;
            row.outage_sim = s.outage;
            row.delay_sim = s.mean_delay;
            row.seed = s.seed;
            row.n_slots = s.slots;
            table.rows.push_back(row);
            break;
        }
        case Mode::Sweep: {
            const RunConfig rc = cfg.to_run_config();
            const std::vector<SweepPoint> pts = sweep(rc, *cfg.axis, cfg.values);
            for (const SweepPoint& pt : pts) {
                ResultRow row;
                row.gamma_db =
                    (*cfg.axis == SweepAxis::GammaDb || *cfg.axis == SweepAxis::GammaBudgetDb)
                        ? std::optional<double>(pt.value)
                        : cfg.gamma_db;
                row.scheme = scheme_name(pt.config.scheme);
                const OutageProfile prof = pt.config.effective_profile();
                row.ps = prof.p_s;
                row.pr = prof.p_r;
                row.pc = pt.analytic.p_c;
                row.case_label = pt.analytic.case_label;
                row.throughput_analytic = pt.analytic.throughput;
                row.outage_analytic = pt.analytic.outage;
                row.delay_analytic = pt.analytic.delay;
                row.throughput_sim = pt.sim.throughput;
                row.outage_sim = pt.sim.outage;
                row.delay_sim = pt.sim.mean_delay;
                row.seed = pt.sim.seed;
                row.n_slots = pt.sim.slots;
                table.rows.push_back(row);
            }
            break;
        }
        case Mode::Reproduce: {
            FigureParams fp;
            fp.slots = cfg.slots;
            fp.seed = cfg.seed;
            if (!cfg.delay_targets.empty()) fp.delay_targets = cfg.delay_targets;
            if (cfg.target_delay) fp.target_delay = *cfg.target_delay;
            fp.buffer_packets = cfg.buffer_packets;
            table = reproduce_figure(*cfg.figure, fp);
            break;
        }
    }
    return table;
}

} // namespace relayq
