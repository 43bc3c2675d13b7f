#include "relayq/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace relayq {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void put(std::string& out, const std::optional<double>& v) {
    if (v && std::isfinite(*v)) out += fmt(*v);
}

void put(std::string& out, const std::optional<std::uint64_t>& v) {
    if (v) out += std::to_string(*v);
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (v && std::isfinite(*v)) return *v;
    return nullptr;
}

} // namespace

std::optional<EmitFormat> emit_format_from_name(const std::string& name) {
    if (name == "csv") return EmitFormat::Csv;
    if (name == "json") return EmitFormat::Json;
    return std::nullopt;
}

std::string to_csv(const ResultTable& table) {
    std::string out =
        "gamma_db,scheme,ps,pr,pc,case,throughput_analytic,throughput_sim,"
        "outage_analytic,outage_sim,delay_analytic,delay_sim,seed,n_slots\n";
    for (const ResultRow& r : table.rows) {
        put(out, r.gamma_db);
        out += ',';
        out += r.scheme;
        out += ',';
        put(out, r.ps);
        out += ',';
        put(out, r.pr);
        out += ',';
        put(out, r.pc);
        out += ',';
        out += r.case_label;
        out += ',';
        put(out, r.throughput_analytic);
        out += ',';
        put(out, r.throughput_sim);
        out += ',';
        put(out, r.outage_analytic);
        out += ',';
        put(out, r.outage_sim);
        out += ',';
        put(out, r.delay_analytic);
        out += ',';
        put(out, r.delay_sim);
        out += ',';
        put(out, r.seed);
        out += ',';
        put(out, r.n_slots);
        out += '\n';
    }
    return out;
}

std::string to_json(const ResultTable& table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const ResultRow& r : table.rows) {
        nlohmann::ordered_json rec;
        rec["gamma_db"] = opt_json(r.gamma_db);
        rec["scheme"] = r.scheme;
        rec["ps"] = opt_json(r.ps);
        rec["pr"] = opt_json(r.pr);
        rec["pc"] = opt_json(r.pc);
        rec["case"] = r.case_label;
        rec["analytic"] = {
            {"throughput", opt_json(r.throughput_analytic)},
            {"outage", opt_json(r.outage_analytic)},
            {"delay", opt_json(r.delay_analytic)},
        };
        rec["simulated"] = {
            {"throughput", opt_json(r.throughput_sim)},
            {"outage", opt_json(r.outage_sim)},
            {"delay", opt_json(r.delay_sim)},
        };
        if (r.seed) rec["seed"] = *r.seed; else rec["seed"] = nullptr;
        if (r.n_slots) rec["n_slots"] = *r.n_slots; else rec["n_slots"] = nullptr;
        arr.push_back(std::move(rec));
    }
    return arr.dump(2) + "\n";
}

void emit(const ResultTable& table, EmitFormat format, const std::string& path) {
    const std::string text = format == EmitFormat::Csv ? to_csv(table) : to_json(table);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open " + path);
    out << text;
    if (!out) throw std::runtime_error("emit: write failed for " + path);
}

} // namespace relayq
