#pragma once

#include <optional>
#include <string>
#include <vector>

namespace relayq {

/// One row of an experiment table. Absent quantities stay unset and are
/// emitted as empty CSV fields / JSON nulls.
struct ResultRow {
    std::optional<double> gamma_db;
    std::string scheme;
    std::optional<double> ps;
    std::optional<double> pr;
    std::optional<double> pc;
    std::string case_label;
    std::optional<double> throughput_analytic;
    std::optional<double> throughput_sim;
    std::optional<double> outage_analytic;
    std::optional<double> outage_sim;
    std::optional<double> delay_analytic;
    std::optional<double> delay_sim;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n_slots;
};

struct ResultTable {
    std::vector<ResultRow> rows;
};

enum class EmitFormat { Csv, Json };

std::optional<EmitFormat> emit_format_from_name(const std::string& name);

/// Fixed header: gamma_db,scheme,ps,pr,pc,case,throughput_analytic,
/// throughput_sim,outage_analytic,outage_sim,delay_analytic,delay_sim,seed,
/// n_slots. Identical tables serialize to byte-identical text.
std::string to_csv(const ResultTable& table);

/// One record per row with nested analytic/simulated blocks.
std::string to_json(const ResultTable& table);

/// Write the table to a file (single writer); throws std::runtime_error on
/// I/O failure.
void emit(const ResultTable& table, EmitFormat format, const std::string& path);

} // namespace relayq
