#include "soliton/report.hpp"

#include <cstdio>
#include <ctime>

#include <json.hpp>

namespace soliton {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string iso8601_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json equation_json(const EquationReport& eq) {
    ordered_json j;
    j["name"] = eq.name;
    j["channel"] = to_string(eq.channel);
    j["max_norm"] = eq.max_norm;
    j["rms"] = eq.rms;
    j["normalized_max"] = eq.normalized_max;
    j["tolerance"] = eq.tolerance;
    j["pass"] = eq.pass;
    j["samples"] = ordered_json{{"xi", eq.xi}, {"residual", eq.residual}};
    return j;
}

} // namespace

std::string report_to_json(const ResidualReport& rep, bool include_timestamp) {
    ordered_json j;
    j["tool"] = rep.tool;
    j["version"] = rep.version;
    j["command"] = rep.command;
    if (include_timestamp) j["timestamp"] = rep.timestamp;
    j["verdict"] = rep.verdict;
    if (!rep.note.empty()) j["note"] = rep.note;
    j["config"] = rep.config_text;
    ordered_json eqs = ordered_json::array();
    for (const auto& eq : rep.equations) eqs.push_back(equation_json(eq));
    j["equations"] = eqs;
    if (rep.oracle) {
        ordered_json o;
        o["steps"] = rep.oracle->steps;
        o["residuals"] = rep.oracle->residuals;
        o["at_floor"] = rep.oracle->at_floor;
        if (!rep.oracle->at_floor) {
            o["order_estimate"] = rep.oracle->order_estimate;
            o["extrapolated"] = rep.oracle->extrapolated;
        }
        j["oracle"] = o;
    }
    return j.dump(2) + "\n";
}

namespace {

bool needs_quoting(const std::string& s) {
    return s.find_first_of(",\"\n\r") != std::string::npos;
}

std::string csv_field(const std::string& s) {
    if (!needs_quoting(s)) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

} // namespace

std::string table_to_csv(const SampleTable& t) {
    std::string out;
    for (size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ",";
        out += csv_field(t.columns[c]);
    }
    out += "\n";
    for (const auto& row : t.rows) {
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) out += ",";
            out += format_g17(row[c]);
        }
        out += "\n";
    }
    return out;
}

std::string table_to_json(const SampleTable& t) {
    ordered_json j;
    j["columns"] = t.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.rows) rows.push_back(row);
    j["rows"] = rows;
    return j.dump(2) + "\n";
}

} // namespace soliton
