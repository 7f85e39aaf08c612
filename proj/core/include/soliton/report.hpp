#pragma once

#include <optional>
#include <string>
#include <vector>

#include "soliton/fields.hpp"

namespace soliton {

/// Shortest representation that round-trips a double exactly.
std::string format_g17(double v);

struct EquationReport {
    std::string name;
    DerivChannel channel = DerivChannel::analytic;
    std::vector<double> xi;        // sample locations
    std::vector<double> residual;  // |residual| per sample
    double max_norm = 0.0;
    double rms = 0.0;
    double normalized_max = 0.0;   // divided by the local scale max(1, |rho| |g|_inf)
    double tolerance = 0.0;
    bool pass = true;
};

struct OracleBlock {
    std::vector<double> steps;
    std::vector<double> residuals;  // max-norm FD residual per step
    bool at_floor = false;          // all residuals at the roundoff floor
    double order_estimate = 0.0;    // log-log slope; meaningless when at_floor
    double extrapolated = 0.0;      // Richardson zero-step residual estimate
};

/// Self-contained run record: the embedded config text reproduces the run
/// without the original file. Verdict is "pass" iff every equation max-norm
/// is within its tolerance. `timestamp` is the only nondeterministic field.
struct ResidualReport {
    std::string command;
    std::string verdict = "pass";
    std::string tool;
    std::string version;
    std::string timestamp;
    std::string config_text;
    std::string note;
    std::vector<EquationReport> equations;
    std::optional<OracleBlock> oracle;

    bool pass() const { return verdict == "pass"; }
};

std::string report_to_json(const ResidualReport& rep, bool include_timestamp = true);

/// Plot-ready numeric table.
struct SampleTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// RFC-4180-style CSV: '.' decimal separator, 17-significant-digit floats,
/// quoting only where needed.
std::string table_to_csv(const SampleTable& t);
std::string table_to_json(const SampleTable& t);

std::string iso8601_utc_now();

} // namespace soliton
