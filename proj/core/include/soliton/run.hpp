#pragma once

#include "soliton/config.hpp"
#include "soliton/report.hpp"

namespace soliton {

/// Command-line overrides layered on top of a RunConfig.
struct RunOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::string> format;
    std::optional<double> tolerance;  // replaces every equation tolerance
    std::optional<double> fd_step;    // replaces the oracle FD step
    bool quiet = false;
    bool write_files = true;
};

/// Exit-code contract: 0 pass, 1 residual failure, 2 configuration error.
inline constexpr int kExitPass = 0;
inline constexpr int kExitResidualFailure = 1;
inline constexpr int kExitConfigError = 2;

struct RunOutput {
    ResidualReport report;
    SampleTable table;  // filled by cmd_sample
    int exit_code = kExitPass;
    std::vector<std::string> files_written;
};

/// Build (or load) the profile triple, sweep the reduced residuals over the
/// xi grid, evaluate the full-system residuals at the seeded base points,
/// and optionally run the FD cross-check on the concrete block metric.
RunOutput cmd_verify(const RunConfig& rc, const RunOverrides& ov = {});

/// Tabulate (xi, phi, f, h, phi', f', h') — plus the (x, y, z) phase columns
/// when the family carries a coupling constant — at the grid resolution.
RunOutput cmd_sample(const RunConfig& rc, const RunOverrides& ov = {});

/// FD residual of the soliton equation on the concrete block metric at
/// steps {4s, 2s, s}; fits the convergence order and extrapolates.
RunOutput cmd_oracle(const RunConfig& rc, const RunOverrides& ov = {});

/// Resolved triple for a RunConfig (family built or loaded, defect applied).
ProfileTriple resolve_triple(const RunConfig& rc, std::string* note = nullptr);

/// Load an external profile table (the cmd_sample CSV format: columns
/// xi, phi, f, h, dphi, df, dh; extra columns ignored). Second derivatives
/// are estimated from the tabulated first derivatives, so residual checks
/// on external profiles use the numeric-path tolerance.
ProfileTriple load_profile_table(const std::string& path);

} // namespace soliton
