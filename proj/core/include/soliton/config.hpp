#pragma once

#include <string>

#include "soliton/solutions.hpp"

namespace soliton {

/// Sweep specification: xi sampling window for the reduced residuals plus
/// the number of (seeded) random base points for the full-system residuals.
struct GridSpec {
    double xi_min = 0.0;
    double xi_max = 1.0;
    int samples = 200;
    int base_points = 16;
    unsigned seed = 42;
};

struct ToleranceSpec {
    double ode = 1e-9;          // analytic-derivative profiles
    double ode_numeric = 1e-6;  // integrator/quadrature-backed profiles
    double pde = 1e-8;
    double oracle = 5e-6;
};

struct OracleSpec {
    bool enabled = false;
    double fd_step = 1e-3;
    int fd_order = 2;
};

struct OutputSpec {
    std::string format = "json";  // json | csv
};

/// A fully resolved run: problem constants, invariant direction, solution
/// family, sweep grid, tolerances and output options.
struct RunConfig {
    SolitonConfig config;
    Vector alpha;
    FamilySpec family;
    GridSpec grid;
    ToleranceSpec tol;
    OracleSpec oracle;
    DefectSpec defect;
    OutputSpec output;

    explicit RunConfig(SolitonConfig c) : config(std::move(c)) {}
};

/// Parse the structured key-value config text (see README for the schema:
/// [config], [direction], [family], [grid], [tolerances], [oracle],
/// [defect], [output] sections). Diagnostics carry the [section].key path.
RunConfig parse_run_config(const std::string& text);

RunConfig load_run_config(const std::string& path);

/// Emit config text that reparses to a bit-identical RunConfig
/// (floats printed with 17 significant digits).
std::string serialize_run_config(const RunConfig& rc);

/// RunConfig for a named preset (family resolved, preset's default grid).
RunConfig preset_run_config(const Preset& preset);

/// Cross-field validation shared by the parser and the run layer; throws
/// ConfigError. In particular a null direction with rho != 0 or
/// lambda_F != 0 is rejected here: that combination admits no soliton.
void validate_run_config(const RunConfig& rc);

} // namespace soliton
