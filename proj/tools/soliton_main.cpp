// Command-line front end: verify / sample / oracle over a run config file.
//
//   soliton verify --config run.cfg --out results/
//   soliton sample --config run.cfg --format csv
//   soliton oracle --config run.cfg --fd-step 1e-3
//   soliton presets
//
// Exit codes: 0 pass, 1 residual failure, 2 configuration error.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "soliton/run.hpp"
#include "soliton/version.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    soliton::RunOverrides ov;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_fd_step) {
    cmd->add_option("--config", args.config_path, "run configuration file")->required();
    auto* out = cmd->add_option("--out", "output directory (default: current)");
    out->each([&args](const std::string& v) { args.ov.out_dir = v; });
    auto* fmt = cmd->add_option("--format", "output format: csv or json");
    fmt->each([&args](const std::string& v) { args.ov.format = v; });
    auto* tol = cmd->add_option("--tolerance", "override every equation tolerance");
    tol->each([&args](const std::string& v) { args.ov.tolerance = std::stod(v); });
    if (with_fd_step) {
        auto* fd = cmd->add_option("--fd-step", "finest finite-difference step");
        fd->each([&args](const std::string& v) { args.ov.fd_step = std::stod(v); });
    }
    cmd->add_flag("--quiet", args.ov.quiet, "suppress progress output");
}

int dispatch(const std::string& command, const CommonArgs& args) {
    soliton::RunConfig rc = soliton::load_run_config(args.config_path);
    soliton::RunOutput out;
    if (command == "verify") out = soliton::cmd_verify(rc, args.ov);
    else if (command == "sample") out = soliton::cmd_sample(rc, args.ov);
    else out = soliton::cmd_oracle(rc, args.ov);
    if (!args.ov.quiet)
        for (const std::string& f : out.files_written) std::printf("wrote %s\n", f.c_str());
    return out.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(soliton::kToolName) +
                 " - warped-product gradient Ricci soliton toolkit"};
    app.set_version_flag("--version", soliton::kToolVersion);
    app.require_subcommand(1);

    CommonArgs verify_args, sample_args, oracle_args;
    CLI::App* verify = app.add_subcommand(
        "verify", "build a solution family and run its residual suites");
    add_common(verify, verify_args, /*with_fd_step=*/true);
    CLI::App* sample = app.add_subcommand(
        "sample", "tabulate (xi, phi, f, h, derivatives) to CSV or JSON");
    add_common(sample, sample_args, /*with_fd_step=*/false);
    CLI::App* oracle = app.add_subcommand(
        "oracle", "finite-difference convergence study on the block metric");
    add_common(oracle, oracle_args, /*with_fd_step=*/true);
    CLI::App* list = app.add_subcommand("presets", "list the named presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? soliton::kExitConfigError : 0;
    }

    try {
        if (list->parsed()) {
            for (const auto& p : soliton::presets())
                std::printf("%-24s %s\n", p.name.c_str(), p.description.c_str());
            return 0;
        }
        if (verify->parsed()) return dispatch("verify", verify_args);
        if (sample->parsed()) return dispatch("sample", sample_args);
        return dispatch("oracle", oracle_args);
    } catch (const soliton::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return soliton::kExitConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return soliton::kExitResidualFailure;
    }
}
