#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fefbound/cli.hpp"

namespace fefbound::cli {

namespace {

void add_state_options(CLI::App& cmd, StateSpec& spec) {
    auto* state = cmd.add_option("--state", spec.file, "JSON state file {\"dim\", \"re\", \"im\"}");
    auto* family = cmd.add_option("--family", spec.family, "Built-in state family")
                       ->check(CLI::IsMember(kFamilies));
    state->excludes(family);
    cmd.add_option("--d", spec.d, "Subsystem dimension")->check(CLI::PositiveNumber);
    cmd.add_option("--p", spec.p, "Isotropic mixing parameter");
    cmd.add_option("--a", spec.a, "Horodecki parameter in [0, 1]");
    cmd.add_flag("--allow-unphysical", spec.allow_unphysical,
                 "Accept operators that fail the density-matrix checks");
}

void add_optimizer_options(CLI::App& cmd, OptimizerOptions& opts) {
    cmd.add_option("--restarts", opts.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    cmd.add_option("--max-iter", opts.max_iterations, "Iterations per restart")->check(CLI::PositiveNumber);
    cmd.add_option("--tol", opts.tolerance, "Objective-change stopping tolerance");
}

void write_output(const std::string& path, const std::string& text) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw IoError("cannot write " + path);
    file << text;
    if (!file) throw IoError("failed while writing " + path);
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Principal-basis decompositions and fully entangled fraction bounds", "fefbound"};
    app.require_subcommand(1);

    StateSpec state;
    OptimizerOptions opts;
    std::uint64_t seed = 1;
    std::optional<std::string> out_path;
    std::string format = "csv";

    auto* bound = app.add_subcommand("bound", "Evaluate every FEF bound and the numeric lower estimate");
    add_state_options(*bound, state);
    add_optimizer_options(*bound, opts);
    bound->add_option("--seed", seed, "Seed for the random family and the optimizer");
    bound->add_option("--out", out_path, "Also write the report as JSON");

    SweepSpec sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate bounds over a one-parameter family");
    add_state_options(*sweep_cmd, sweep.base);
    add_optimizer_options(*sweep_cmd, sweep.optimizer);
    sweep_cmd->add_option("--seed", seed, "Seed for the optimizer");
    sweep_cmd->add_option("--param", sweep.parameter, "Swept parameter (p or a)")->required();
    sweep_cmd->add_option("--from", sweep.from, "First grid value")->required();
    sweep_cmd->add_option("--to", sweep.to, "Last grid value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Grid points, endpoints included")->required();
    sweep_cmd->add_option("--out", out_path, "Output file (stdout when omitted)");
    sweep_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    int d_max = 4;
    auto* verify = app.add_subcommand("verify", "Check the basis identities and report findings");
    verify->add_option("--d-max", d_max, "Largest dimension to check (2..8)")->check(CLI::Range(2, 8));
    add_optimizer_options(*verify, opts);
    verify->add_option("--seed", seed, "Seed for the optimizer");

    std::string basis = "principal";
    auto* decompose = app.add_subcommand("decompose", "List principal or Bloch coefficients");
    add_state_options(*decompose, state);
    decompose->add_option("--seed", seed, "Seed for the random family");
    decompose->add_option("--basis", basis, "principal or bloch")->check(CLI::IsMember({"principal", "bloch"}));
    decompose->add_option("--out", out_path, "Write the listing to a file");

    auto* exporter = app.add_subcommand("export", "Write a built-in state as a JSON state file");
    add_state_options(*exporter, state);
    exporter->add_option("--seed", seed, "Seed for the random family");
    exporter->add_option("--out", out_path, "Output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    state.seed = seed;
    sweep.base.seed = seed;
    opts.seed = seed;
    sweep.optimizer.seed = seed;

    try {
        if (bound->parsed()) {
            const auto resolved = resolve_state(state);
            const auto report = bound_audit(resolved.state, opts, resolved.label);
            std::optional<double> printed;
            if (state.family == std::optional<std::string>("horodecki")) printed = horodecki_printed_bound(state.a);
            out << render_bound_report(report, printed);
            if (out_path) write_output(*out_path, bound_report_to_json(report, printed));
        } else if (sweep_cmd->parsed()) {
            const auto rows = run_sweep(sweep);
            const std::string text = format == "json" ? sweep_to_json(rows) : sweep_to_csv(rows);
            if (out_path) {
                write_output(*out_path, text);
            } else {
                out << text;
            }
        } else if (verify->parsed()) {
            const auto report = run_verify(d_max, opts);
            out << render_verify_report(report);
            return report.all_passed() ? kExitOk : kExitUsage;
        } else if (decompose->parsed()) {
            const auto resolved = resolve_state(state);
            const std::string text =
                decompose_listing(resolved.state, basis == "bloch" ? Basis::bloch : Basis::principal);
            if (out_path) {
                write_output(*out_path, text);
            } else {
                out << text;
            }
        } else if (exporter->parsed()) {
            const auto resolved = resolve_state(state);
            if (out_path) {
                write_state_file(*out_path, resolved.state);
            } else {
                out << state_to_json(resolved.state);
            }
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const PhysicalityError& e) {
        err << "error: " << e.what() << "\n";
        return kExitPhysicality;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitOk;
}

}  // namespace fefbound::cli
