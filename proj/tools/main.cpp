// qregen: storage-repair tradeoff calculator for (n,k,d) distributed
// storage, classical and entanglement-assisted, with flow-graph
// verification, cluster simulation, and superdense-coding tables.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "qregen/json_io.hpp"

int main(int argc, char** argv) {
    using namespace qregen::cli;

    CLI::App app{"storage-repair bandwidth tradeoffs for (n,k,d) systems, "
                 "classical and entanglement-assisted"};
    app.set_version_flag("--version", std::string(qregen::kArtifactVersion));
    app.require_subcommand(1);

    PointsOptions points;
    auto* p_points = app.add_subcommand(
        "points", "extremal operating points MSR, MBR, QMSR, QMBR");
    p_points->add_option("--n", points.n, "number of storage nodes")->required();
    p_points->add_option("--k", points.k, "nodes needed to retrieve the file")->required();
    p_points->add_option("--d", points.d, "helpers contacted per repair")->required();
    p_points->add_option("--B", points.file_size, "file size in dits, as a rational")
        ->capture_default_str();
    p_points->add_option("--format", points.format, "text | json")->capture_default_str();

    CurveOptions curve;
    auto* p_curve = app.add_subcommand(
        "curve", "storage vs repair-bandwidth tradeoff curve");
    p_curve->add_option("--n", curve.n, "number of storage nodes")->required();
    p_curve->add_option("--k", curve.k, "nodes needed to retrieve the file")->required();
    p_curve->add_option("--d", curve.d, "helpers contacted per repair")->required();
    p_curve->add_option("--B", curve.file_size, "file size in dits, as a rational")
        ->capture_default_str();
    p_curve->add_option("--mode", curve.mode, "classical | quantum | both")
        ->capture_default_str();
    p_curve->add_option("--samples", curve.samples,
                        "interpolated rows per curve segment")->capture_default_str();
    p_curve->add_option("--format", curve.format, "csv | json")->capture_default_str();
    p_curve->add_option("--output", curve.output, "write data to this file");
    p_curve->add_option("--gnuplot", curve.gnuplot,
                        "write a gnuplot script here (needs --output)");

    RatioOptions ratio;
    auto* p_ratio = app.add_subcommand(
        "ratio", "quantum/classical per-helper bandwidth ratio sweep over d");
    p_ratio->add_option("--k", ratio.k, "nodes needed to retrieve the file")->required();
    p_ratio->add_option("--d-min", ratio.d_min, "first d of the sweep")->required();
    p_ratio->add_option("--d-max", ratio.d_max, "last d of the sweep")->required();
    p_ratio->add_option("--metric", ratio.metric, "msr | mbr")->capture_default_str();
    p_ratio->add_option("--format", ratio.format, "csv | json")->capture_default_str();
    p_ratio->add_option("--output", ratio.output, "write data to this file");
    p_ratio->add_option("--gnuplot", ratio.gnuplot,
                        "write a gnuplot script here (needs --output)");

    VerifyOptions verify;
    auto* p_verify = app.add_subcommand(
        "verify", "check closed-form capacities against flow-graph min cuts");
    p_verify->add_option("--n-max", verify.n_max, "sweep all (n,k,d) with 3 <= n <= n-max")
        ->required();
    p_verify->add_option("--trials", verify.trials,
                         "random evolutions per configuration")->capture_default_str();
    p_verify->add_option("--seed", verify.seed, "base seed for the random evolutions")
        ->required();
    p_verify->add_option("--alpha-grid", verify.alpha_grid,
                         "storage grid (rationals; default 1 2 3 4)");
    p_verify->add_option("--beta-grid", verify.beta_grid,
                         "bandwidth grid (rationals; default 1/4 1/2 1 2)");
    p_verify->add_option("--vertex-cap", verify.vertex_cap,
                         "skip configurations whose graphs exceed this many vertices")
        ->capture_default_str();
    p_verify->add_option("--format", verify.format, "json | text")->capture_default_str();
    p_verify->add_option("--output", verify.output, "write the report to this file");

    SimulateOptions simulate;
    auto* p_simulate = app.add_subcommand(
        "simulate", "replay a failure/repair script from a JSON config");
    p_simulate->add_option("--config", simulate.config_path, "config JSON path")->required();
    p_simulate->add_option("--seed", simulate.seed,
                           "seed for random helper and subset choices")->required();
    p_simulate->add_option("--output", simulate.output, "write the log to this file");

    SdcOptions sdc;
    auto* p_sdc = app.add_subcommand(
        "sdc", "superdense-coding outcome tables (exact state-vector simulation)");
    p_sdc->add_option("--q", sdc.q, "qudit dimension")->required();
    p_sdc->add_option("--mode", sdc.mode, "receiver | two-sender")->capture_default_str();
    p_sdc->add_option("--format", sdc.format, "csv | json")->capture_default_str();
    p_sdc->add_option("--output", sdc.output, "write the table to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (*p_points) return cmd_points(points, std::cout, std::cerr);
    if (*p_curve) return cmd_curve(curve, std::cout, std::cerr);
    if (*p_ratio) return cmd_ratio(ratio, std::cout, std::cerr);
    if (*p_verify) return cmd_verify(verify, std::cout, std::cerr);
    if (*p_simulate) return cmd_simulate(simulate, std::cout, std::cerr);
    if (*p_sdc) return cmd_sdc(sdc, std::cout, std::cerr);
    return kExitUsage;  // unreachable: require_subcommand(1)
}
