#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qcycle/config.hpp"
#include "qcycle/csv.hpp"
#include "qcycle/scan.hpp"
#include "qcycle/trajectory.hpp"
#include "qcycle/validate.hpp"

namespace {

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    bool emit_plot_script = false;
};

qcycle::ParsedConfig load_or_default(const std::string& path) {
    if (path.empty())
        return qcycle::parse_config("");
    return qcycle::load_config_file(path);
}

void write_outputs(const std::filesystem::path& dir, const std::string& csv_name,
                   const std::string& csv, const qcycle::ParsedConfig& cfg,
                   const std::string& plot_script) {
    std::filesystem::create_directories(dir);
    qcycle::write_text_file((dir / csv_name).string(), csv);
    qcycle::write_text_file((dir / "resolved.cfg").string(),
                            qcycle::emit_config(cfg.params, cfg.scan));
    if (!plot_script.empty())
        qcycle::write_text_file((dir / "plot.gp").string(), plot_script);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Q-cycle proton pump simulator: Pauli master equation coupled to "
                 "Langevin shuttle diffusion"};
    app.require_subcommand(1);

    CommonOptions run_opts, scan_opts;
    std::uint64_t seed = 0;
    bool seed_given = false;
    double t_end = 0.0, dt = 0.0;
    bool t_end_given = false, dt_given = false;
    int trajectories = 0;
    int sample_every = 0;
    int threads = 0;

    CLI::App* run_cmd = app.add_subcommand("run", "integrate one trajectory and write its CSV");
    run_cmd->add_option("--config", run_opts.config_path, "configuration file");
    run_cmd->add_option("--seed", seed, "trajectory seed")->each([&](const std::string&) {
        seed_given = true;
    });
    run_cmd->add_option("--out", run_opts.out_dir, "output directory");
    run_cmd->add_option("--t-end", t_end, "trajectory length in us")
        ->each([&](const std::string&) { t_end_given = true; });
    run_cmd->add_option("--dt", dt, "timestep in us")->each([&](const std::string&) {
        dt_given = true;
    });
    run_cmd->add_option("--sample-every", sample_every, "series sampling stride in steps");
    run_cmd->add_flag("--emit-plot-script", run_opts.emit_plot_script,
                      "also write a gnuplot script");

    CLI::App* scan_cmd = app.add_subcommand("scan", "run a parameter scan and write its CSV");
    scan_cmd->add_option("--config", scan_opts.config_path, "configuration file");
    scan_cmd->add_option("--seed", seed, "master seed")->each([&](const std::string&) {
        seed_given = true;
    });
    scan_cmd->add_option("--out", scan_opts.out_dir, "output directory");
    scan_cmd->add_option("--trajectories", trajectories, "trajectories per grid point");
    scan_cmd->add_option("--t-end", t_end, "trajectory length in us")
        ->each([&](const std::string&) { t_end_given = true; });
    scan_cmd->add_option("--dt", dt, "timestep in us")->each([&](const std::string&) {
        dt_given = true;
    });
    scan_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    scan_cmd->add_flag("--emit-plot-script", scan_opts.emit_plot_script,
                       "also write a gnuplot script");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run every model property check");
    validate_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) {
            qcycle::ParsedConfig cfg = load_or_default(run_opts.config_path);
            if (seed_given)
                cfg.scan.master_seed = seed;
            if (t_end_given)
                cfg.scan.t_end = t_end;
            if (dt_given)
                cfg.scan.dt = dt;
            if (sample_every > 0)
                cfg.scan.sample_every = sample_every;
            const qcycle::TrajectoryResult result =
                qcycle::run_trajectory(cfg.params, cfg.scan.master_seed, cfg.scan.t_end,
                                       cfg.scan.dt, cfg.scan.sample_every);
            write_outputs(run_opts.out_dir, "trajectory.csv", qcycle::trajectory_csv(result),
                          cfg,
                          run_opts.emit_plot_script
                              ? qcycle::trajectory_plot_script("trajectory.csv")
                              : "");
            if (result.qy_defined())
                std::cout << "n_e = " << result.counters.n_e
                          << ", N_p = " << result.counters.N_p << ", QY = " << result.qy()
                          << "\n";
            else
                std::cout << "n_e = " << result.counters.n_e
                          << ", N_p = " << result.counters.N_p << ", QY undefined\n";
            return 0;
        }
        if (scan_cmd->parsed()) {
            qcycle::ParsedConfig cfg = load_or_default(scan_opts.config_path);
            if (seed_given)
                cfg.scan.master_seed = seed;
            if (t_end_given)
                cfg.scan.t_end = t_end;
            if (dt_given)
                cfg.scan.dt = dt;
            if (trajectories > 0)
                cfg.scan.trajectories = trajectories;
            const qcycle::ScanResult result = qcycle::run_scan(cfg.scan, cfg.params, threads);
            write_outputs(scan_opts.out_dir, "scan.csv", qcycle::scan_csv(result), cfg,
                          scan_opts.emit_plot_script ? qcycle::scan_plot_script("scan.csv")
                                                     : "");
            std::cout << "scan of " << result.points.size() << " points written\n";
            return 0;
        }
        return qcycle::run_validation(std::cout, threads) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
