#include "daereach/job.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>

int main(int argc, char** argv)
{
    CLI::App app{"Reachability analysis and safety verification for linear DAEs"};
    daereach::JobConfig cfg;
    std::string mode = "verify";
    std::string propagation = "expm";
    std::string unsafe;
    std::string directions;

    app.add_option("--model", cfg.model_path, "model file or builtin:rotating-masses / builtin:stokes:<k>")
        ->capture_default_str();
    app.add_option("--init", cfg.init_path, "initial star file or builtin alias");
    app.add_option("--unsafe", unsafe, "unsafe set file or builtin alias");
    app.add_option("--mode", mode, "index | decouple | check-consistency | reach | verify")
        ->check(CLI::IsMember({"index", "decouple", "check-consistency", "reach", "verify"}))
        ->capture_default_str();
    app.add_option("--time-step", cfg.time_step, "step size h")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--time-bound", cfg.time_bound, "time bound T")->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--propagation", propagation, "expm | adaptive")
        ->check(CLI::IsMember({"expm", "adaptive"}))
        ->capture_default_str();
    app.add_option("--abs-tol", cfg.abs_tol, "adaptive integrator absolute tolerance")->capture_default_str();
    app.add_option("--rel-tol", cfg.rel_tol, "adaptive integrator relative tolerance")->capture_default_str();
    app.add_option("--out", cfg.output_dir, "output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "seed for generated initial sets")->capture_default_str();
    app.add_option("--directions", directions, "direction matrix file for bounds.csv");
    app.add_flag("--reach-csv", cfg.write_reach_csv, "also write reach.csv in verify mode");
    bool no_bounds = false;
    app.add_flag("--no-bounds", no_bounds, "skip bounds.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : daereach::exit_code::parse;
    }

    cfg.mode = daereach::parse_job_mode(mode);
    cfg.propagation = propagation == "adaptive" ? daereach::PropagationMode::adaptive_integrator
                                                : daereach::PropagationMode::transition_matrix;
    if (!unsafe.empty()) cfg.unsafe_path = unsafe;
    if (!directions.empty()) cfg.directions_path = directions;
    cfg.write_bounds_csv = !no_bounds;
    return daereach::run_job(cfg, std::cout, std::cerr);
}
