// SPDX-License-Identifier: Apache-2.0
//
// sixdma-cf: uplink simulator and rotation optimizer for cell-free massive
// MIMO networks with rotatable antenna surfaces
// Copyright (C) 2026 the sixdma-cf authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
//
// Command-line front end: `run` executes single runs or sweeps from a config
// file, `validate` checks a config and prints the resolved settings,
// `oracle-grid` brute-forces tiny rotation spaces as an optimizer baseline.

#include "sixdma/sixdma.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

namespace {

sixdma::ExperimentConfig load_with_overrides(const std::string& config_path,
                                             const std::string& scheme, const std::string& mode,
                                             const std::string& sweep, std::uint64_t* seed,
                                             int* workers)
{
    sixdma::ExperimentConfig cfg = sixdma::load_config(config_path);
    if (!scheme.empty())
        cfg.schemes = {sixdma::parse_scheme(scheme)};
    if (!mode.empty())
        cfg.modes = {sixdma::parse_mode(mode)};
    if (!sweep.empty())
        cfg.sweep = sixdma::parse_sweep_spec(sweep);
    if (seed)
        cfg.seed = *seed;
    if (workers)
        cfg.workers = *workers;
    cfg.validate();
    return cfg;
}

void print_config(const sixdma::ExperimentConfig& cfg)
{
    const sixdma::UserDistribution dist = cfg.user_distribution();
    std::cout << "layout: " << cfg.layout.ap_count() << " APs, " << cfg.layout.surfaces_per_ap
              << " surfaces/AP, " << cfg.layout.antennas_h << "x" << cfg.layout.antennas_v
              << " antennas/surface, track radius " << cfg.layout.track_radius
              << " m, min separation " << cfg.layout.min_separation << " rad\n";
    std::cout << "radio: wavelength " << cfg.radio.wavelength << " m, tx power "
              << sixdma::watt_to_dbm(cfg.radio.tx_power) << " dBm, noise "
              << sixdma::watt_to_dbm(cfg.radio.noise_power) << " dBm, reference gain "
              << sixdma::linear_to_db(cfg.radio.ref_gain) << " dB\n";
    std::cout << "users: mean " << cfg.mean_users << " in r <= " << cfg.region_b_radius
              << " m, density ratio " << cfg.density_ratio << " (densities "
              << dist.density_inner << " / " << dist.density_outer << " per m^2)\n";
    std::cout << "monte carlo: " << cfg.realizations << " realizations, seed " << cfg.seed
              << ", workers " << cfg.workers << "\n";
    std::cout << "schemes:";
    for (const auto s : cfg.schemes)
        std::cout << ' ' << sixdma::to_string(s);
    std::cout << "\nmodes:";
    for (const auto m : cfg.modes)
        std::cout << ' ' << sixdma::to_string(m);
    std::cout << "\noptimizer: S="
              << cfg.bo.resolved_init_samples(cfg.layout) << ", L=" << cfg.bo.iterations
              << ", restarts=" << cfg.bo.restarts << ", sweep=" << to_string(cfg.sweep.kind);
    if (!cfg.sweep.values.empty())
    {
        std::cout << " [";
        for (std::size_t i = 0; i < cfg.sweep.values.size(); ++i)
            std::cout << (i ? ", " : "") << cfg.sweep.values[i];
        std::cout << ']';
    }
    std::cout << '\n';
}

int command_run(const std::string& config_path, const std::string& scheme, const std::string& mode,
                const std::string& sweep, std::uint64_t* seed, int* workers,
                const std::string& out_dir, const std::string& format)
{
    const auto cfg = load_with_overrides(config_path, scheme, mode, sweep, seed, workers);
    const std::vector<sixdma::RunRecord> records = sixdma::run_sweep(cfg);

    int failures = 0;
    for (const auto& r : records)
    {
        std::cout << sixdma::to_string(r.scheme) << " / " << sixdma::to_string(r.mode);
        if (r.sweep_value)
            std::cout << " @ " << *r.sweep_value;
        if (r.ok())
            std::cout << ": " << std::setprecision(10) << r.objective_value << " bps/Hz ("
                      << std::setprecision(3) << r.duration_seconds << " s)\n";
        else
        {
            std::cout << ": FAILED: " << r.error << '\n';
            ++failures;
        }
    }

    const auto written = sixdma::emit_results(records, out_dir, sixdma::parse_output_format(format));
    std::cout << "wrote " << written.size() << " files under " << out_dir << '\n';
    return failures == 0 ? 0 : 1;
}

int command_validate(const std::string& config_path)
{
    const sixdma::ExperimentConfig cfg = sixdma::load_config(config_path);
    print_config(cfg);
    std::cout << "config ok\n";
    return 0;
}

// Exhaustive feasible-grid scan of the rotation space; tractable only for
// one or two rotation dimensions, which is exactly where it serves as an
// optimizer baseline.
int command_oracle_grid(const std::string& config_path, int points_per_dim,
                        const std::string& out_path)
{
    sixdma::ExperimentConfig cfg = sixdma::load_config(config_path);
    if (cfg.schemes.size() != 1 || cfg.modes.size() != 1)
        throw std::invalid_argument("oracle-grid: pick exactly one scheme and one mode.");

    const sixdma::SchemeSetup setup =
        sixdma::build_scheme(cfg.schemes.front(), cfg.layout, cfg.pattern);
    if (!setup.optimize_rotations)
        throw std::invalid_argument("oracle-grid: scheme '" +
                                    sixdma::to_string(cfg.schemes.front()) +
                                    "' has no rotations to scan.");
    const int dim = setup.layout.ap_count() * setup.layout.surfaces_per_ap;
    if (dim > 2)
        throw std::invalid_argument(
            "oracle-grid: " + std::to_string(dim) +
            " rotation dimensions; the exhaustive grid supports at most 2.");

    const sixdma::UserDistribution dist = cfg.user_distribution();
    const sixdma::RealizationSet reals = sixdma::build_realizations(
        dist, cfg.realizations, sixdma::derive_stream(cfg.seed, 1));

    const double step = sixdma::two_pi / points_per_dim;
    std::vector<double> best_flat;
    double best_value = -std::numeric_limits<double>::infinity();
    long evaluated = 0;

    std::ofstream grid_out;
    if (!out_path.empty())
    {
        grid_out.open(out_path);
        if (!grid_out)
            throw std::runtime_error("oracle-grid: cannot write '" + out_path + "'.");
        grid_out << std::setprecision(17);
        for (int d = 0; d < dim; ++d)
            grid_out << "angle_" << d << ',';
        grid_out << "avg_sum_rate_bpshz\n";
    }

    std::vector<int> idx(dim, 0);
    while (true)
    {
        std::vector<double> flat(dim);
        for (int d = 0; d < dim; ++d)
            flat[d] = idx[d] * step;
        const auto rv = sixdma::RotationVector::from_flat(flat, setup.layout.ap_count(),
                                                          setup.layout.surfaces_per_ap);
        if (sixdma::validate_rotations(rv, setup.layout.min_separation).ok)
        {
            const double value = sixdma::objective(rv, reals, setup.layout, setup.pattern,
                                                   cfg.radio, cfg.modes.front(), cfg.workers);
            ++evaluated;
            if (grid_out.is_open())
            {
                for (int d = 0; d < dim; ++d)
                    grid_out << flat[d] << ',';
                grid_out << value << '\n';
            }
            if (value > best_value)
            {
                best_value = value;
                best_flat = flat;
            }
        }

        int d = dim - 1;
        while (d >= 0 && ++idx[d] == points_per_dim)
            idx[d--] = 0;
        if (d < 0)
            break;
    }

    if (best_flat.empty())
        throw std::runtime_error("oracle-grid: no feasible grid point found.");
    std::cout << "evaluated " << evaluated << " feasible grid points\n";
    std::cout << "best value " << std::setprecision(10) << best_value << " bps/Hz at [";
    for (std::size_t d = 0; d < best_flat.size(); ++d)
        std::cout << (d ? ", " : "") << best_flat[d];
    std::cout << "] rad\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Uplink simulator and rotation optimizer for cell-free networks with "
                 "rotatable antenna surfaces"};
    app.require_subcommand(1);

    std::string config_path, scheme, mode, sweep, out_dir = "results", format = "both";
    std::uint64_t seed = 0;
    int workers = 0;
    bool seed_set = false, workers_set = false;

    auto* run = app.add_subcommand("run", "Execute a single run or a sweep from a config file");
    run->add_option("--config", config_path, "Config file path")->required();
    run->add_option("--scheme", scheme, "Override the scheme list with one scheme");
    run->add_option("--mode", mode, "Override the mode list (cmmse|lmmse)");
    run->add_option("--sweep", sweep, "Override sweep, e.g. density_ratio=1,2,5,10");
    run->add_option("--seed", seed, "Override the master seed")->each([&](const std::string&) {
        seed_set = true;
    });
    run->add_option("--workers", workers, "Override worker threads (0 = all)")
        ->each([&](const std::string&) { workers_set = true; });
    run->add_option("--out", out_dir, "Output directory (default: results)");
    run->add_option("--format", format, "Output format: csv|json|both (default: both)");

    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a config file and print the "
                                                    "resolved settings");
    validate->add_option("--config", validate_path, "Config file path")->required();

    std::string grid_config, grid_out;
    int grid_points = 64;
    auto* grid = app.add_subcommand("oracle-grid", "Brute-force feasible-grid baseline for "
                                                   "tiny rotation spaces");
    grid->add_option("--config", grid_config, "Config file path")->required();
    grid->add_option("--grid-points", grid_points, "Grid points per dimension (default 64)")
        ->check(CLI::PositiveNumber);
    grid->add_option("--out", grid_out, "Optional CSV path for the full grid");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (run->parsed())
            return command_run(config_path, scheme, mode, sweep, seed_set ? &seed : nullptr,
                               workers_set ? &workers : nullptr, out_dir, format);
        if (validate->parsed())
            return command_validate(validate_path);
        if (grid->parsed())
            return command_oracle_grid(grid_config, grid_points, grid_out);
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
