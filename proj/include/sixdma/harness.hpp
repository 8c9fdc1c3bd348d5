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

#pragma once

#include "sixdma/config.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixdma {

// ------------------------------------------------------------------------
// Run records
// ------------------------------------------------------------------------

/// One complete experiment run. The embedded config snapshot is normalized
/// to exactly this run (single scheme, single mode, no sweep axis, effective
/// seed), so feeding it back through run_single reproduces objective_value
/// bit-exactly.
struct RunRecord
{
    ExperimentConfig config;
    SchemeKind scheme = SchemeKind::CellFree6DMADirectional;
    CombineMode mode = CombineMode::Cmmse;
    std::optional<double> sweep_value;
    std::uint64_t run_seed = 0;

    bool optimized = false;
    NetworkLayout scheme_layout; // derived layout the run actually simulated
    RotationVector rotations;    // optimized or fixed, whichever applies
    double objective_value = std::numeric_limits<double>::quiet_NaN();
    std::vector<TracePoint> trace;
    std::vector<double> per_realization_rates;

    double duration_seconds = 0.0;
    std::string version = version_string;
    std::string error; // non-empty marks a failed run

    bool ok() const { return error.empty(); }
};

inline void to_json(nlohmann::json& j, const TracePoint& t)
{
    j = {{"index", t.index},
         {"initial", t.initial},
         {"angles", t.rotation.flat()},
         {"value", t.value},
         {"ei", t.ei}};
}

inline void to_json(nlohmann::json& j, const RunRecord& r)
{
    j = {{"config", r.config},
         {"scheme", to_string(r.scheme)},
         {"mode", to_string(r.mode)},
         {"run_seed", r.run_seed},
         {"optimized", r.optimized},
         {"scheme_layout", r.scheme_layout},
         {"rotation_angles", r.rotations.flat()},
         {"objective_value", r.objective_value},
         {"trace", r.trace},
         {"per_realization_rates", r.per_realization_rates},
         {"duration_seconds", r.duration_seconds},
         {"version", r.version},
         {"error", r.error}};
    if (r.sweep_value)
        j["sweep_value"] = *r.sweep_value;
    else
        j["sweep_value"] = nullptr;
}

// ------------------------------------------------------------------------
// Single runs and sweeps
// ------------------------------------------------------------------------

/// Execute one run end to end: freeze the realization set, build the scheme,
/// optimize the rotations (or evaluate the fixed ones), and collect the
/// per-realization rates at the returned point. The realization set and the
/// optimizer consume independent substreams of the config seed.
inline RunRecord run_single(const ExperimentConfig& config)
{
    config.validate();
    if (config.schemes.size() != 1 || config.modes.size() != 1)
        throw std::invalid_argument(
            "run_single: config must name exactly one scheme and one mode "
            "(lists belong to sweeps).");

    RunRecord record;
    record.config = config;
    record.config.sweep = SweepAxis{};
    record.scheme = config.schemes.front();
    record.mode = config.modes.front();
    record.run_seed = config.seed;

    const auto start = std::chrono::steady_clock::now();

    const UserDistribution dist = config.user_distribution();
    const RealizationSet reals =
        build_realizations(dist, config.realizations, derive_stream(config.seed, 1));
    const SchemeSetup setup = build_scheme(record.scheme, config.layout, config.pattern);
    record.scheme_layout = setup.layout;

    const auto evaluate = [&](const RotationVector& rv) {
        return objective(rv, reals, setup.layout, setup.pattern, config.radio, record.mode,
                         config.workers);
    };

    if (setup.optimize_rotations)
    {
        const OptimizeResult result =
            optimize(evaluate, setup.layout, config.bo, derive_stream(config.seed, 2));
        record.optimized = true;
        record.rotations = result.best_rotation;
        record.objective_value = result.best_value;
        record.trace = result.trace;
    }
    else
    {
        record.optimized = false;
        record.rotations = setup.fixed_rotations;
        record.objective_value = evaluate(setup.fixed_rotations);
        record.trace = {TracePoint{0, true, setup.fixed_rotations, record.objective_value, 0.0}};
    }

    record.per_realization_rates = realization_rates(
        record.rotations, reals, setup.layout, setup.pattern, config.radio, record.mode,
        config.workers);

    record.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

/// Cross product of sweep values x schemes x modes, one record each. All
/// runs at the same sweep value share one derived sub-seed (hence the same
/// frozen user drops), which keeps scheme comparisons paired. Failures are
/// recorded and the sweep continues.
inline std::vector<RunRecord> run_sweep(const ExperimentConfig& config)
{
    config.validate();

    std::vector<std::optional<double>> points;
    if (config.sweep.kind == SweepAxis::Kind::None)
        points.push_back(std::nullopt);
    else
        for (const double v : config.sweep.values)
            points.emplace_back(v);

    std::vector<RunRecord> records;
    for (std::size_t p = 0; p < points.size(); ++p)
    {
        ExperimentConfig point_config = config;
        point_config.sweep = SweepAxis{};
        if (points[p])
        {
            point_config.seed = derive_stream(config.seed, static_cast<std::uint64_t>(p));
            if (config.sweep.kind == SweepAxis::Kind::DensityRatio)
                point_config.density_ratio = *points[p];
            else
                point_config.mean_users = *points[p];
        }

        for (const SchemeKind scheme : config.schemes)
        {
            for (const CombineMode mode : config.modes)
            {
                ExperimentConfig run_config = point_config;
                run_config.schemes = {scheme};
                run_config.modes = {mode};

                RunRecord record;
                try
                {
                    record = run_single(run_config);
                }
                catch (const std::exception& e)
                {
                    record.config = run_config;
                    record.scheme = scheme;
                    record.mode = mode;
                    record.run_seed = run_config.seed;
                    record.error = e.what();
                }
                record.sweep_value = points[p];
                records.push_back(std::move(record));
            }
        }
    }
    return records;
}

// ------------------------------------------------------------------------
// Result emission
// ------------------------------------------------------------------------

enum class OutputFormat
{
    Csv,  // summary + per-run trace and rotation tables
    Json, // summary + one self-contained record document per run
    Both
};

inline OutputFormat parse_output_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    if (name == "both")
        return OutputFormat::Both;
    throw std::invalid_argument("parse_output_format: unknown format '" + name +
                                "' (expected csv, json, or both).");
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("emit_results: cannot write '" + path.string() + "'.");
    out << std::setprecision(17);
    return out;
}

inline std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

} // namespace detail

/// Write the summary table plus per-run artifacts into `dir`; returns the
/// paths written. Failed runs appear only in their JSON records (the rate
/// column would be meaningless).
inline std::vector<std::filesystem::path>
emit_results(const std::vector<RunRecord>& records, const std::filesystem::path& dir,
             OutputFormat format = OutputFormat::Both)
{
    if (records.empty())
        throw std::invalid_argument("emit_results: no records to write.");
    std::filesystem::create_directories(dir);

    std::vector<std::filesystem::path> written;
    const auto summary_path = dir / "summary.csv";
    {
        auto out = detail::open_output(summary_path);
        out << "sweep_value,scheme,mode,avg_sum_rate_bpshz,seed\n";
        for (const auto& r : records)
        {
            if (!r.ok())
                continue;
            out << (r.sweep_value ? detail::format_double(*r.sweep_value) : std::string{}) << ','
                << to_string(r.scheme) << ',' << to_string(r.mode) << ','
                << detail::format_double(r.objective_value) << ',' << r.run_seed << '\n';
        }
    }
    written.push_back(summary_path);

    for (std::size_t k = 0; k < records.size(); ++k)
    {
        const RunRecord& r = records[k];
        const std::string stem =
            "run_" + std::to_string(k) + "_" + to_string(r.scheme) + "_" + to_string(r.mode);

        if (format == OutputFormat::Json || format == OutputFormat::Both)
        {
            const auto path = dir / (stem + ".json");
            auto out = detail::open_output(path);
            out << nlohmann::json(r).dump(2) << '\n';
            written.push_back(path);
        }
        if (!r.ok() || format == OutputFormat::Json)
            continue;

        {
            // Rotation diagram: where each surface sits and points.
            const auto path = dir / (stem + "_rotations.csv");
            auto out = detail::open_output(path);
            out << "ap,ap_x,ap_y,surface,angle_rad,ray_x,ray_y\n";
            const NetworkLayout& layout = r.scheme_layout;
            for (int m = 0; m < r.rotations.ap_count; ++m)
            {
                const Vec2 pos = m < layout.ap_count() ? layout.ap_positions[m] : Vec2{0.0, 0.0};
                for (int b = 0; b < r.rotations.surfaces_per_ap; ++b)
                {
                    const double angle = r.rotations.at(m, b);
                    out << m << ',' << detail::format_double(pos.x) << ','
                        << detail::format_double(pos.y) << ',' << b << ','
                        << detail::format_double(angle) << ','
                        << detail::format_double(std::cos(angle)) << ','
                        << detail::format_double(std::sin(angle)) << '\n';
                }
            }
            written.push_back(path);
        }
        {
            const auto path = dir / (stem + "_trace.csv");
            auto out = detail::open_output(path);
            const int dim = r.rotations.ap_count * r.rotations.surfaces_per_ap;
            out << "index,initial,value_bpshz,ei";
            for (int d = 0; d < dim; ++d)
                out << ",angle_" << d;
            out << '\n';
            for (const auto& t : r.trace)
            {
                out << t.index << ',' << (t.initial ? 1 : 0) << ','
                    << detail::format_double(t.value) << ',' << detail::format_double(t.ei);
                for (const double a : t.rotation.flat())
                    out << ',' << detail::format_double(a);
                out << '\n';
            }
            written.push_back(path);
        }
    }
    return written;
}

} // namespace sixdma
