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

#include "sixdma/bayesopt.hpp"
#include "sixdma/benchmarks.hpp"
#include "sixdma/channel.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/scenario.hpp"

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixdma {

inline CombineMode parse_mode(const std::string& name)
{
    if (name == "cmmse")
        return CombineMode::Cmmse;
    if (name == "lmmse")
        return CombineMode::Lmmse;
    throw std::invalid_argument("parse_mode: unknown combining mode '" + name +
                                "' (expected cmmse or lmmse).");
}

// ------------------------------------------------------------------------
// Key-value config text
// ------------------------------------------------------------------------

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos)
        return {};
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true)
    {
        const auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

} // namespace detail

/// Parsed `key = value` text with unit-aware typed getters. Values carry
/// explicit unit suffixes: lengths in `m`, powers in `dBm`/`W`/`mW`, gains in
/// `dB`, angles in `deg`/`rad`. Every getter names the field and line in its
/// diagnostics; keys nobody reads are reported as unknown.
class ConfigFile
{
  public:
    static ConfigFile parse(std::istream& in, const std::string& source_name)
    {
        ConfigFile cfg;
        cfg.source_ = source_name;
        std::string line;
        int number = 0;
        while (std::getline(in, line))
        {
            ++number;
            const auto hash = line.find('#');
            if (hash != std::string::npos)
                line.erase(hash);
            line = detail::trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::runtime_error(cfg.source_ + ":" + std::to_string(number) +
                                         ": expected 'key = value', got '" + line + "'.");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty())
                throw std::runtime_error(cfg.source_ + ":" + std::to_string(number) +
                                         ": empty key.");
            if (cfg.entries_.count(key))
                throw std::runtime_error(cfg.source_ + ":" + std::to_string(number) +
                                         ": duplicate key '" + key + "'.");
            cfg.entries_[key] = Entry{value, number, false};
        }
        return cfg;
    }

    static ConfigFile load(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("config: cannot open '" + path + "'.");
        return parse(in, path);
    }

    bool has(const std::string& key) const { return entries_.count(key) > 0; }

    std::string get_string(const std::string& key, const std::string& fallback)
    {
        const Entry* e = use(key);
        return e ? e->value : fallback;
    }

    std::vector<std::string> get_string_list(const std::string& key,
                                             const std::vector<std::string>& fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        auto parts = detail::split(e->value, ',');
        for (const auto& p : parts)
            if (p.empty())
                fail(key, *e, "empty list element");
        return parts;
    }

    bool get_bool(const std::string& key, bool fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        if (e->value == "true" || e->value == "yes" || e->value == "1")
            return true;
        if (e->value == "false" || e->value == "no" || e->value == "0")
            return false;
        fail(key, *e, "expected a boolean (true/false)");
    }

    long get_integer(const std::string& key, long fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        return parse_integer(key, *e, e->value);
    }

    std::uint64_t get_seed(const std::string& key, std::uint64_t fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        if (!e->value.empty() && e->value.front() == '-')
            fail(key, *e, "expected an unsigned integer");
        try
        {
            std::size_t pos = 0;
            const std::uint64_t v = std::stoull(e->value, &pos);
            if (pos != e->value.size())
                fail(key, *e, "trailing characters after integer");
            return v;
        }
        catch (const std::logic_error&)
        {
            fail(key, *e, "expected an unsigned integer");
        }
    }

    /// Bare number, no unit allowed.
    double get_number(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        return parse_quantity(key, *e, e->value, Unit::None);
    }

    /// Meters; accepts `<x> m` or a bare number.
    double get_length(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        return e ? parse_quantity(key, *e, e->value, Unit::Length) : fallback;
    }

    /// Radians; accepts `<x> rad`, `<x> deg`, or a bare number (radians).
    double get_angle(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        return e ? parse_quantity(key, *e, e->value, Unit::Angle) : fallback;
    }

    std::vector<double> get_angle_list(const std::string& key, const std::vector<double>& fallback)
    {
        const Entry* e = use(key);
        if (!e)
            return fallback;
        std::vector<double> out;
        for (const auto& part : detail::split(e->value, ','))
            out.push_back(parse_quantity(key, *e, part, Unit::Angle));
        return out;
    }

    /// Watts; accepts `<x> dBm`, `<x> W`, `<x> mW`, or a bare number (watts).
    double get_power_watt(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        return e ? parse_quantity(key, *e, e->value, Unit::Power) : fallback;
    }

    /// Linear power ratio; accepts `<x> dB` or a bare number (linear).
    double get_gain_linear(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        return e ? parse_quantity(key, *e, e->value, Unit::GainToLinear) : fallback;
    }

    /// Decibels; accepts `<x> dB` or a bare number (already dB).
    double get_db(const std::string& key, double fallback)
    {
        const Entry* e = use(key);
        return e ? parse_quantity(key, *e, e->value, Unit::GainInDb) : fallback;
    }

    /// Call after all fields were read; rejects keys nothing consumed.
    void reject_unknown_keys() const
    {
        for (const auto& [key, entry] : entries_)
            if (!entry.used)
                throw std::runtime_error(source_ + ":" + std::to_string(entry.line) +
                                         ": unknown key '" + key + "'.");
    }

  private:
    struct Entry
    {
        std::string value;
        int line = 0;
        bool used = false;
    };

    enum class Unit
    {
        None,
        Length,
        Angle,
        Power,
        GainToLinear,
        GainInDb
    };

    const Entry* use(const std::string& key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        it->second.used = true;
        return &it->second;
    }

    [[noreturn]] void fail(const std::string& key, const Entry& e, const std::string& what) const
    {
        throw std::runtime_error(source_ + ":" + std::to_string(e.line) + ": field '" + key +
                                 "': " + what + " (got '" + e.value + "').");
    }

    long parse_integer(const std::string& key, const Entry& e, const std::string& text) const
    {
        try
        {
            std::size_t pos = 0;
            const long v = std::stol(text, &pos);
            if (pos != text.size())
                fail(key, e, "trailing characters after integer");
            return v;
        }
        catch (const std::logic_error&)
        {
            fail(key, e, "expected an integer");
        }
    }

    double parse_quantity(const std::string& key, const Entry& e, const std::string& text,
                          Unit unit) const
    {
        std::istringstream is(text);
        double magnitude = 0.0;
        std::string suffix, extra;
        if (!(is >> magnitude))
            fail(key, e, "expected a number");
        is >> suffix;
        if (is >> extra)
            fail(key, e, "too many tokens");

        switch (unit)
        {
        case Unit::None:
            if (!suffix.empty())
                fail(key, e, "no unit allowed here, found '" + suffix + "'");
            return magnitude;
        case Unit::Length:
            if (suffix.empty() || suffix == "m")
                return magnitude;
            break;
        case Unit::Angle:
            if (suffix.empty() || suffix == "rad")
                return magnitude;
            if (suffix == "deg")
                return deg_to_rad(magnitude);
            break;
        case Unit::Power:
            if (suffix.empty() || suffix == "W")
                return magnitude;
            if (suffix == "mW")
                return magnitude * 1.0e-3;
            if (suffix == "dBm")
                return dbm_to_watt(magnitude);
            break;
        case Unit::GainToLinear:
            if (suffix.empty())
                return magnitude;
            if (suffix == "dB")
                return db_to_linear(magnitude);
            break;
        case Unit::GainInDb:
            if (suffix.empty() || suffix == "dB")
                return magnitude;
            break;
        }
        fail(key, e, "malformed unit '" + suffix + "'");
    }

    std::string source_;
    std::map<std::string, Entry> entries_;
};

// ------------------------------------------------------------------------
// Experiment configuration
// ------------------------------------------------------------------------

struct SweepAxis
{
    enum class Kind
    {
        None,
        DensityRatio,
        MeanUsers
    };

    Kind kind = Kind::None;
    std::vector<double> values;
};

inline std::string to_string(SweepAxis::Kind kind)
{
    switch (kind)
    {
    case SweepAxis::Kind::None: return "none";
    case SweepAxis::Kind::DensityRatio: return "density_ratio";
    case SweepAxis::Kind::MeanUsers: return "mean_users";
    }
    throw std::logic_error("to_string: unknown sweep axis.");
}

/// Parse `none`, `density_ratio=1,2,5` or `mean_users: 5,10,20` (either
/// separator works; the same syntax serves config files and the CLI).
inline SweepAxis parse_sweep_spec(const std::string& spec)
{
    SweepAxis axis;
    const std::string text = detail::trim(spec);
    if (text.empty() || text == "none")
        return axis;

    auto sep = text.find_first_of("=:");
    if (sep == std::string::npos)
        throw std::invalid_argument("sweep: expected '<axis>=<v1,v2,...>', got '" + text + "'.");
    const std::string name = detail::trim(text.substr(0, sep));
    if (name == "density_ratio")
        axis.kind = SweepAxis::Kind::DensityRatio;
    else if (name == "mean_users")
        axis.kind = SweepAxis::Kind::MeanUsers;
    else
        throw std::invalid_argument("sweep: unknown axis '" + name +
                                    "' (expected density_ratio or mean_users).");

    for (const auto& part : detail::split(text.substr(sep + 1), ','))
    {
        if (part.empty())
            throw std::invalid_argument("sweep: empty value in list '" + text + "'.");
        std::size_t pos = 0;
        double v = 0.0;
        try
        {
            v = std::stod(part, &pos);
        }
        catch (const std::logic_error&)
        {
            pos = 0;
        }
        if (pos != part.size())
            throw std::invalid_argument("sweep: bad value '" + part + "'.");
        axis.values.push_back(v);
    }
    if (axis.values.empty())
        throw std::invalid_argument("sweep: value list is empty.");
    return axis;
}

/// Everything a run needs, resolved to concrete numbers. Defaults follow the
/// baseline simulation setting: three APs on the inner-region boundary,
/// six 2x1 surfaces each, 0 dBm uplink power, -80 dBm noise, -40 dB
/// reference gain, 100 frozen realizations, 30 users on average with a 5:1
/// density ratio between the inner disk and the outer annulus.
struct ExperimentConfig
{
    NetworkLayout layout;      // the cell-free 6DMA base; schemes derive from it
    RadioParams radio;
    PatternParams pattern;     // normalization computed when a scheme is built
    double region_a_radius = 20.0;
    double region_b_radius = 40.0;
    double mean_users = 30.0;     // average total user count
    double density_ratio = 5.0;   // inner density / outer density
    bool fixed_user_count = false;
    int realizations = 100;       // frozen Monte-Carlo drops
    std::vector<SchemeKind> schemes = {SchemeKind::CellFree6DMADirectional};
    std::vector<CombineMode> modes = {CombineMode::Cmmse};
    BOConfig bo;
    std::uint64_t seed = 1;
    int workers = 1; // 0 = all hardware threads
    SweepAxis sweep;

    /// Solve the two region densities from the mean user count and the
    /// density ratio: mean = mu_A pi R_A^2 + mu_B pi (R_B^2 - R_A^2) with
    /// mu_A = ratio * mu_B.
    UserDistribution user_distribution() const
    {
        const double ra2 = region_a_radius * region_a_radius;
        const double rb2 = region_b_radius * region_b_radius;
        UserDistribution dist;
        dist.inner_radius = region_a_radius;
        dist.outer_radius = region_b_radius;
        dist.fixed_count = fixed_user_count;
        const double denom = pi * (density_ratio * ra2 + (rb2 - ra2));
        dist.density_outer = mean_users / denom;
        dist.density_inner = density_ratio * dist.density_outer;
        return dist;
    }

    void validate() const
    {
        layout.validate();
        if (!(layout.track_radius > 0.0))
            throw std::invalid_argument(
                "ExperimentConfig: the 6DMA base layout needs a positive track radius.");
        radio.validate();
        pattern.validate();
        bo.validate();
        if (!(region_a_radius > 0.0) || !(region_b_radius > region_a_radius))
            throw std::invalid_argument(
                "ExperimentConfig: need 0 < region_a_radius < region_b_radius.");
        if (!(mean_users >= 0.0))
            throw std::invalid_argument("ExperimentConfig: mean_users cannot be negative.");
        if (!(density_ratio >= 0.0))
            throw std::invalid_argument("ExperimentConfig: density_ratio cannot be negative.");
        if (realizations < 1)
            throw std::invalid_argument("ExperimentConfig: need at least one realization.");
        if (schemes.empty() || modes.empty())
            throw std::invalid_argument("ExperimentConfig: scheme and mode lists cannot be empty.");
        if (workers < 0)
            throw std::invalid_argument("ExperimentConfig: workers cannot be negative.");
        if (sweep.kind != SweepAxis::Kind::None && sweep.values.empty())
            throw std::invalid_argument("ExperimentConfig: sweep value list cannot be empty.");
        user_distribution().validate();
    }
};

/// Read a config file; absent keys take the baseline defaults. The full key
/// set is documented in the repository README and the sample configs.
inline ExperimentConfig load_config(const std::string& path)
{
    ConfigFile file = ConfigFile::load(path);
    ExperimentConfig cfg;

    cfg.region_a_radius = file.get_length("region_a_radius", 20.0);
    cfg.region_b_radius = file.get_length("region_b_radius", 40.0);

    const int aps = static_cast<int>(file.get_integer("aps", 3));
    if (aps < 1)
        throw std::runtime_error("config: field 'aps': need at least one AP.");
    std::vector<double> default_azimuths(aps);
    if (aps == 3)
        default_azimuths = {0.0, pi / 2.0, pi};
    else
        for (int m = 0; m < aps; ++m)
            default_azimuths[m] = m * two_pi / aps;
    const std::vector<double> azimuths = file.get_angle_list("ap_azimuths", default_azimuths);
    if (static_cast<int>(azimuths.size()) != aps)
        throw std::runtime_error("config: field 'ap_azimuths': expected " + std::to_string(aps) +
                                 " entries, got " + std::to_string(azimuths.size()) + ".");
    const double ring = file.get_length("ap_ring_radius", cfg.region_a_radius);
    cfg.layout.ap_positions.clear();
    for (const double az : azimuths)
        cfg.layout.ap_positions.push_back({ring * std::cos(az), ring * std::sin(az)});

    cfg.layout.surfaces_per_ap = static_cast<int>(file.get_integer("surfaces_per_ap", 6));
    cfg.layout.antennas_h = static_cast<int>(file.get_integer("antennas_h", 2));
    cfg.layout.antennas_v = static_cast<int>(file.get_integer("antennas_v", 1));
    cfg.layout.ap_height = file.get_length("ap_height", 10.0);
    cfg.layout.track_radius = file.get_length("track_radius", 1.0);

    cfg.radio.wavelength = file.get_length("wavelength", 0.125);
    cfg.radio.tx_power = file.get_power_watt("tx_power", 1.0e-3);
    cfg.radio.noise_power = file.get_power_watt("noise_power", 1.0e-11);
    cfg.radio.ref_gain = file.get_gain_linear("ref_gain", 1.0e-4);

    if (!(cfg.layout.track_radius > 0.0))
        throw std::runtime_error("config: field 'track_radius': must be positive.");
    cfg.layout.min_separation = file.get_angle(
        "min_separation", cfg.radio.wavelength / (2.0 * cfg.layout.track_radius));

    cfg.pattern.max_gain_dbi = file.get_db("max_gain", 14.0);
    cfg.pattern.beamwidth_az = file.get_angle("beamwidth_az", deg_to_rad(65.0));
    cfg.pattern.beamwidth_el = file.get_angle("beamwidth_el", deg_to_rad(65.0));
    cfg.pattern.sidelobe_h = file.get_db("sidelobe_h", 20.0);
    cfg.pattern.sidelobe_v = file.get_db("sidelobe_v", 20.0);
    cfg.pattern.downtilt = file.get_angle("downtilt", deg_to_rad(100.0));

    cfg.mean_users = file.get_number("mean_users", 30.0);
    cfg.density_ratio = file.get_number("density_ratio", 5.0);
    cfg.fixed_user_count = file.get_bool("fixed_user_count", false);
    cfg.realizations = static_cast<int>(file.get_integer("realizations", 100));

    cfg.schemes.clear();
    for (const auto& name :
         file.get_string_list("scheme", {"cellfree-6dma-directional"}))
        cfg.schemes.push_back(parse_scheme(name));
    cfg.modes.clear();
    for (const auto& name : file.get_string_list("mode", {"cmmse"}))
        cfg.modes.push_back(parse_mode(name));

    cfg.bo.init_samples = static_cast<int>(file.get_integer("init_samples", 0));
    cfg.bo.iterations = static_cast<int>(file.get_integer("iterations", 100));
    cfg.bo.jitter = file.get_number("jitter", 1.0e-8);
    cfg.bo.lengthscale = file.get_number("lengthscale", 1.0);
    cfg.bo.restarts = static_cast<int>(file.get_integer("restarts", 10));
    cfg.bo.inner_tol = file.get_number("inner_tol", 1.0e-6);
    cfg.bo.inner_max_iter = static_cast<int>(file.get_integer("inner_max_iter", 200));

    cfg.seed = file.get_seed("seed", 1);
    cfg.workers = static_cast<int>(file.get_integer("workers", 1));
    cfg.sweep = parse_sweep_spec(file.get_string("sweep", "none"));

    file.reject_unknown_keys();
    cfg.validate();
    return cfg;
}

// ------------------------------------------------------------------------
// JSON round-trip
// ------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const Vec2& v) { j = {{"x", v.x}, {"y", v.y}}; }
inline void from_json(const nlohmann::json& j, Vec2& v)
{
    j.at("x").get_to(v.x);
    j.at("y").get_to(v.y);
}

inline void to_json(nlohmann::json& j, const NetworkLayout& l)
{
    j = {{"ap_positions", l.ap_positions},
         {"ap_height", l.ap_height},
         {"track_radius", l.track_radius},
         {"surfaces_per_ap", l.surfaces_per_ap},
         {"antennas_h", l.antennas_h},
         {"antennas_v", l.antennas_v},
         {"min_separation", l.min_separation}};
}
inline void from_json(const nlohmann::json& j, NetworkLayout& l)
{
    j.at("ap_positions").get_to(l.ap_positions);
    j.at("ap_height").get_to(l.ap_height);
    j.at("track_radius").get_to(l.track_radius);
    j.at("surfaces_per_ap").get_to(l.surfaces_per_ap);
    j.at("antennas_h").get_to(l.antennas_h);
    j.at("antennas_v").get_to(l.antennas_v);
    j.at("min_separation").get_to(l.min_separation);
}

inline void to_json(nlohmann::json& j, const RadioParams& r)
{
    j = {{"wavelength", r.wavelength},
         {"tx_power", r.tx_power},
         {"noise_power", r.noise_power},
         {"ref_gain", r.ref_gain}};
}
inline void from_json(const nlohmann::json& j, RadioParams& r)
{
    j.at("wavelength").get_to(r.wavelength);
    j.at("tx_power").get_to(r.tx_power);
    j.at("noise_power").get_to(r.noise_power);
    j.at("ref_gain").get_to(r.ref_gain);
}

inline void to_json(nlohmann::json& j, const PatternParams& p)
{
    j = {{"max_gain_dbi", p.max_gain_dbi},
         {"beamwidth_az", p.beamwidth_az},
         {"beamwidth_el", p.beamwidth_el},
         {"sidelobe_h", p.sidelobe_h},
         {"sidelobe_v", p.sidelobe_v},
         {"downtilt", p.downtilt}};
}
inline void from_json(const nlohmann::json& j, PatternParams& p)
{
    j.at("max_gain_dbi").get_to(p.max_gain_dbi);
    j.at("beamwidth_az").get_to(p.beamwidth_az);
    j.at("beamwidth_el").get_to(p.beamwidth_el);
    j.at("sidelobe_h").get_to(p.sidelobe_h);
    j.at("sidelobe_v").get_to(p.sidelobe_v);
    j.at("downtilt").get_to(p.downtilt);
    p.normalization = 0.0; // recomputed when a scheme is built
}

inline void to_json(nlohmann::json& j, const BOConfig& b)
{
    j = {{"init_samples", b.init_samples}, {"iterations", b.iterations},
         {"jitter", b.jitter},             {"lengthscale", b.lengthscale},
         {"restarts", b.restarts},         {"inner_tol", b.inner_tol},
         {"inner_max_iter", b.inner_max_iter}};
}
inline void from_json(const nlohmann::json& j, BOConfig& b)
{
    j.at("init_samples").get_to(b.init_samples);
    j.at("iterations").get_to(b.iterations);
    j.at("jitter").get_to(b.jitter);
    j.at("lengthscale").get_to(b.lengthscale);
    j.at("restarts").get_to(b.restarts);
    j.at("inner_tol").get_to(b.inner_tol);
    j.at("inner_max_iter").get_to(b.inner_max_iter);
}

inline void to_json(nlohmann::json& j, const SweepAxis& s)
{
    j = {{"axis", to_string(s.kind)}, {"values", s.values}};
}
inline void from_json(const nlohmann::json& j, SweepAxis& s)
{
    const std::string axis = j.at("axis").get<std::string>();
    if (axis == "none")
        s.kind = SweepAxis::Kind::None;
    else if (axis == "density_ratio")
        s.kind = SweepAxis::Kind::DensityRatio;
    else if (axis == "mean_users")
        s.kind = SweepAxis::Kind::MeanUsers;
    else
        throw std::invalid_argument("SweepAxis: unknown axis '" + axis + "'.");
    j.at("values").get_to(s.values);
}

inline void to_json(nlohmann::json& j, const ExperimentConfig& c)
{
    nlohmann::json schemes = nlohmann::json::array();
    for (const auto s : c.schemes)
        schemes.push_back(to_string(s));
    nlohmann::json modes = nlohmann::json::array();
    for (const auto m : c.modes)
        modes.push_back(to_string(m));
    j = {{"layout", c.layout},
         {"radio", c.radio},
         {"pattern", c.pattern},
         {"region_a_radius", c.region_a_radius},
         {"region_b_radius", c.region_b_radius},
         {"mean_users", c.mean_users},
         {"density_ratio", c.density_ratio},
         {"fixed_user_count", c.fixed_user_count},
         {"realizations", c.realizations},
         {"schemes", schemes},
         {"modes", modes},
         {"bo", c.bo},
         {"seed", c.seed},
         {"workers", c.workers},
         {"sweep", c.sweep}};
}
inline void from_json(const nlohmann::json& j, ExperimentConfig& c)
{
    j.at("layout").get_to(c.layout);
    j.at("radio").get_to(c.radio);
    j.at("pattern").get_to(c.pattern);
    j.at("region_a_radius").get_to(c.region_a_radius);
    j.at("region_b_radius").get_to(c.region_b_radius);
    j.at("mean_users").get_to(c.mean_users);
    j.at("density_ratio").get_to(c.density_ratio);
    j.at("fixed_user_count").get_to(c.fixed_user_count);
    j.at("realizations").get_to(c.realizations);
    c.schemes.clear();
    for (const auto& name : j.at("schemes"))
        c.schemes.push_back(parse_scheme(name.get<std::string>()));
    c.modes.clear();
    for (const auto& name : j.at("modes"))
        c.modes.push_back(parse_mode(name.get<std::string>()));
    j.at("bo").get_to(c.bo);
    j.at("seed").get_to(c.seed);
    j.at("workers").get_to(c.workers);
    j.at("sweep").get_to(c.sweep);
}

} // namespace sixdma
