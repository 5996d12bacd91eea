// SPDX-License-Identifier: Apache-2.0
//
// aoasim - geometry-based angle-of-arrival simulator
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

#ifndef AOASIM_SCENARIO_CONFIG_HPP
#define AOASIM_SCENARIO_CONFIG_HPP

#include "angular_models.hpp"
#include "antenna_pattern.hpp"
#include "constants.hpp"
#include "montecarlo.hpp"
#include "tap_extraction.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

// Scenario files are JSON with angles in degrees, delays in microseconds and
// linear powers. Tap powers are normalized to unit sum when loaded.
//
// {
//   "label": "...",
//   "distance_m": 1000,
//   "taps": [ {"delay_us": 0, "power": 0.5, "paths": 50}, ... ],      <- or
//   "raw_pdp": { "samples": [[delay_us, power], ...], "prominence_db": 3 },
//   "default_paths": 50,
//   "pattern": { "kind": "omni" | "gaussian" | "tabulated",
//                "hpbw_deg": 60, "samples": [[angle_deg, amplitude], ...] },
//   "kappa": 0, "mu": 4, "trials": 500, "bins": 360, "seed": 1
// }

namespace aoasim
{

struct TapEntry
{
    double delay_us = 0.0;
    double power = 0.0;
    std::optional<std::size_t> paths; // falls back to ScenarioConfig::default_paths

    bool operator==(const TapEntry &) const = default;
};

struct RawPdpConfig
{
    std::vector<std::pair<double, double>> samples; // (delay_us, linear power)
    double prominence_db = 3.0;

    bool operator==(const RawPdpConfig &) const = default;
};

struct PatternConfig
{
    AntennaPattern::Kind kind = AntennaPattern::Kind::omni;
    double hpbw_deg = 360.0;                        // gaussian
    std::vector<std::pair<double, double>> samples; // tabulated: (angle_deg, amplitude)

    bool operator==(const PatternConfig &) const = default;
};

struct ScenarioConfig
{
    std::string label;
    double distance_m = 0.0;
    std::optional<std::vector<TapEntry>> taps;
    std::optional<RawPdpConfig> raw_pdp;
    std::size_t default_paths = 50;
    PatternConfig pattern;
    double kappa = 0.0;
    double mu = 0.0;
    std::size_t trials = 500;
    std::size_t bins = 360;
    std::uint64_t seed = 1;

    bool operator==(const ScenarioConfig &) const = default;

    void validate() const
    {
        detail::require(taps.has_value() != raw_pdp.has_value(),
                        "Scenario needs exactly one of 'taps' or 'raw_pdp'.");
        detail::require(trials >= 1, "trials must be >= 1.");
        detail::require(bins >= 8, "bins must be >= 8.");
        detail::require(default_paths >= 1, "default_paths must be >= 1.");
        detail::require(std::isfinite(distance_m) && distance_m >= 0.0, "distance_m must be finite and >= 0.");
        LocalScattering{mu, kappa}.validate();
    }

    TapProfile tap_profile() const
    {
        validate();
        if (taps)
        {
            std::vector<Tap> out;
            out.reserve(taps->size());
            for (const auto &t : *taps)
                out.push_back({t.delay_us * 1e-6, t.power, t.paths.value_or(default_paths)});
            return TapProfile(std::move(out));
        }

        std::vector<PdpSample> pdp;
        pdp.reserve(raw_pdp->samples.size());
        for (const auto &[d, p] : raw_pdp->samples)
            pdp.push_back({d * 1e-6, p});
        const TapProfile extracted = extract_taps(pdp, raw_pdp->prominence_db, default_paths);
        const double total = extracted.total_power();
        std::vector<Tap> out = extracted.taps();
        for (auto &t : out)
            t.power /= total;
        return TapProfile(std::move(out));
    }

    AntennaPattern antenna_pattern() const
    {
        switch (pattern.kind)
        {
        case AntennaPattern::Kind::omni:
            return AntennaPattern::omni();
        case AntennaPattern::Kind::gaussian:
            return AntennaPattern::gaussian(deg_to_rad(pattern.hpbw_deg));
        case AntennaPattern::Kind::tabulated:
        default:
        {
            std::vector<PatternSample> s;
            s.reserve(pattern.samples.size());
            for (const auto &[a, g] : pattern.samples)
                s.push_back({deg_to_rad(a), g});
            return AntennaPattern::tabulated(std::move(s));
        }
        }
    }

    Scenario scenario() const
    {
        return Scenario(distance_m, tap_profile(), antenna_pattern(), LocalScattering{mu, kappa}, seed);
    }
};

NLOHMANN_JSON_SERIALIZE_ENUM(AntennaPattern::Kind, {
                                                       {AntennaPattern::Kind::omni, "omni"},
                                                       {AntennaPattern::Kind::gaussian, "gaussian"},
                                                       {AntennaPattern::Kind::tabulated, "tabulated"},
                                                   })

inline void to_json(nlohmann::ordered_json &j, const ScenarioConfig &c)
{
    j = nlohmann::ordered_json::object();
    if (!c.label.empty())
        j["label"] = c.label;
    j["distance_m"] = c.distance_m;
    if (c.taps)
    {
        auto arr = nlohmann::ordered_json::array();
        for (const auto &t : *c.taps)
        {
            nlohmann::ordered_json e{{"delay_us", t.delay_us}, {"power", t.power}};
            if (t.paths)
                e["paths"] = *t.paths;
            arr.push_back(std::move(e));
        }
        j["taps"] = std::move(arr);
    }
    if (c.raw_pdp)
        j["raw_pdp"] = {{"samples", c.raw_pdp->samples}, {"prominence_db", c.raw_pdp->prominence_db}};
    j["default_paths"] = c.default_paths;

    nlohmann::ordered_json pat{{"kind", c.pattern.kind}};
    if (c.pattern.kind == AntennaPattern::Kind::gaussian)
        pat["hpbw_deg"] = c.pattern.hpbw_deg;
    if (c.pattern.kind == AntennaPattern::Kind::tabulated)
        pat["samples"] = c.pattern.samples;
    j["pattern"] = std::move(pat);

    j["kappa"] = c.kappa;
    j["mu"] = c.mu;
    j["trials"] = c.trials;
    j["bins"] = c.bins;
    j["seed"] = c.seed;
}

inline ScenarioConfig parse_scenario_json(const nlohmann::json &j)
{
    ScenarioConfig c;
    try
    {
        detail::require(j.is_object(), "Scenario must be a JSON object.");
        c.label = j.value("label", std::string{});
        c.distance_m = j.at("distance_m").get<double>();
        c.default_paths = j.value("default_paths", std::size_t{50});

        if (j.contains("taps"))
        {
            std::vector<TapEntry> taps;
            for (const auto &e : j.at("taps"))
            {
                TapEntry t{e.at("delay_us").get<double>(), e.at("power").get<double>(), std::nullopt};
                if (e.contains("paths"))
                    t.paths = e.at("paths").get<std::size_t>();
                taps.push_back(t);
            }
            double total = 0.0;
            for (const auto &t : taps)
                total += t.power;
            detail::require(total > 0.0 && std::isfinite(total), "Tap powers must sum to a positive value.");
            // Already-normalized profiles are left untouched so that emit/parse round-trips exactly
            if (std::abs(total - 1.0) > 1e-12)
                for (auto &t : taps)
                    t.power /= total;
            c.taps = std::move(taps);
        }
        if (j.contains("raw_pdp"))
        {
            const auto &r = j.at("raw_pdp");
            RawPdpConfig raw;
            raw.samples = r.at("samples").get<std::vector<std::pair<double, double>>>();
            raw.prominence_db = r.value("prominence_db", 3.0);
            c.raw_pdp = std::move(raw);
        }

        const auto &p = j.at("pattern");
        c.pattern.kind = p.at("kind").get<AntennaPattern::Kind>();
        const auto kind_name = p.at("kind").get<std::string>();
        detail::require(kind_name == "omni" || kind_name == "gaussian" || kind_name == "tabulated",
                        "Unknown pattern kind '" + kind_name + "'.");
        if (c.pattern.kind == AntennaPattern::Kind::gaussian)
            c.pattern.hpbw_deg = p.at("hpbw_deg").get<double>();
        if (c.pattern.kind == AntennaPattern::Kind::tabulated)
            c.pattern.samples = p.at("samples").get<std::vector<std::pair<double, double>>>();

        c.kappa = j.value("kappa", 0.0);
        c.mu = j.at("mu").get<double>();
        c.trials = j.value("trials", std::size_t{500});
        c.bins = j.value("bins", std::size_t{360});
        c.seed = j.value("seed", std::uint64_t{1});
    }
    catch (const nlohmann::json::exception &ex)
    {
        throw std::invalid_argument(std::string("Malformed scenario: ") + ex.what());
    }
    c.validate();
    return c;
}

inline ScenarioConfig parse_scenario(const std::string &text)
{
    nlohmann::json j;
    try
    {
        j = nlohmann::json::parse(text);
    }
    catch (const nlohmann::json::parse_error &ex)
    {
        throw std::invalid_argument(std::string("Scenario is not valid JSON: ") + ex.what());
    }
    return parse_scenario_json(j);
}

inline std::string emit_scenario(const ScenarioConfig &c)
{
    nlohmann::ordered_json j;
    to_json(j, c);
    return j.dump(2);
}

inline ScenarioConfig load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open scenario file '" + path + "'.");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

} // namespace aoasim

#endif
