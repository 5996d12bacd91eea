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

// Command-line front end: simulate, sweep, fit, taps.

#include "aoasim/aoasim.hpp"

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif
#include <nlohmann/json.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace
{

using aoasim::rad_to_deg;

struct CommonOptions
{
    std::string scenario;
    std::optional<std::size_t> trials;
    std::optional<std::size_t> bins;
    std::optional<std::uint64_t> seed;
    std::size_t threads = 0;
    std::string spread_mode = "bins";
};

void add_common(CLI::App *cmd, CommonOptions &o)
{
    cmd->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
    cmd->add_option("--trials", o.trials, "Number of Monte Carlo trials (overrides scenario)");
    cmd->add_option("--bins", o.bins, "Number of angle bins over (-180, 180] (overrides scenario)");
    cmd->add_option("--seed", o.seed, "Master seed (overrides scenario)");
    cmd->add_option("--threads", o.threads, "Worker threads, 0 = all cores");
    cmd->add_option("--spread-mode", o.spread_mode, "Angle spread over histogram 'bins' or raw 'paths'")
        ->check(CLI::IsMember({"bins", "paths"}));
}

aoasim::ScenarioConfig load_config(const CommonOptions &o)
{
    auto c = aoasim::load_scenario(o.scenario);
    if (o.trials)
        c.trials = *o.trials;
    if (o.bins)
        c.bins = *o.bins;
    if (o.seed)
        c.seed = *o.seed;
    c.validate();
    return c;
}

aoasim::RunOptions run_options(const CommonOptions &o)
{
    return {o.threads, o.spread_mode == "paths" ? aoasim::SpreadMode::paths : aoasim::SpreadMode::bins};
}

std::vector<double> parse_list(const std::string &text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        std::size_t used = 0;
        double v = 0.0;
        try
        {
            v = std::stod(item, &used);
        }
        catch (const std::exception &)
        {
            used = 0;
        }
        if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos)
            throw std::invalid_argument("Bad number '" + item + "' in list '" + text + "'.");
        out.push_back(v);
    }
    if (out.empty())
        throw std::invalid_argument("Empty list.");
    return out;
}

void emit_error(const std::string &type, const std::string &message)
{
    nlohmann::ordered_json j;
    j["error"] = {{"type", type}, {"message", message}};
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Geometry-based angle-of-arrival simulator"};
    app.require_subcommand(1);

    CommonOptions sim_opt;
    std::string sim_out = "out";
    bool sim_timing = false;
    auto *simulate = app.add_subcommand("simulate", "Average the AOA spectrum over Monte Carlo trials");
    add_common(simulate, sim_opt);
    simulate->add_option("--out", sim_out, "Output directory (spectrum.csv, report.json)");
    simulate->add_flag("--timing", sim_timing, "Include wall-clock time in report.json");

    CommonOptions sweep_opt;
    std::string sweep_out = "out";
    std::string hpbw_text = "360,180,120,90,60";
    auto *sweep = app.add_subcommand("sweep", "Angle spread versus Gaussian HPBW");
    add_common(sweep, sweep_opt);
    sweep->add_option("--hpbw", hpbw_text, "Comma-separated HPBW values in degrees");
    sweep->add_option("--out", sweep_out, "Output directory (sweep.csv, spectrum_hpbw_<deg>.csv)");

    CommonOptions fit_opt;
    std::string empirical;
    auto *fit = app.add_subcommand("fit", "Least-square error against an empirical angular spectrum");
    add_common(fit, fit_opt);
    fit->add_option("--empirical", empirical, "CSV with angle_deg,density_per_deg")->required();

    std::string pdp_file;
    double prominence = 3.0;
    std::size_t paths = 50;
    auto *taps = app.add_subcommand("taps", "Extract taps from a sampled power delay profile");
    taps->add_option("--pdp", pdp_file, "CSV with delay_us,power_linear")->required();
    taps->add_option("--prominence", prominence, "Minimum peak prominence in dB");
    taps->add_option("--paths", paths, "Path count assigned to each tap");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        emit_error("usage", e.what());
        return 2;
    }

    try
    {
        if (*simulate)
        {
            const auto config = load_config(sim_opt);
            const auto report = aoasim::run_simulation(config, run_options(sim_opt));
            aoasim::write_run_outputs(sim_out, report, sim_timing);
            nlohmann::ordered_json j;
            j["angle_spread_deg"] = rad_to_deg(report.angle_spread);
            j["standard_error_deg"] = rad_to_deg(report.standard_error());
            j["point_mass_at_zero"] = report.averaged_spectrum.point_mass_at_zero();
            j["trials"] = config.trials;
            j["out"] = sim_out;
            std::cout << j.dump() << "\n";
        }
        else if (*sweep)
        {
            const auto config = load_config(sweep_opt);
            const auto points = aoasim::hpbw_sweep(config, parse_list(hpbw_text), run_options(sweep_opt));
            aoasim::write_sweep_outputs(sweep_out, points);
            for (const auto &p : points)
            {
                nlohmann::ordered_json j;
                j["hpbw_deg"] = p.hpbw_deg;
                j["as_deg"] = rad_to_deg(p.report.angle_spread);
                j["standard_error_deg"] = rad_to_deg(p.report.standard_error());
                std::cout << j.dump() << "\n";
            }
        }
        else if (*fit)
        {
            const auto config = load_config(fit_opt);
            const auto data = aoasim::read_empirical_csv(empirical);
            const auto report = aoasim::run_simulation(config, run_options(fit_opt));
            const auto scenario = config.scenario();

            nlohmann::ordered_json j;
            j["points"] = data.size();
            j["lse_simulated"] = aoasim::lse(report.averaged_spectrum, data);
            j["lse_analytic"] = aoasim::lse([&](double a) { return scenario.aoa_density(a).density; }, data);
            j["density_unit"] = "1/rad";
            j["angle_spread_deg"] = rad_to_deg(report.angle_spread);
            std::cout << j.dump() << "\n";
        }
        else if (*taps)
        {
            const auto profile = aoasim::extract_taps(aoasim::read_pdp_csv(pdp_file), prominence, paths);
            nlohmann::ordered_json j;
            j["taps"] = nlohmann::ordered_json::array();
            for (const auto &t : profile)
                j["taps"].push_back({{"delay_us", t.delay * 1e6}, {"power", t.power}, {"paths", t.paths}});
            j["rms_delay_spread_us"] = profile.rms_delay_spread() * 1e6;
            std::cout << j.dump(2) << "\n";
        }
    }
    catch (const aoasim::TrialError &e)
    {
        emit_error("trial", e.what());
        return 1;
    }
    catch (const std::invalid_argument &e)
    {
        emit_error("invalid_argument", e.what());
        return 1;
    }
    catch (const std::exception &e)
    {
        emit_error("runtime", e.what());
        return 1;
    }
    return 0;
}
