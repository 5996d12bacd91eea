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

#ifndef AOASIM_EXPERIMENT_HPP
#define AOASIM_EXPERIMENT_HPP

#include "estimation.hpp"
#include "montecarlo.hpp"
#include "scenario_config.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace aoasim
{

// A component failure inside a specific Monte Carlo trial
class TrialError : public std::runtime_error
{
  public:
    TrialError(std::size_t trial, const std::string &what)
        : std::runtime_error("trial " + std::to_string(trial) + ": " + what), trial_(trial)
    {
    }
    std::size_t trial() const { return trial_; }

  private:
    std::size_t trial_;
};

enum class SpreadMode
{
    bins, // moments over bin centers of the averaged spectrum
    paths // moments over raw path angles, pooled across trials
};

struct RunOptions
{
    std::size_t threads = 0; // 0: hardware concurrency
    SpreadMode spread_mode = SpreadMode::bins;
};

struct RunReport
{
    AngularSpectrum averaged_spectrum;
    double angle_spread = 0.0; // radians
    std::vector<double> per_trial_spreads;
    ScenarioConfig scenario_echo;
    double elapsed = 0.0; // seconds
    SpreadMode spread_mode = SpreadMode::bins;

    // Standard error of the mean per-trial spread
    double standard_error() const
    {
        const std::size_t n = per_trial_spreads.size();
        if (n < 2)
            return 0.0;
        double mean = 0.0;
        for (double s : per_trial_spreads)
            mean += s;
        mean /= static_cast<double>(n);
        double var = 0.0;
        for (double s : per_trial_spreads)
            var += (s - mean) * (s - mean);
        var /= static_cast<double>(n - 1);
        return std::sqrt(var / static_cast<double>(n));
    }
};

namespace detail
{
inline std::size_t resolve_threads(std::size_t requested, std::size_t work)
{
    std::size_t t = requested != 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
    return std::max<std::size_t>(1, std::min(t, work));
}

// Runs body(i) for i in [0, count) on a pool of workers. Results must be
// written to slot i only. The exception of the lowest failing index wins.
template <class Body>
void parallel_for(std::size_t count, std::size_t threads, Body &&body)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++)
        {
            try
            {
                body(i);
            }
            catch (...)
            {
                errors[i] = std::current_exception();
            }
        }
    };

    const std::size_t n = resolve_threads(threads, count);
    if (n == 1)
        worker();
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(n);
        for (std::size_t t = 0; t < n; ++t)
            pool.emplace_back(worker);
    }

    for (std::size_t i = 0; i < count; ++i)
        if (errors[i])
        {
            try
            {
                std::rethrow_exception(errors[i]);
            }
            catch (const std::exception &ex)
            {
                throw TrialError(i, ex.what());
            }
        }
}
} // namespace detail

// Runs config.trials independent trials, averages their spectra and reports
// the rms angle spread. Deterministic for a fixed seed regardless of threading.
inline RunReport run_simulation(const ScenarioConfig &config, const RunOptions &options = {})
{
    const auto start = std::chrono::steady_clock::now();
    config.validate();
    const Scenario scenario = config.scenario();

    const std::size_t n = config.trials;
    std::vector<AngularSpectrum> spectra(n);
    std::vector<double> spreads(n), m1(n), m2(n);

    detail::parallel_for(n, options.threads, [&](std::size_t i) {
        const PathSet paths = generate_trial(scenario, i);
        spectra[i] = estimate_pdf(paths, config.bins);
        if (options.spread_mode == SpreadMode::bins)
            spreads[i] = rms_angle_spread(spectra[i]);
        else
        {
            const double total = paths.total_power();
            double a = 0.0, b = 0.0;
            for (const auto &p : paths.paths)
            {
                a += p.aoa * p.power / total;
                b += p.aoa * p.aoa * p.power / total;
            }
            m1[i] = a;
            m2[i] = b;
            spreads[i] = std::sqrt(std::max(0.0, b - a * a));
        }
    });

    RunReport report;
    report.averaged_spectrum = average_spectra(spectra);
    report.per_trial_spreads = std::move(spreads);
    report.scenario_echo = config;
    report.spread_mode = options.spread_mode;
    if (options.spread_mode == SpreadMode::bins)
        report.angle_spread = rms_angle_spread(report.averaged_spectrum);
    else
    {
        double a = 0.0, b = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            a += m1[i];
            b += m2[i];
        }
        a /= static_cast<double>(n);
        b /= static_cast<double>(n);
        report.angle_spread = std::sqrt(std::max(0.0, b - a * a));
    }
    report.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

struct SweepPoint
{
    double hpbw_deg = 0.0;
    RunReport report;
};

// Angle spread versus Gaussian HPBW, same master seed at every point
inline std::vector<SweepPoint> hpbw_sweep(const ScenarioConfig &config, const std::vector<double> &hpbw_list_deg,
                                          const RunOptions &options = {})
{
    detail::require(config.pattern.kind == AntennaPattern::Kind::gaussian,
                    "HPBW sweep requires a Gaussian antenna pattern.");
    detail::require(!hpbw_list_deg.empty(), "HPBW list is empty.");

    std::vector<SweepPoint> out;
    out.reserve(hpbw_list_deg.size());
    for (double h : hpbw_list_deg)
    {
        ScenarioConfig c = config;
        c.pattern.hpbw_deg = h;
        out.push_back({h, run_simulation(c, options)});
    }
    return out;
}

// ---- Output files -----------------------------------------------------------

namespace detail
{
inline std::string format_double(const char *fmt, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

inline void write_text(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("Cannot write '" + path.string() + "'.");
    out << text;
    if (!out)
        throw std::runtime_error("Write failed for '" + path.string() + "'.");
}
} // namespace detail

// angle_deg,pdf_per_deg at bin centers
inline std::string spectrum_csv(const AngularSpectrum &s)
{
    std::string out = "angle_deg,pdf_per_deg\n";
    for (std::size_t k = 0; k < s.bin_count(); ++k)
        out += detail::format_double("%.6f", rad_to_deg(s.bin_center(k))) + "," +
               detail::format_double("%.12e", s.density(k) * (pi / 180.0)) + "\n";
    return out;
}

inline std::string sweep_csv(const std::vector<SweepPoint> &points)
{
    std::string out = "hpbw_deg,as_deg\n";
    for (const auto &p : points)
        out += detail::format_double("%.6f", p.hpbw_deg) + "," +
               detail::format_double("%.9f", rad_to_deg(p.report.angle_spread)) + "\n";
    return out;
}

// Wall-clock time is left out unless asked for, so reports stay byte-reproducible
inline nlohmann::ordered_json report_json(const RunReport &r, bool include_timing = false)
{
    nlohmann::ordered_json j;
    nlohmann::ordered_json scenario;
    to_json(scenario, r.scenario_echo);
    j["scenario"] = std::move(scenario);
    j["spread_mode"] = r.spread_mode == SpreadMode::bins ? "bins" : "paths";
    j["angle_spread_deg"] = rad_to_deg(r.angle_spread);
    j["angle_spread_rad"] = r.angle_spread;
    j["angle_spread_standard_error_deg"] = rad_to_deg(r.standard_error());
    j["per_trial_spreads_deg"] = nlohmann::ordered_json::array();
    for (double s : r.per_trial_spreads)
        j["per_trial_spreads_deg"].push_back(rad_to_deg(s));

    const auto &s = r.averaged_spectrum;
    nlohmann::ordered_json spectrum;
    spectrum["bins"] = s.bin_count();
    spectrum["bin_width_deg"] = rad_to_deg(s.bin_width());
    spectrum["point_mass_at_zero"] = s.point_mass_at_zero();
    spectrum["sample_count"] = s.sample_count();
    spectrum["angle_deg"] = nlohmann::ordered_json::array();
    spectrum["pdf_per_deg"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < s.bin_count(); ++k)
    {
        spectrum["angle_deg"].push_back(rad_to_deg(s.bin_center(k)));
        spectrum["pdf_per_deg"].push_back(s.density(k) * (pi / 180.0));
    }
    j["averaged_spectrum"] = std::move(spectrum);
    if (include_timing)
        j["elapsed_s"] = r.elapsed;
    return j;
}

// Refuses to write a spectrum that does not integrate to one
inline void check_spectrum_before_write(const AngularSpectrum &s)
{
    if (!s.is_normalized())
        throw std::runtime_error("Averaged spectrum integrates to " + detail::format_double("%.15g", s.total_mass()) +
                                 ", not 1; refusing to write output.");
}

inline void write_run_outputs(const std::filesystem::path &dir, const RunReport &r, bool include_timing = false)
{
    check_spectrum_before_write(r.averaged_spectrum);
    std::filesystem::create_directories(dir);
    detail::write_text(dir / "spectrum.csv", spectrum_csv(r.averaged_spectrum));
    detail::write_text(dir / "report.json", report_json(r, include_timing).dump(2) + "\n");
}

inline std::string hpbw_tag(double hpbw_deg) { return detail::format_double("%g", hpbw_deg); }

// sweep.csv plus one spectrum_hpbw_<deg>.csv per point
inline void write_sweep_outputs(const std::filesystem::path &dir, const std::vector<SweepPoint> &points)
{
    for (const auto &p : points)
        check_spectrum_before_write(p.report.averaged_spectrum);
    std::filesystem::create_directories(dir);
    detail::write_text(dir / "sweep.csv", sweep_csv(points));
    for (const auto &p : points)
        detail::write_text(dir / ("spectrum_hpbw_" + hpbw_tag(p.hpbw_deg) + ".csv"),
                           spectrum_csv(p.report.averaged_spectrum));
}

// ---- Input files ------------------------------------------------------------

// Two numeric columns per line; '#' comments, blank lines and a non-numeric
// header line are skipped.
inline std::vector<std::pair<double, double>> read_two_column_csv(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("Cannot open '" + path + "'.");
    std::vector<std::pair<double, double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line))
    {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#')
            continue;
        for (char &ch : line)
            if (ch == ',' || ch == ';' || ch == '\t')
                ch = ' ';
        std::istringstream ss(line);
        double a = 0.0, b = 0.0;
        if (!(ss >> a >> b))
        {
            if (rows.empty() && line_no == 1)
                continue; // header
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": expected two numeric columns.");
        }
        rows.emplace_back(a, b);
    }
    return rows;
}

// angle_deg,density_per_deg -> radians, density per radian
inline std::vector<EmpiricalPoint> read_empirical_csv(const std::string &path)
{
    std::vector<EmpiricalPoint> out;
    for (const auto &[deg, d] : read_two_column_csv(path))
        out.push_back({deg == 180.0 ? pi : deg_to_rad(deg), d * (180.0 / pi)});
    detail::require(!out.empty(), "Empirical file '" + path + "' has no data.");
    return out;
}

// delay_us,power_linear -> seconds
inline std::vector<PdpSample> read_pdp_csv(const std::string &path)
{
    std::vector<PdpSample> out;
    for (const auto &[us, p] : read_two_column_csv(path))
        out.push_back({us * 1e-6, p});
    return out;
}

} // namespace aoasim

#endif
