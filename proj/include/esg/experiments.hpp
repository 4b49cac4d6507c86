// SPDX-License-Identifier: Apache-2.0
//
// noma-esg  uplink NOMA vs. OMA ergodic sum-rate analysis
// Copyright (C) 2026 The noma-esg authors
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

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mc_simulator.hpp"

namespace esg {

enum class FigureId
{
    fig2_esg_surface,
    fig3_esg_vs_k,
    fig4_esg_vs_snr,
    fig5_esg_vs_m,
    custom,
};

struct ExperimentSpec
{
    FigureId figure_id = FigureId::custom;
    std::vector<SystemConfig> sweep;
    long trials = 10000;
    std::uint64_t seed = 1;
    std::string output_path;
    bool analytic_only = false;  // the high-SNR surface has no simulation arm
};

// Optional knobs for build_figure_spec. Unset fields keep the figure's
// canonical values; list overrides replace the corresponding sweep axis.
struct FigureOverrides
{
    std::optional<std::vector<double>> outer_radii_m;
    std::optional<std::vector<int>> antenna_counts;
    std::optional<std::vector<int>> user_counts;
    std::optional<std::vector<double>> snr_values_db;
    std::optional<int> quadrature_order;
    std::optional<long> trials;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_path;
    std::optional<int> surface_grid_points;  // per-axis resolution of the surface figure
};

struct ResultRow
{
    SystemConfig config;
    double analytic_esg = 0.0;
    double high_snr_esg = 0.0;
    std::optional<double> mc_esg;
    std::optional<double> mc_std_error;
    long trials = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const ResultRow& a, const ResultRow& b)
    {
        return a.config.inner_radius_m == b.config.inner_radius_m &&
               a.config.outer_radius_m == b.config.outer_radius_m &&
               a.config.path_loss_exponent == b.config.path_loss_exponent &&
               a.config.num_users == b.config.num_users &&
               a.config.num_antennas == b.config.num_antennas &&
               a.config.quadrature_order == b.config.quadrature_order &&
               a.config.snr_sum_db == b.config.snr_sum_db &&
               a.analytic_esg == b.analytic_esg && a.high_snr_esg == b.high_snr_esg &&
               a.mc_esg == b.mc_esg && a.mc_std_error == b.mc_std_error &&
               a.trials == b.trials && a.seed == b.seed;
    }
};

namespace detail {

inline std::vector<double> linspace(double lo, double hi, int count)
{
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i)
        v[i] = lo + (hi - lo) * i / (count - 1);
    return v;
}

} // namespace detail

// Canonical sweeps behind the published figures, all with alpha = 3.76 and
// D0 = 50 m:
//   fig2: high-SNR gain surface over a (D, D0) grid with D >= D0 (no
//         simulation; rows carry a nominal 40 dB so the finite-SNR analytic
//         column stays defined).
//   fig3: gain vs. user count, K in {2,4,...,256}, D = 500 m, 0/20 dB,
//         M in {1,4}; K values not divisible by M are dropped per series.
//   fig4: gain vs. sum SNR 0..40 dB in 5 dB steps, K = 256,
//         D in {50,200,500}, M in {1,4}.
//   fig5: gain vs. antenna count M in {1,2,4,8}, K = 256, 40 dB,
//         D in {50,200,500}.
inline ExperimentSpec build_figure_spec(FigureId figure, const FigureOverrides& overrides = {})
{
    ExperimentSpec spec;
    spec.figure_id = figure;
    spec.trials = overrides.trials.value_or(10000);
    spec.seed = overrides.seed.value_or(1);

    SystemConfig base;
    base.inner_radius_m = 50.0;
    base.path_loss_exponent = 3.76;
    base.quadrature_order = overrides.quadrature_order.value_or(100);
    base.noise_power = 1.0;

    const auto push_point = [&](double d, int k, int m, double snr_db) {
        SystemConfig cfg = base;
        cfg.outer_radius_m = d;
        cfg.num_users = k;
        cfg.num_antennas = m;
        cfg.snr_sum_db = snr_db;
        spec.sweep.push_back(cfg);
    };

    switch (figure)
    {
    case FigureId::fig2_esg_surface:
    {
        spec.analytic_only = true;
        spec.output_path = overrides.output_path.value_or("fig2.csv");
        const int grid = overrides.surface_grid_points.value_or(50);
        if (grid < 2)
            throw std::invalid_argument("surface grid needs at least 2 points per axis");
        const std::vector<double> axis = detail::linspace(50.0, 500.0, grid);
        for (const double inner : axis)
        {
            for (const double outer : axis)
            {
                if (outer < inner)
                    continue;
                SystemConfig cfg = base;
                cfg.inner_radius_m = inner;
                cfg.outer_radius_m = outer;
                cfg.num_users = 256;
                cfg.num_antennas = 1;
                cfg.snr_sum_db = 40.0;
                spec.sweep.push_back(cfg);
            }
        }
        break;
    }
    case FigureId::fig3_esg_vs_k:
    {
        spec.output_path = overrides.output_path.value_or("fig3.csv");
        const std::vector<int> ms = overrides.antenna_counts.value_or(std::vector<int>{1, 4});
        const std::vector<double> snrs =
            overrides.snr_values_db.value_or(std::vector<double>{0.0, 20.0});
        const std::vector<int> ks =
            overrides.user_counts.value_or(std::vector<int>{2, 4, 8, 16, 32, 64, 128, 256});
        const std::vector<double> ds = overrides.outer_radii_m.value_or(std::vector<double>{500.0});
        for (const int m : ms)
            for (const double snr : snrs)
                for (const double d : ds)
                    for (const int k : ks)
                        if (k % m == 0)
                            push_point(d, k, m, snr);
        break;
    }
    case FigureId::fig4_esg_vs_snr:
    {
        spec.output_path = overrides.output_path.value_or("fig4.csv");
        const std::vector<int> ms = overrides.antenna_counts.value_or(std::vector<int>{1, 4});
        const std::vector<double> ds =
            overrides.outer_radii_m.value_or(std::vector<double>{50.0, 200.0, 500.0});
        std::vector<double> snrs;
        if (overrides.snr_values_db)
            snrs = *overrides.snr_values_db;
        else
            for (double s = 0.0; s <= 40.0; s += 5.0)
                snrs.push_back(s);
        const std::vector<int> ks = overrides.user_counts.value_or(std::vector<int>{256});
        for (const int m : ms)
            for (const double d : ds)
                for (const int k : ks)
                    for (const double snr : snrs)
                        if (k % m == 0)
                            push_point(d, k, m, snr);
        break;
    }
    case FigureId::fig5_esg_vs_m:
    {
        spec.output_path = overrides.output_path.value_or("fig5.csv");
        const std::vector<double> ds =
            overrides.outer_radii_m.value_or(std::vector<double>{50.0, 200.0, 500.0});
        const std::vector<int> ms = overrides.antenna_counts.value_or(std::vector<int>{1, 2, 4, 8});
        const std::vector<double> snrs = overrides.snr_values_db.value_or(std::vector<double>{40.0});
        const std::vector<int> ks = overrides.user_counts.value_or(std::vector<int>{256});
        for (const double d : ds)
            for (const int m : ms)
                for (const int k : ks)
                    for (const double snr : snrs)
                        if (k % m == 0)
                            push_point(d, k, m, snr);
        break;
    }
    case FigureId::custom:
        throw std::invalid_argument("custom experiments have no predefined sweep");
    }

    for (const SystemConfig& cfg : spec.sweep)
        validate_config(cfg, cfg.num_antennas > 1);
    if (spec.sweep.empty())
        throw std::invalid_argument("experiment sweep is empty");
    return spec;
}

// Runs every sweep point in order: closed-form gain, high-SNR limit, and
// (unless the spec is analytic-only) a Monte Carlo estimate on the point's
// own derived seed. The whole row sequence is a pure function of the spec.
inline std::vector<ResultRow> run_experiment(const ExperimentSpec& spec, int workers = 1)
{
    if (spec.sweep.empty())
        throw std::invalid_argument("experiment sweep is empty");
    std::vector<ResultRow> rows;
    rows.reserve(spec.sweep.size());
    for (std::size_t i = 0; i < spec.sweep.size(); ++i)
    {
        const SystemConfig cfg = validate_config(spec.sweep[i], spec.sweep[i].num_antennas > 1);
        const QuadratureParams q = build_quadrature(cfg);
        const LinkBudget lb = calibrate_power(q, cfg.num_antennas, cfg.snr_sum_db, cfg.noise_power);

        ResultRow row;
        row.config = cfg;
        row.analytic_esg = esg_mimo(q, cfg.num_antennas, lb);
        row.high_snr_esg = esg_mimo_high_snr(q, cfg.num_antennas);
        row.seed = derive_seed(spec.seed, static_cast<std::uint64_t>(i));
        if (!spec.analytic_only)
        {
            const EsgEstimate est = monte_carlo_esg(cfg, spec.trials, row.seed, workers);
            row.mc_esg = est.mean_esg;
            row.mc_std_error = est.std_error;
            row.trials = est.trials;
        }
        rows.push_back(row);
    }
    return rows;
}

namespace detail {

inline std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_optional(const std::optional<double>& v)
{
    return v ? format_double(*v) : std::string{};
}

} // namespace detail

inline std::string csv_header()
{
    return "d0_m,d_m,alpha,k,m,snr_db,quad_order,analytic_esg_nats,high_snr_esg_nats,"
           "mc_esg_nats,mc_stderr_nats,trials,seed";
}

inline std::string to_csv_line(const ResultRow& row)
{
    std::string line;
    line += detail::format_double(row.config.inner_radius_m);
    line += ',';
    line += detail::format_double(row.config.outer_radius_m);
    line += ',';
    line += detail::format_double(row.config.path_loss_exponent);
    line += ',';
    line += std::to_string(row.config.num_users);
    line += ',';
    line += std::to_string(row.config.num_antennas);
    line += ',';
    line += detail::format_double(row.config.snr_sum_db);
    line += ',';
    line += std::to_string(row.config.quadrature_order);
    line += ',';
    line += detail::format_double(row.analytic_esg);
    line += ',';
    line += detail::format_double(row.high_snr_esg);
    line += ',';
    line += detail::format_optional(row.mc_esg);
    line += ',';
    line += detail::format_optional(row.mc_std_error);
    line += ',';
    line += std::to_string(row.trials);
    line += ',';
    line += std::to_string(row.seed);
    return line;
}

// Writes the full dataset to <path>.tmp and renames it into place, so a
// crashed or failed run never leaves a partial file at the target path.
inline void write_csv(const std::vector<ResultRow>& rows, const std::string& path)
{
    const std::filesystem::path target(path);
    const std::filesystem::path tmp(path + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open output file: " + tmp.string());
        out << csv_header() << '\n';
        for (const ResultRow& row : rows)
            out << to_csv_line(row) << '\n';
        out.flush();
        if (!out)
            throw std::runtime_error("failed while writing: " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
}

inline std::vector<ResultRow> read_csv(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open input file: " + path);
    std::string line;
    if (!std::getline(in, line) || line != csv_header())
        throw std::runtime_error("unrecognized CSV header in " + path);

    std::vector<ResultRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (line.back() == ',')
            fields.emplace_back();
        if (fields.size() != 13)
            throw std::runtime_error("malformed CSV row in " + path);

        ResultRow row;
        row.config.inner_radius_m = std::stod(fields[0]);
        row.config.outer_radius_m = std::stod(fields[1]);
        row.config.path_loss_exponent = std::stod(fields[2]);
        row.config.num_users = std::stoi(fields[3]);
        row.config.num_antennas = std::stoi(fields[4]);
        row.config.snr_sum_db = std::stod(fields[5]);
        row.config.quadrature_order = std::stoi(fields[6]);
        row.analytic_esg = std::stod(fields[7]);
        row.high_snr_esg = std::stod(fields[8]);
        if (!fields[9].empty())
            row.mc_esg = std::stod(fields[9]);
        if (!fields[10].empty())
            row.mc_std_error = std::stod(fields[10]);
        row.trials = std::stol(fields[11]);
        row.seed = std::stoull(fields[12]);
        rows.push_back(row);
    }
    return rows;
}

} // namespace esg
