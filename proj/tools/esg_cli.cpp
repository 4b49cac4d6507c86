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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <esg/esg.hpp>

namespace {

struct GlobalArgs
{
    std::uint64_t seed = 1;
    long trials = 10000;
    std::string out;
    int quad_order = 100;
    int workers = 1;
};

struct PointArgs
{
    double d0 = 50.0;
    double d = 500.0;
    double alpha = 3.76;
    int k = 256;
    int m = 1;
    double snr_db = 20.0;
    double noise = 1.0;
};

esg::SystemConfig make_config(const PointArgs& p, int quad_order)
{
    esg::SystemConfig cfg;
    cfg.inner_radius_m = p.d0;
    cfg.outer_radius_m = p.d;
    cfg.path_loss_exponent = p.alpha;
    cfg.num_users = p.k;
    cfg.num_antennas = p.m;
    cfg.quadrature_order = quad_order;
    cfg.noise_power = p.noise;
    cfg.snr_sum_db = p.snr_db;
    return cfg;
}

void add_point_options(CLI::App* cmd, PointArgs& p)
{
    cmd->add_option("--d0", p.d0, "inner cell radius in meters");
    cmd->add_option("--d", p.d, "outer cell radius in meters");
    cmd->add_option("--alpha", p.alpha, "path loss exponent");
    cmd->add_option("--k", p.k, "number of users");
    cmd->add_option("--m", p.m, "number of base-station antennas");
    cmd->add_option("--snr", p.snr_db, "received sum SNR in dB");
    cmd->add_option("--noise", p.noise, "linear noise power N0");
}

void print_analytic(const esg::SystemConfig& cfg, const esg::QuadratureParams& q,
                    const esg::LinkBudget& lb)
{
    std::cout << "d0_m = " << cfg.inner_radius_m << '\n'
              << "d_m = " << cfg.outer_radius_m << '\n'
              << "alpha = " << cfg.path_loss_exponent << '\n'
              << "k = " << cfg.num_users << '\n'
              << "m = " << cfg.num_antennas << '\n'
              << "snr_db = " << cfg.snr_sum_db << '\n'
              << "quad_order = " << cfg.quadrature_order << '\n'
              << "p_max = " << lb.p_max << '\n'
              << "mean_channel_power = " << esg::mean_channel_power_siso(q) << '\n'
              << "noma_rate_nats = " << esg::mimo_noma_asymptotic_rate(q, cfg.num_antennas, lb)
              << '\n'
              << "oma_rate_nats = " << esg::mimo_oma_ergodic_rate(q, cfg.num_antennas, lb) << '\n'
              << "near_far_gain_nats = " << esg::large_scale_near_far_gain(q) << '\n'
              << "analytic_esg_nats = " << esg::esg_mimo(q, cfg.num_antennas, lb) << '\n'
              << "high_snr_esg_nats = " << esg::esg_mimo_high_snr(q, cfg.num_antennas) << '\n';
}

esg::FigureId figure_from_number(int figure)
{
    switch (figure)
    {
    case 2:
        return esg::FigureId::fig2_esg_surface;
    case 3:
        return esg::FigureId::fig3_esg_vs_k;
    case 4:
        return esg::FigureId::fig4_esg_vs_snr;
    case 5:
        return esg::FigureId::fig5_esg_vs_m;
    default:
        throw std::invalid_argument("unknown figure id " + std::to_string(figure) +
                                    " (expected 2, 3, 4 or 5)");
    }
}

std::vector<esg::SystemConfig> parse_sweep_file(const std::string& path, int default_quad_order)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open sweep config: " + path);
    nlohmann::json doc = nlohmann::json::parse(in);
    if (!doc.is_array())
        throw std::runtime_error("sweep config must be a JSON array of points");

    std::vector<esg::SystemConfig> points;
    for (const auto& item : doc)
    {
        if (!item.is_object())
            throw std::runtime_error("sweep points must be flat JSON objects");
        esg::SystemConfig cfg;
        cfg.inner_radius_m = item.at("d0_m").get<double>();
        cfg.outer_radius_m = item.at("d_m").get<double>();
        cfg.path_loss_exponent = item.at("alpha").get<double>();
        cfg.num_users = item.at("k").get<int>();
        cfg.num_antennas = item.at("m").get<int>();
        cfg.snr_sum_db = item.at("snr_db").get<double>();
        cfg.quadrature_order = item.value("quad_order", default_quad_order);
        cfg.noise_power = item.value("noise_power", 1.0);
        points.push_back(esg::validate_config(cfg, cfg.num_antennas > 1));
    }
    if (points.empty())
        throw std::runtime_error("sweep config contains no points");
    return points;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"ergodic sum-rate gain of uplink NOMA over OMA"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalArgs g;
    app.add_option("--seed", g.seed, "master random seed");
    app.add_option("--trials", g.trials, "Monte Carlo trials per sweep point")
        ->check(CLI::PositiveNumber);
    app.add_option("--out", g.out, "output CSV path");
    app.add_option("--quad-order", g.quad_order, "Gauss-Chebyshev term count")
        ->check(CLI::Range(2, 100000));
    app.add_option("--workers", g.workers, "worker threads for Monte Carlo trials")
        ->check(CLI::Range(1, 1024));

    PointArgs analytic_point;
    CLI::App* analytic = app.add_subcommand("analytic", "closed-form rates and gain at one point");
    add_point_options(analytic, analytic_point);

    PointArgs simulate_point;
    CLI::App* simulate =
        app.add_subcommand("simulate", "Monte Carlo gain estimate at one point");
    add_point_options(simulate, simulate_point);

    int figure_number = 0;
    std::vector<double> fig_d, fig_snr;
    std::vector<int> fig_m, fig_k;
    int fig_grid = 0;
    CLI::App* reproduce = app.add_subcommand("reproduce", "emit a full figure dataset as CSV");
    reproduce->add_option("--figure", figure_number, "figure id: 2, 3, 4 or 5")->required();
    reproduce->add_option("--d", fig_d, "override outer radii (m)");
    reproduce->add_option("--m", fig_m, "override antenna counts");
    reproduce->add_option("--k", fig_k, "override user counts");
    reproduce->add_option("--snr", fig_snr, "override sum-SNR values (dB)");
    reproduce->add_option("--grid", fig_grid, "surface grid points per axis (figure 2)");

    std::string sweep_config;
    CLI::App* sweep = app.add_subcommand("sweep", "run a custom sweep from a JSON point list");
    sweep->add_option("--config", sweep_config, "JSON file with an array of sweep points")
        ->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        return app.exit(e);
    }

    try
    {
        if (*analytic)
        {
            const esg::SystemConfig cfg =
                esg::validate_config(make_config(analytic_point, g.quad_order));
            const esg::QuadratureParams q = esg::build_quadrature(cfg);
            const esg::LinkBudget lb =
                esg::calibrate_power(q, cfg.num_antennas, cfg.snr_sum_db, cfg.noise_power);
            print_analytic(cfg, q, lb);
        }
        else if (*simulate)
        {
            const esg::SystemConfig cfg = esg::validate_config(
                make_config(simulate_point, g.quad_order), simulate_point.m > 1);
            const esg::QuadratureParams q = esg::build_quadrature(cfg);
            const esg::LinkBudget lb =
                esg::calibrate_power(q, cfg.num_antennas, cfg.snr_sum_db, cfg.noise_power);
            print_analytic(cfg, q, lb);
            const esg::EsgEstimate est = esg::monte_carlo_esg(cfg, g.trials, g.seed, g.workers);
            std::cout << "mc_esg_nats = " << est.mean_esg << '\n'
                      << "mc_stderr_nats = " << est.std_error << '\n'
                      << "trials = " << est.trials << '\n'
                      << "seed = " << est.seed << '\n';
        }
        else if (*reproduce)
        {
            esg::FigureOverrides overrides;
            if (!fig_d.empty())
                overrides.outer_radii_m = fig_d;
            if (!fig_m.empty())
                overrides.antenna_counts = fig_m;
            if (!fig_k.empty())
                overrides.user_counts = fig_k;
            if (!fig_snr.empty())
                overrides.snr_values_db = fig_snr;
            if (fig_grid > 0)
                overrides.surface_grid_points = fig_grid;
            overrides.quadrature_order = g.quad_order;
            overrides.trials = g.trials;
            overrides.seed = g.seed;
            if (!g.out.empty())
                overrides.output_path = g.out;

            const esg::ExperimentSpec spec =
                esg::build_figure_spec(figure_from_number(figure_number), overrides);
            const std::vector<esg::ResultRow> rows = esg::run_experiment(spec, g.workers);
            esg::write_csv(rows, spec.output_path);
            std::cout << "wrote " << spec.output_path << " (" << rows.size() << " rows)\n";
        }
        else if (*sweep)
        {
            esg::ExperimentSpec spec;
            spec.figure_id = esg::FigureId::custom;
            spec.sweep = parse_sweep_file(sweep_config, g.quad_order);
            spec.trials = g.trials;
            spec.seed = g.seed;
            spec.output_path = g.out.empty() ? "sweep.csv" : g.out;
            const std::vector<esg::ResultRow> rows = esg::run_experiment(spec, g.workers);
            esg::write_csv(rows, spec.output_path);
            std::cout << "wrote " << spec.output_path << " (" << rows.size() << " rows)\n";
        }
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
