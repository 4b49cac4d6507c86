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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "geometry.hpp"
#include "special_functions.hpp"

namespace esg {

// Gauss-Chebyshev representation of the channel-gain distribution. The cell
// geometry maps to node weights beta_n (meters) and composite path-loss
// coefficients c_n = 1 + z_n^alpha >= 1; every distribution-level quantity
// (CDF, PDF, mean gain, ergodic rates) is a weighted sum over these terms.
// The weights are renormalized so sum(beta_n) == D + D0 holds to machine
// precision; the raw Chebyshev weights carry an O(1/N^2) normalization excess
// that would otherwise leak into CDF(0), the density mass, and the AM-GM
// identity behind the near-far gain.
struct QuadratureParams
{
    std::vector<double> betas;  // beta_n > 0, sum == D + D0
    std::vector<double> cs;     // c_n >= 1
    double outer_radius_m = 0.0;
    double inner_radius_m = 0.0;
    double path_loss_exponent = 0.0;
    bool is_degenerate = false;

    double weight_norm() const { return outer_radius_m + inner_radius_m; }
    std::size_t size() const { return betas.size(); }
};

// Builds the N-term representation, or the exact single-term one when
// D == D0 (all users on a circle: the gain is plain exponential with rate
// 1 + D0^alpha, which the N-term formula only reaches as N -> infinity).
inline QuadratureParams build_quadrature(const SystemConfig& config)
{
    const SystemConfig cfg = validate_config(config);
    const double d0 = cfg.inner_radius_m;
    const double d = cfg.outer_radius_m;
    const double alpha = cfg.path_loss_exponent;

    QuadratureParams params;
    params.outer_radius_m = d;
    params.inner_radius_m = d0;
    params.path_loss_exponent = alpha;

    if (d - d0 <= 1e-12 * d)
    {
        params.is_degenerate = true;
        params.betas = {d + d0};
        params.cs = {1.0 + std::pow(d0, alpha)};
        return params;
    }

    const int n_terms = cfg.quadrature_order;
    params.betas.resize(n_terms);
    params.cs.resize(n_terms);
    constexpr double pi = 3.14159265358979323846;
    for (int n = 1; n <= n_terms; ++n)
    {
        const double theta = (2.0 * n - 1.0) * pi / (2.0 * n_terms);
        const double node = 0.5 * (d - d0) * std::cos(theta) + 0.5 * (d + d0);
        params.betas[n - 1] = pi / n_terms * std::abs(std::sin(theta)) * node;
        params.cs[n - 1] = 1.0 + std::pow(node, alpha);
    }
    const double raw_sum = std::accumulate(params.betas.begin(), params.betas.end(), 0.0);
    const double scale = (d + d0) / raw_sum;
    for (double& beta : params.betas)
        beta *= scale;
    return params;
}

// CDF of the single-antenna channel gain |h|^2:
// F(x) = 1 - (1/(D+D0)) sum_n beta_n e^{-c_n x}, clamped to [0,1].
inline double channel_cdf_siso(const QuadratureParams& q, double x)
{
    if (x < 0.0)
        throw std::domain_error("channel gain must be nonnegative");
    double tail = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
        tail += q.betas[n] * std::exp(-q.cs[n] * x);
    return std::clamp(1.0 - tail / q.weight_norm(), 0.0, 1.0);
}

// Density of |h|^2: (1/(D+D0)) sum_n beta_n c_n e^{-c_n x}.
inline double channel_pdf_siso(const QuadratureParams& q, double x)
{
    if (x < 0.0)
        throw std::domain_error("channel gain must be nonnegative");
    double density = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
        density += q.betas[n] * q.cs[n] * std::exp(-q.cs[n] * x);
    return density / q.weight_norm();
}

// Average channel power gain E[|h|^2] = (1/(D+D0)) sum_n beta_n / c_n.
inline double mean_channel_power_siso(const QuadratureParams& q)
{
    double acc = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
        acc += q.betas[n] / q.cs[n];
    return acc / q.weight_norm();
}

// CDF of the M-antenna channel gain ||h||^2, which is Gamma(M, c)-mixed over
// the path loss: F(x) = (1/(D+D0)) sum_n beta_n P(M, c_n x) with P the
// regularized lower incomplete gamma. M = 1 delegates to the exponential
// form so the reduction is bit-exact.
inline double channel_cdf_mimo(const QuadratureParams& q, int num_antennas, double x)
{
    if (num_antennas < 1)
        throw std::domain_error("antenna count must be positive");
    if (x < 0.0)
        throw std::domain_error("channel gain must be nonnegative");
    if (num_antennas == 1)
        return channel_cdf_siso(q, x);
    double acc = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
        acc += q.betas[n] * gamma_regularized_p_int(num_antennas, q.cs[n] * x);
    return std::clamp(acc / q.weight_norm(), 0.0, 1.0);
}

// E[||h||^2] = M * E[|h|^2].
inline double mean_channel_power_mimo(const QuadratureParams& q, int num_antennas)
{
    if (num_antennas < 1)
        throw std::domain_error("antenna count must be positive");
    return static_cast<double>(num_antennas) * mean_channel_power_siso(q);
}

} // namespace esg
