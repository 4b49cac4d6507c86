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

#include <cmath>
#include <stdexcept>

#include "quadrature.hpp"
#include "special_functions.hpp"

namespace esg {

// Total transmit power budget under equal resource allocation: the K users
// split p_max evenly (p_k = p_max/K), and OMA additionally splits bandwidth
// evenly. n0 is the linear noise power.
struct LinkBudget
{
    double p_max = 1.0;
    double n0 = 1.0;
};

// Large-user-count NOMA sum rate in single-antenna cells:
// ln(1 + (P/N0) E[|h|^2]). An upper bound for finite K (Jensen); the Monte
// Carlo simulator quantifies the finite-K gap.
inline double siso_noma_asymptotic_rate(const QuadratureParams& q, const LinkBudget& lb)
{
    if (lb.p_max == 0.0)
        return 0.0;
    return std::log1p(lb.p_max / lb.n0 * mean_channel_power_siso(q));
}

// Ergodic SISO-OMA sum rate, exact for any K:
// (1/(D+D0)) sum_n beta_n e^{x_n} E1(x_n) with x_n = c_n N0 / P. The
// scaled-product form keeps e^{x} E1(x) finite when P is tiny or c_n huge.
inline double siso_oma_ergodic_rate(const QuadratureParams& q, const LinkBudget& lb)
{
    if (lb.p_max == 0.0)
        return 0.0;
    double acc = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
        acc += q.betas[n] * exp_e1_scaled(q.cs[n] * lb.n0 / lb.p_max);
    return acc / q.weight_norm();
}

// Asymptotic ergodic sum-rate gain of SISO-NOMA over SISO-OMA.
inline double esg_siso(const QuadratureParams& q, const LinkBudget& lb)
{
    return siso_noma_asymptotic_rate(q, lb) - siso_oma_ergodic_rate(q, lb);
}

// Large-scale near-far gain: the AM-GM gap of the inverse composite path
// loss under the normalized weights w_n = beta_n/(D+D0),
//   theta = ln(sum_n w_n / c_n) - sum_n w_n ln(1/c_n)  >= 0,
// with equality exactly when all c_n coincide (D == D0).
inline double large_scale_near_far_gain(const QuadratureParams& q)
{
    if (q.size() == 1)
        return 0.0;
    double mean_inv = 0.0;
    double mean_log_inv = 0.0;
    for (std::size_t n = 0; n < q.size(); ++n)
    {
        const double w = q.betas[n] / q.weight_norm();
        mean_inv += w / q.cs[n];
        mean_log_inv -= w * std::log(q.cs[n]);
    }
    return std::log(mean_inv) - mean_log_inv;
}

// High-SNR limit of the SISO gain: theta(D, D0) + gamma. The constant term
// is the small-scale (Rayleigh) near-far gain.
inline double esg_siso_high_snr(const QuadratureParams& q)
{
    return large_scale_near_far_gain(q) + euler_gamma;
}

// Asymptotic MIMO-NOMA sum rate: M ln(1 + (P/(M N0)) E[||h||^2]), which is
// exactly M times the SISO expression since E[||h||^2] = M E[|h|^2].
inline double mimo_noma_asymptotic_rate(const QuadratureParams& q, int num_antennas,
                                        const LinkBudget& lb)
{
    if (num_antennas < 1)
        throw std::domain_error("antenna count must be positive");
    return static_cast<double>(num_antennas) * siso_noma_asymptotic_rate(q, lb);
}

// Ergodic MIMO-OMA (grouped FDMA-ZF) sum rate:
// (M/(D+D0)) sum_n beta_n e^{x_n} E1(x_n) with x_n = c_n M N0 / P.
inline double mimo_oma_ergodic_rate(const QuadratureParams& q, int num_antennas,
                                    const LinkBudget& lb)
{
    if (num_antennas < 1)
        throw std::domain_error("antenna count must be positive");
    const LinkBudget scaled{lb.p_max, static_cast<double>(num_antennas) * lb.n0};
    return static_cast<double>(num_antennas) * siso_oma_ergodic_rate(q, scaled);
}

// Asymptotic ergodic sum-rate gain of MIMO-NOMA over MIMO-OMA.
inline double esg_mimo(const QuadratureParams& q, int num_antennas, const LinkBudget& lb)
{
    return mimo_noma_asymptotic_rate(q, num_antennas, lb) -
           mimo_oma_ergodic_rate(q, num_antennas, lb);
}

// High-SNR MIMO gain: M theta + M ln M + M gamma. Relative to the SISO
// limit this is an M-fold amplification plus the M ln M power advantage of
// avoiding the per-group ZF projection loss.
inline double esg_mimo_high_snr(const QuadratureParams& q, int num_antennas)
{
    if (num_antennas < 1)
        throw std::domain_error("antenna count must be positive");
    const double m = static_cast<double>(num_antennas);
    return m * large_scale_near_far_gain(q) + m * std::log(m) + m * euler_gamma;
}

// Solves the sum-SNR calibration for the total power:
// P = 10^(snr_db/10) N0 / E[|h|^2]. Routed through the M-antenna mean so the
// identity E[||h||^2]/M == E[|h|^2] keeps both branches consistent.
inline LinkBudget calibrate_power(const QuadratureParams& q, int num_antennas,
                                  double snr_sum_db, double n0)
{
    if (!(n0 > 0.0))
        throw std::domain_error("noise power must be positive");
    const double snr_linear = std::pow(10.0, snr_sum_db / 10.0);
    const double mean_gain =
        mean_channel_power_mimo(q, num_antennas) / static_cast<double>(num_antennas);
    return LinkBudget{snr_linear * n0 / mean_gain, n0};
}

// Received sum SNR with inter-cell interference folded into the noise floor:
// (P/(beta_icl P + N0)) E[|h|^2]. beta_icl = 0 recovers the single-cell SNR;
// large P saturates at the interference-limited ceiling mean_gain/beta_icl.
inline double multicell_snr(double p_max, double n0, double beta_icl, double mean_gain)
{
    if (beta_icl < 0.0)
        throw std::domain_error("interference coefficient must be nonnegative");
    return p_max / (beta_icl * p_max + n0) * mean_gain;
}

} // namespace esg
