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
#include <string>

namespace esg {

// Single-cell system description. Users are dropped uniformly on the annulus
// between inner_radius_m and outer_radius_m around the base station; the
// degenerate circle (equal radii) is a valid configuration. Radii are in
// meters, rates everywhere are natural-log units (nats/s/Hz), and the noise
// power is linear with transmit power derived from snr_sum_db by calibration.
struct SystemConfig
{
    double inner_radius_m = 50.0;   // D0
    double outer_radius_m = 500.0;  // D
    double path_loss_exponent = 3.76;
    int num_users = 256;            // K
    int num_antennas = 1;           // M
    int quadrature_order = 100;     // N
    double noise_power = 1.0;       // N0, linear
    double snr_sum_db = 0.0;        // received sum SNR target at the BS
};

enum class ConfigError
{
    non_positive_radius,
    outer_less_than_inner,
    non_positive_path_loss_exponent,
    non_positive_user_count,
    non_positive_antenna_count,
    users_not_divisible_by_antennas,
    quadrature_order_too_small,
    non_positive_noise_power,
};

class ConfigValidationError : public std::invalid_argument
{
  public:
    ConfigValidationError(ConfigError code, const std::string& what)
        : std::invalid_argument(what), code_(code)
    {
    }
    ConfigError code() const noexcept { return code_; }

  private:
    ConfigError code_;
};

// Checks every invariant and returns the config unchanged. The divisibility
// constraint K mod M == 0 only binds when a grouped ZF (MIMO-OMA) evaluation
// is requested; analytic MIMO formulas do not group users.
inline SystemConfig validate_config(const SystemConfig& raw, bool zf_grouping_required = false)
{
    if (!(raw.inner_radius_m > 0.0) || !(raw.outer_radius_m > 0.0))
        throw ConfigValidationError(ConfigError::non_positive_radius,
                                    "cell radii must be positive");
    if (raw.outer_radius_m < raw.inner_radius_m)
        throw ConfigValidationError(ConfigError::outer_less_than_inner,
                                    "outer radius smaller than inner radius");
    if (!(raw.path_loss_exponent > 0.0))
        throw ConfigValidationError(ConfigError::non_positive_path_loss_exponent,
                                    "path loss exponent must be positive");
    if (raw.num_users < 1)
        throw ConfigValidationError(ConfigError::non_positive_user_count,
                                    "number of users must be positive");
    if (raw.num_antennas < 1)
        throw ConfigValidationError(ConfigError::non_positive_antenna_count,
                                    "number of antennas must be positive");
    if (zf_grouping_required && raw.num_users % raw.num_antennas != 0)
        throw ConfigValidationError(
            ConfigError::users_not_divisible_by_antennas,
            "K (" + std::to_string(raw.num_users) + ") not divisible by M (" +
                std::to_string(raw.num_antennas) + ")");
    if (raw.quadrature_order < 2)
        throw ConfigValidationError(ConfigError::quadrature_order_too_small,
                                    "quadrature order must be at least 2");
    if (!(raw.noise_power > 0.0))
        throw ConfigValidationError(ConfigError::non_positive_noise_power,
                                    "noise power must be positive");
    return raw;
}

// Inverse-CDF draw of the user distance: density f_d(z) = 2z/(D^2 - D0^2) on
// [D0, D], so d = sqrt(D0^2 + u (D^2 - D0^2)). u = 0 maps to D0 exactly; the
// degenerate circle D = D0 returns D0 for every u.
inline double sample_distance(double inner_radius_m, double outer_radius_m, double u)
{
    const double lo2 = inner_radius_m * inner_radius_m;
    const double hi2 = outer_radius_m * outer_radius_m;
    return std::sqrt(lo2 + u * (hi2 - lo2));
}

// Distance-based power gain 1/(1 + d^alpha).
inline double path_loss_gain(double distance_m, double path_loss_exponent)
{
    return 1.0 / (1.0 + std::pow(distance_m, path_loss_exponent));
}

} // namespace esg
