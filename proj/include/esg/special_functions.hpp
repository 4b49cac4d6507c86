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
#include <limits>
#include <stdexcept>

namespace esg {

// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.5772156649015329;

namespace detail {

// Power series E1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!),
// used for 0 < x <= 1 where it converges in ~25 terms.
inline double e1_series(double x)
{
    double sum = 0.0;
    double term = 1.0;
    for (int k = 1; k <= 64; ++k)
    {
        term *= -x / k;
        const double contrib = -term / k;
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * (std::abs(sum) + 1e-300))
            break;
    }
    return -euler_gamma - std::log(x) + sum;
}

// Continued fraction for e^x E1(x), evaluated with the modified Lentz
// scheme: e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- 9/(...)))). Converges for
// x > 1 and stays bounded for arbitrarily large x, so the caller never
// multiplies an overflowing e^x against an underflowing E1.
inline double e1_scaled_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 20000; ++i)
    {
        const double a = -static_cast<double>(i) * static_cast<double>(i);
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny)
            d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
            break;
    }
    return h;
}

} // namespace detail

// e^x E1(x) for x > 0, overflow-free for the whole double range.
inline double exp_e1_scaled(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_e1_scaled requires x > 0");
    if (x <= 1.0)
        return std::exp(x) * detail::e1_series(x);
    return detail::e1_scaled_continued_fraction(x);
}

// Exponential integral E1(x) = int_1^inf e^{-xt}/t dt for x > 0.
// Series below the x = 1 switchover, scaled continued fraction above it;
// returns 0 once e^{-x} underflows to zero.
inline double exp_integral_e1(double x)
{
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1 requires x > 0");
    if (x <= 1.0)
        return detail::e1_series(x);
    const double damping = std::exp(-x);
    if (damping == 0.0)
        return 0.0;
    return damping * detail::e1_scaled_continued_fraction(x);
}

// Regularized lower incomplete gamma P(m, x) for integer shape m >= 1.
// Series for x < m+1 (no cancellation at small x), complement of the finite
// Poisson tail otherwise. m = 1 is expm1-exact.
inline double gamma_regularized_p_int(int m, double x)
{
    if (m < 1)
        throw std::domain_error("gamma_regularized_p_int requires m >= 1");
    if (x < 0.0)
        throw std::domain_error("gamma_regularized_p_int requires x >= 0");
    if (x == 0.0)
        return 0.0;
    if (m == 1)
        return -std::expm1(-x);
    if (x < static_cast<double>(m) + 1.0)
    {
        // P(m,x) = x^m e^{-x} / m! * sum_{j>=0} x^j m! / (m+j)!
        double ap = static_cast<double>(m);
        double term = 1.0 / ap;
        double sum = term;
        for (int j = 0; j < 500; ++j)
        {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (term < sum * 1e-17)
                break;
        }
        return sum * std::exp(-x + m * std::log(x) - std::lgamma(static_cast<double>(m)));
    }
    // Q(m,x) = e^{-x} sum_{k<m} x^k/k! is at most ~1/2 here, so 1-Q is safe.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < m; ++k)
    {
        term *= x / k;
        sum += term;
    }
    return 1.0 - std::exp(-x) * sum;
}

// Lower incomplete gamma for integer shape: gamma_L(m, x) = (m-1)! P(m, x)
// = (m-1)! (1 - e^{-x} sum_{k<m} x^k/k!).
inline double lower_incomplete_gamma_int(int m, double x)
{
    if (m < 1)
        throw std::domain_error("lower_incomplete_gamma_int requires m >= 1");
    if (x < 0.0)
        throw std::domain_error("lower_incomplete_gamma_int requires x >= 0");
    double factorial = 1.0;
    for (int k = 2; k < m; ++k)
        factorial *= k;
    return factorial * gamma_regularized_p_int(m, x);
}

// Gamma(m, rate) density at x: rate^m x^{m-1} e^{-rate x} / (m-1)!.
inline double gamma_pdf(int m, double rate, double x)
{
    if (m < 1)
        throw std::domain_error("gamma_pdf requires m >= 1");
    if (!(rate > 0.0))
        throw std::domain_error("gamma_pdf requires rate > 0");
    if (x < 0.0)
        throw std::domain_error("gamma_pdf requires x >= 0");
    if (m == 1)
        return rate * std::exp(-rate * x);
    double value = rate * std::exp(-rate * x);
    for (int k = 1; k < m; ++k)
        value *= rate * x / k;
    return value;
}

} // namespace esg
