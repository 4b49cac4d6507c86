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
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "analytic_rates.hpp"
#include "geometry.hpp"
#include "matrix_kernels.hpp"
#include "rng.hpp"

namespace esg {

enum class Scheme
{
    siso_noma,
    siso_oma,
    mimo_noma,
    mimo_oma,
};

enum class SchemePair
{
    siso,
    mimo,
};

// One fading draw for all K users: columns of `channel` are h_k = g_k scaled
// by the distance gain, sorted so ||h_1||^2 >= ... >= ||h_K||^2 (users are
// indexed by channel strength). distances and norms_sq follow the sort.
struct ChannelRealization
{
    ComplexMatrix channel;          // M x K
    std::vector<double> distances;  // meters, aligned with columns
    std::vector<double> norms_sq;   // descending
};

// Per-user instantaneous rates for one scheme on one realization, nats/s/Hz.
struct RateBreakdown
{
    std::vector<double> per_user;
    double total = 0.0;
    Scheme scheme = Scheme::siso_noma;
};

struct EsgEstimate
{
    double mean_esg = 0.0;
    double std_error = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    SchemePair scheme_pair = SchemePair::siso;
};

// Draws one channel realization. Entries of g_k are CN(0,1) (independent
// real/imaginary parts of variance 1/2); column k is scaled by
// 1/sqrt(1 + d_k^alpha) for an inverse-CDF distance draw. Consumes a fixed
// draw pattern per user (one uniform, then M complex Gaussians) so a trial's
// stream is scheduling-independent.
inline ChannelRealization sample_channel(const SystemConfig& config, CounterRng& rng)
{
    const int num_rows = config.num_antennas;
    const int num_cols = config.num_users;

    std::vector<complexd> columns(static_cast<std::size_t>(num_rows) * num_cols);
    std::vector<double> distances(num_cols);
    std::vector<double> norms_sq(num_cols);
    for (int k = 0; k < num_cols; ++k)
    {
        const double d =
            sample_distance(config.inner_radius_m, config.outer_radius_m, rng.uniform_co());
        const double amp = std::sqrt(path_loss_gain(d, config.path_loss_exponent));
        distances[k] = d;
        double norm_sq = 0.0;
        for (int m = 0; m < num_rows; ++m)
        {
            const complexd h = amp * rng.next_cn();
            columns[static_cast<std::size_t>(k) * num_rows + m] = h;
            norm_sq += std::norm(h);
        }
        norms_sq[k] = norm_sq;
    }

    std::vector<int> order(num_cols);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (norms_sq[a] != norms_sq[b])
            return norms_sq[a] > norms_sq[b];
        return a < b;
    });

    ChannelRealization r;
    r.channel = ComplexMatrix(num_rows, num_cols);
    r.distances.resize(num_cols);
    r.norms_sq.resize(num_cols);
    for (int k = 0; k < num_cols; ++k)
    {
        const int src = order[k];
        r.distances[k] = distances[src];
        r.norms_sq[k] = norms_sq[src];
        for (int m = 0; m < num_rows; ++m)
            r.channel(m, k) = columns[static_cast<std::size_t>(src) * num_rows + m];
    }
    return r;
}

// SIC rates with decoding order 1..K and equal power p_k = P/K:
// R_k = ln(1 + p |h_k|^2 / (sum_{i>k} p |h_i|^2 + N0)). The per-user sum
// telescopes to ln(1 + (P/(K N0)) sum_k |h_k|^2).
inline RateBreakdown siso_noma_sum_rate(const ChannelRealization& r, const LinkBudget& lb)
{
    if (r.channel.rows() != 1)
        throw std::invalid_argument("siso_noma_sum_rate requires a single-antenna realization");
    const int num_users = r.channel.cols();
    const double p = lb.p_max / num_users;

    RateBreakdown out;
    out.scheme = Scheme::siso_noma;
    out.per_user.resize(num_users);
    double interference = 0.0;
    for (int k = num_users - 1; k >= 0; --k)
    {
        const double signal = p * r.norms_sq[k];
        out.per_user[k] = std::log1p(signal / (interference + lb.n0));
        interference += signal;
    }
    for (const double v : out.per_user)
        out.total += v;
    return out;
}

// Orthogonal baseline: each user gets a 1/K bandwidth slice and power P/K,
// so R_k = (1/K) ln(1 + (P/N0) |h_k|^2).
inline RateBreakdown siso_oma_sum_rate(const ChannelRealization& r, const LinkBudget& lb)
{
    if (r.channel.rows() != 1)
        throw std::invalid_argument("siso_oma_sum_rate requires a single-antenna realization");
    const int num_users = r.channel.cols();
    const double bandwidth = 1.0 / num_users;

    RateBreakdown out;
    out.scheme = Scheme::siso_oma;
    out.per_user.resize(num_users);
    for (int k = 0; k < num_users; ++k)
    {
        out.per_user[k] = bandwidth * std::log1p(lb.p_max * r.norms_sq[k] / lb.n0);
        out.total += out.per_user[k];
    }
    return out;
}

namespace detail {

inline void add_scaled_outer(ComplexMatrix& a, const ComplexMatrix& channel, int col,
                             double weight)
{
    const int n = a.rows();
    for (int i = 0; i < n; ++i)
    {
        for (int j = i; j < n; ++j)
        {
            a(i, j) += weight * channel(i, col) * std::conj(channel(j, col));
            if (j != i)
                a(j, i) = std::conj(a(i, j));
        }
    }
}

} // namespace detail

// MMSE-SIC rates, decoding order 1..K:
// R_k = ln|I + (1/N0) sum_{i>=k} p h_i h_i^H| - ln|I + (1/N0) sum_{i>k} ...|.
// The Gram matrix is accumulated from the weakest user upward so each step
// costs one rank-1 update plus one small Cholesky. The per-user sum
// telescopes to ln|I + (P/(K N0)) sum_k h_k h_k^H|.
inline RateBreakdown mimo_noma_sum_rate(const ChannelRealization& r, const LinkBudget& lb)
{
    const int num_rows = r.channel.rows();
    const int num_users = r.channel.cols();
    const double weight = lb.p_max / num_users / lb.n0;

    RateBreakdown out;
    out.scheme = Scheme::mimo_noma;
    out.per_user.resize(num_users);
    ComplexMatrix gram = ComplexMatrix::identity(num_rows);
    double prev_logdet = 0.0;
    for (int k = num_users - 1; k >= 0; --k)
    {
        detail::add_scaled_outer(gram, r.channel, k, weight);
        const double ld = logdet_hpd(gram);
        out.per_user[k] = ld - prev_logdet;
        prev_logdet = ld;
    }
    for (const double v : out.per_user)
        out.total += v;
    return out;
}

// Grouped FDMA-ZF rates: a fresh uniformly random partition into G = K/M
// groups of M users, ZF detection vectors per group, and
// R_k = (M/K) ln(1 + (P/(M N0)) |w_k^H h_k|^2). A singular group (probability
// zero for continuous fading) triggers a full regrouping, capped at 100
// attempts before a hard error.
inline RateBreakdown mimo_oma_sum_rate(const ChannelRealization& r, const LinkBudget& lb,
                                       CounterRng& rng)
{
    const int num_rows = r.channel.rows();
    const int num_users = r.channel.cols();
    if (num_users % num_rows != 0)
        throw std::invalid_argument("mimo_oma_sum_rate requires K divisible by M");
    const int num_groups = num_users / num_rows;
    const double bandwidth = static_cast<double>(num_rows) / num_users;
    const double power_over_group_noise = lb.p_max / (num_rows * lb.n0);

    RateBreakdown out;
    out.scheme = Scheme::mimo_oma;
    out.per_user.assign(num_users, 0.0);

    std::vector<int> perm(num_users);
    ComplexMatrix group_matrix(num_rows, num_rows);
    for (int attempt = 0; attempt < 100; ++attempt)
    {
        std::iota(perm.begin(), perm.end(), 0);
        for (int i = num_users - 1; i > 0; --i)
        {
            const auto j = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[i], perm[j]);
        }
        try
        {
            for (int g = 0; g < num_groups; ++g)
            {
                for (int i = 0; i < num_rows; ++i)
                    for (int m = 0; m < num_rows; ++m)
                        group_matrix(m, i) = r.channel(m, perm[g * num_rows + i]);
                const ZfVectors zf = zf_detection_vectors(group_matrix);
                for (int i = 0; i < num_rows; ++i)
                {
                    const int user = perm[g * num_rows + i];
                    complexd projected = 0.0;
                    for (int m = 0; m < num_rows; ++m)
                        projected += std::conj(zf.vectors[i][m]) * r.channel(m, user);
                    out.per_user[user] =
                        bandwidth * std::log1p(power_over_group_noise * std::norm(projected));
                }
            }
            out.total = 0.0;
            for (const double v : out.per_user)
                out.total += v;
            return out;
        }
        catch (const SingularMatrixError&)
        {
            // resample the grouping
        }
    }
    throw SingularMatrixError("mimo_oma_sum_rate: no nonsingular grouping found in 100 attempts");
}

// Instantaneous MMSE-SIC sum rate against its trace bound:
// lhs = ln|I + (P/(K N0)) sum h h^H|, rhs = M ln(1 + (P/(K M N0)) sum ||h||^2).
// lhs <= rhs always (AM-GM on the Gram eigenvalues); the gap closes as K
// grows.
inline std::pair<double, double> theorem1_bound(const ChannelRealization& r, const LinkBudget& lb)
{
    const int num_rows = r.channel.rows();
    const int num_users = r.channel.cols();
    const double weight = lb.p_max / num_users / lb.n0;

    ComplexMatrix gram = ComplexMatrix::identity(num_rows);
    for (int k = 0; k < num_users; ++k)
        detail::add_scaled_outer(gram, r.channel, k, weight);
    const double lhs = logdet_hpd(gram);

    double total_gain = 0.0;
    for (const double g : r.norms_sq)
        total_gain += g;
    const double rhs =
        num_rows * std::log1p(lb.p_max / (num_users * num_rows * lb.n0) * total_gain);
    return {lhs, rhs};
}

// Monte Carlo estimate of the ergodic sum-rate gain. Power is calibrated
// from the configured sum SNR; each trial draws one realization on its own
// counter substream, evaluates the NOMA and OMA totals for the configured
// antenna count (paired on the same realization for variance reduction), and
// the per-trial differences are reduced pairwise in trial order. The result
// is bitwise identical for any worker count.
inline EsgEstimate monte_carlo_esg(const SystemConfig& config, long trials, std::uint64_t seed,
                                   int workers = 1)
{
    const SystemConfig cfg = validate_config(config, config.num_antennas > 1);
    if (trials < 1)
        throw std::invalid_argument("monte_carlo_esg requires at least one trial");

    const QuadratureParams q = build_quadrature(cfg);
    const LinkBudget lb = calibrate_power(q, cfg.num_antennas, cfg.snr_sum_db, cfg.noise_power);
    const bool single_antenna = cfg.num_antennas == 1;

    std::vector<double> diffs(static_cast<std::size_t>(trials));
    const auto run_range = [&](long begin, long end) {
        for (long t = begin; t < end; ++t)
        {
            CounterRng rng(seed, static_cast<std::uint64_t>(t));
            const ChannelRealization r = sample_channel(cfg, rng);
            double noma, oma;
            if (single_antenna)
            {
                noma = siso_noma_sum_rate(r, lb).total;
                oma = siso_oma_sum_rate(r, lb).total;
            }
            else
            {
                noma = mimo_noma_sum_rate(r, lb).total;
                oma = mimo_oma_sum_rate(r, lb, rng).total;
            }
            diffs[static_cast<std::size_t>(t)] = noma - oma;
        }
    };

    if (workers <= 1)
    {
        run_range(0, trials);
    }
    else
    {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w)
        {
            const long begin = trials * w / workers;
            const long end = trials * (w + 1) / workers;
            if (begin < end)
                pool.emplace_back(run_range, begin, end);
        }
        for (std::thread& th : pool)
            th.join();
    }

    EsgEstimate est;
    est.trials = trials;
    est.seed = seed;
    est.scheme_pair = single_antenna ? SchemePair::siso : SchemePair::mimo;
    est.mean_esg = pairwise_sum(diffs) / static_cast<double>(trials);
    if (trials > 1)
    {
        std::vector<double> dev_sq(diffs.size());
        for (std::size_t i = 0; i < diffs.size(); ++i)
        {
            const double d = diffs[i] - est.mean_esg;
            dev_sq[i] = d * d;
        }
        est.std_error = std::sqrt(pairwise_sum(dev_sq) /
                                  (static_cast<double>(trials) * (static_cast<double>(trials) - 1.0)));
    }
    return est;
}

} // namespace esg
