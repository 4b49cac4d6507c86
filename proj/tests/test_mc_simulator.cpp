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

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <esg/mc_simulator.hpp>

#include "support/oracles.hpp"

using esg::ChannelRealization;
using esg::complexd;
using esg::ComplexMatrix;
using esg::CounterRng;
using esg::LinkBudget;
using esg::SystemConfig;

namespace {

SystemConfig make_config(double d0, double d, int k, int m, double snr_db = 20.0)
{
    SystemConfig cfg;
    cfg.inner_radius_m = d0;
    cfg.outer_radius_m = d;
    cfg.path_loss_exponent = 3.76;
    cfg.num_users = k;
    cfg.num_antennas = m;
    cfg.quadrature_order = 100;
    cfg.snr_sum_db = snr_db;
    return cfg;
}

// hand-built single-antenna realization with prescribed gains
ChannelRealization manual_siso(const std::vector<double>& norms)
{
    ChannelRealization r;
    r.channel = ComplexMatrix(1, static_cast<int>(norms.size()));
    for (std::size_t k = 0; k < norms.size(); ++k)
        r.channel(0, static_cast<int>(k)) = std::sqrt(norms[k]);
    r.norms_sq = norms;
    r.distances.assign(norms.size(), 0.0);
    return r;
}

ChannelRealization permute_columns(const ChannelRealization& r, const std::vector<int>& perm)
{
    ChannelRealization out;
    const int rows = r.channel.rows();
    const int cols = r.channel.cols();
    out.channel = ComplexMatrix(rows, cols);
    out.distances.resize(cols);
    out.norms_sq.resize(cols);
    for (int k = 0; k < cols; ++k)
    {
        out.distances[k] = r.distances[perm[k]];
        out.norms_sq[k] = r.norms_sq[perm[k]];
        for (int m = 0; m < rows; ++m)
            out.channel(m, k) = r.channel(m, perm[k]);
    }
    return out;
}

} // namespace

TEST_CASE("sample_channel produces unit-variance fading entries")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 25, 4);
    double sum = 0.0;
    double sum_sq = 0.0;
    long count = 0;
    for (int t = 0; t < 10000; ++t)
    {
        CounterRng rng(11, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        for (int k = 0; k < cfg.num_users; ++k)
        {
            CHECK(r.distances[k] >= 50.0);
            CHECK(r.distances[k] <= 500.0);
            const double undo = 1.0 + std::pow(r.distances[k], cfg.path_loss_exponent);
            for (int m = 0; m < cfg.num_antennas; ++m)
            {
                const double g2 = std::norm(r.channel(m, k)) * undo;
                sum += g2;
                sum_sq += g2 * g2;
                ++count;
            }
        }
        for (int k = 1; k < cfg.num_users; ++k)
            REQUIRE(r.norms_sq[k] <= r.norms_sq[k - 1]);
    }
    const double n = static_cast<double>(count);
    const double mean = sum / n;
    const double std_err = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 3.0 * std_err);
}

TEST_CASE("sample_channel gains follow the degenerate-circle exponential law")
{
    const SystemConfig cfg = make_config(50.0, 50.0, 100, 1);
    std::vector<double> samples;
    samples.reserve(1'000'000);
    for (int t = 0; t < 10000; ++t)
    {
        CounterRng rng(29, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        samples.insert(samples.end(), r.norms_sq.begin(), r.norms_sq.end());
    }
    const double rate = 1.0 + std::pow(50.0, 3.76);
    const auto cdf = [rate](double x) { return 1.0 - std::exp(-rate * x); };
    CHECK(oracle::ks_statistic(std::move(samples), cdf) < 0.005);
}

TEST_CASE("sample_channel norms match column sums and stay sorted")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 64, 2);
    CounterRng rng(5, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    for (int k = 0; k < cfg.num_users; ++k)
    {
        double norm = 0.0;
        for (int m = 0; m < cfg.num_antennas; ++m)
            norm += std::norm(r.channel(m, k));
        CHECK(norm == Catch::Approx(r.norms_sq[k]).epsilon(1e-12));
    }
}

TEST_CASE("siso NOMA rates on a two-user hand example")
{
    const ChannelRealization r = manual_siso({1.0, 0.5});
    const LinkBudget lb{2.0, 1.0};  // p_k = 1 each
    const esg::RateBreakdown out = esg::siso_noma_sum_rate(r, lb);
    REQUIRE(out.per_user.size() == 2);
    CHECK(out.per_user[0] == Catch::Approx(std::log(1.0 + 1.0 / 1.5)).epsilon(1e-14));
    CHECK(out.per_user[1] == Catch::Approx(std::log(1.5)).epsilon(1e-14));
    CHECK(out.total == Catch::Approx(std::log(2.5)).epsilon(1e-12));
    CHECK(out.total == Catch::Approx(0.91629073187415507).epsilon(1e-12));

    // telescoped closed form
    CHECK(out.total ==
          Catch::Approx(std::log1p(lb.p_max / (2.0 * lb.n0) * 1.5)).epsilon(1e-12));
}

TEST_CASE("siso rates edge cases")
{
    const ChannelRealization one = manual_siso({0.7});
    const LinkBudget lb{3.0, 1.0};
    CHECK(esg::siso_noma_sum_rate(one, lb).total ==
          Catch::Approx(std::log1p(3.0 * 0.7)).epsilon(1e-14));
    CHECK(esg::siso_noma_sum_rate(one, lb).total ==
          Catch::Approx(esg::siso_oma_sum_rate(one, lb).total).epsilon(1e-14));

    const ChannelRealization two = manual_siso({1.0, 0.5});
    const LinkBudget zero{0.0, 1.0};
    CHECK(esg::siso_noma_sum_rate(two, zero).total == 0.0);
    CHECK(esg::siso_oma_sum_rate(two, zero).total == 0.0);

    const SystemConfig mimo_cfg = make_config(50.0, 500.0, 8, 2);
    CounterRng rng(1, 0);
    const ChannelRealization mimo_r = esg::sample_channel(mimo_cfg, rng);
    CHECK_THROWS_AS(esg::siso_noma_sum_rate(mimo_r, lb), std::invalid_argument);
    CHECK_THROWS_AS(esg::siso_oma_sum_rate(mimo_r, lb), std::invalid_argument);
}

TEST_CASE("siso OMA rates on a two-user hand example")
{
    const ChannelRealization r = manual_siso({1.0, 0.5});
    const LinkBudget lb{2.0, 1.0};
    const esg::RateBreakdown out = esg::siso_oma_sum_rate(r, lb);
    CHECK(out.total == Catch::Approx(0.5 * std::log(6.0)).epsilon(1e-14));
    CHECK(out.total == Catch::Approx(0.89587973461402750).epsilon(1e-14));
}

TEST_CASE("siso telescoping identity on random draws")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 64, 1);
    const LinkBudget lb{1e10, 1.0};
    for (int t = 0; t < 200; ++t)
    {
        CounterRng rng(51, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        const double direct = esg::siso_noma_sum_rate(r, lb).total;
        const double total_gain = std::accumulate(r.norms_sq.begin(), r.norms_sq.end(), 0.0);
        const double closed = std::log1p(lb.p_max / (cfg.num_users * lb.n0) * total_gain);
        CHECK(oracle::rel_err(direct, closed) < 1e-9);
    }
}

TEST_CASE("mimo NOMA matches the siso rates at M = 1")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 16, 1);
    CounterRng rng(61, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    const LinkBudget lb{1e9, 1.0};
    const esg::RateBreakdown siso = esg::siso_noma_sum_rate(r, lb);
    const esg::RateBreakdown mimo = esg::mimo_noma_sum_rate(r, lb);
    for (int k = 0; k < cfg.num_users; ++k)
        CHECK(mimo.per_user[k] == Catch::Approx(siso.per_user[k]).epsilon(1e-10));
    CHECK(mimo.total == Catch::Approx(siso.total).epsilon(1e-10));
}

TEST_CASE("mimo NOMA single-user rate follows the determinant lemma")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 1, 4);
    CounterRng rng(67, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    const LinkBudget lb{1e9, 1.0};
    CHECK(esg::mimo_noma_sum_rate(r, lb).total ==
          Catch::Approx(std::log1p(lb.p_max / lb.n0 * r.norms_sq[0])).epsilon(1e-12));
}

TEST_CASE("mimo NOMA total matches the cofactor determinant oracle")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 16, 4);
    const LinkBudget lb{1e9, 1.0};
    for (int t = 0; t < 50; ++t)
    {
        CounterRng rng(71, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        std::vector<std::vector<complexd>> cols(cfg.num_users,
                                                std::vector<complexd>(cfg.num_antennas));
        for (int k = 0; k < cfg.num_users; ++k)
            for (int m = 0; m < cfg.num_antennas; ++m)
                cols[k][m] = r.channel(m, k);
        const ComplexMatrix gram = esg::gram_plus_identity(
            cfg.num_antennas, cols, lb.p_max / cfg.num_users / lb.n0);
        const double want = std::log(oracle::cofactor_det(gram).real());
        CHECK(oracle::rel_err(esg::mimo_noma_sum_rate(r, lb).total, want) < 1e-8);
    }
}

TEST_CASE("mimo telescoping identity on random draws")
{
    for (const int m : {2, 4, 8})
    {
        const SystemConfig cfg = make_config(50.0, 500.0, 8 * m, m);
        const LinkBudget lb{1e10, 1.0};
        for (int t = 0; t < 100; ++t)
        {
            CounterRng rng(73 + m, static_cast<std::uint64_t>(t));
            const ChannelRealization r = esg::sample_channel(cfg, rng);
            const esg::RateBreakdown out = esg::mimo_noma_sum_rate(r, lb);
            const double direct = std::accumulate(out.per_user.begin(), out.per_user.end(), 0.0);
            const auto [closed, bound] = esg::theorem1_bound(r, lb);
            CHECK(oracle::rel_err(direct, closed) < 1e-8);
            CHECK(out.total <= bound + 1e-9);
        }
    }
}

TEST_CASE("decoding order does not change the sum rate")
{
    std::mt19937_64 gen(79);
    const SystemConfig cfg = make_config(50.0, 500.0, 12, 4);
    const LinkBudget lb{1e8, 1.0};
    CounterRng rng(83, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    const double reference = esg::mimo_noma_sum_rate(r, lb).total;

    std::vector<int> perm(cfg.num_users);
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < 10; ++round)
    {
        std::shuffle(perm.begin(), perm.end(), gen);
        const ChannelRealization shuffled = permute_columns(r, perm);
        CHECK(oracle::rel_err(esg::mimo_noma_sum_rate(shuffled, lb).total, reference) < 1e-8);
    }

    const SystemConfig siso_cfg = make_config(50.0, 500.0, 12, 1);
    CounterRng rng2(89, 0);
    const ChannelRealization rs = esg::sample_channel(siso_cfg, rng2);
    const double siso_ref = esg::siso_noma_sum_rate(rs, lb).total;
    std::iota(perm.begin(), perm.end(), 0);
    for (int round = 0; round < 10; ++round)
    {
        std::shuffle(perm.begin(), perm.end(), gen);
        CHECK(oracle::rel_err(esg::siso_noma_sum_rate(permute_columns(rs, perm), lb).total,
                              siso_ref) < 1e-9);
    }
}

TEST_CASE("mimo OMA reduces to siso OMA at M = 1")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 8, 1);
    CounterRng rng(97, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    const LinkBudget lb{1e9, 1.0};
    CounterRng grouping(97, 1);
    const esg::RateBreakdown zf = esg::mimo_oma_sum_rate(r, lb, grouping);
    const esg::RateBreakdown plain = esg::siso_oma_sum_rate(r, lb);
    for (int k = 0; k < cfg.num_users; ++k)
        CHECK(zf.per_user[k] == Catch::Approx(plain.per_user[k]).epsilon(1e-12));
}

TEST_CASE("mimo OMA with a unitary group sees no projection loss")
{
    ChannelRealization r;
    r.channel = ComplexMatrix(2, 2);
    const double s = std::sqrt(0.5);
    r.channel(0, 0) = s;
    r.channel(1, 0) = s;
    r.channel(0, 1) = s;
    r.channel(1, 1) = -s;
    r.norms_sq = {1.0, 1.0};
    r.distances = {0.0, 0.0};
    const LinkBudget lb{4.0, 1.0};
    CounterRng rng(101, 0);
    const esg::RateBreakdown out = esg::mimo_oma_sum_rate(r, lb, rng);
    for (const double v : out.per_user)
        CHECK(v == Catch::Approx(std::log1p(lb.p_max / (2.0 * lb.n0))).epsilon(1e-12));
}

TEST_CASE("zf projection gains are distributed like the scalar channel gain")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 4, 4);
    const esg::QuadratureParams q = esg::build_quadrature(cfg);
    const LinkBudget lb{1.0, 1.0};

    std::vector<double> samples;
    samples.reserve(100000);
    for (int t = 0; t < 25000; ++t)
    {
        CounterRng rng(103, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        const esg::RateBreakdown out = esg::mimo_oma_sum_rate(r, lb, rng);
        // invert the rate map to recover |w^H h|^2
        for (const double v : out.per_user)
            samples.push_back(std::expm1(v / 1.0) * 4.0 * lb.n0 / lb.p_max);
    }
    const auto cdf = [&](double x) { return esg::channel_cdf_siso(q, x); };
    CHECK(oracle::ks_statistic(std::move(samples), cdf) < 0.01);
}

TEST_CASE("mimo OMA ergodic mean is grouping-invariant")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 16, 4);
    const esg::QuadratureParams q = esg::build_quadrature(cfg);
    const LinkBudget lb = esg::calibrate_power(q, 4, 20.0, 1.0);

    const int trials = 10000;
    double sum_a = 0.0, sq_a = 0.0, sum_b = 0.0, sq_b = 0.0;
    for (int t = 0; t < trials; ++t)
    {
        CounterRng rng(107, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        CounterRng grouping_a(211, static_cast<std::uint64_t>(t));
        CounterRng grouping_b(409, static_cast<std::uint64_t>(t));
        const double a = esg::mimo_oma_sum_rate(r, lb, grouping_a).total;
        const double b = esg::mimo_oma_sum_rate(r, lb, grouping_b).total;
        sum_a += a;
        sq_a += a * a;
        sum_b += b;
        sq_b += b * b;
    }
    const double n = trials;
    const double mean_a = sum_a / n;
    const double mean_b = sum_b / n;
    const double se_a = std::sqrt((sq_a / n - mean_a * mean_a) / n);
    const double se_b = std::sqrt((sq_b / n - mean_b * mean_b) / n);
    CHECK(std::abs(mean_a - mean_b) < 2.0 * std::sqrt(se_a * se_a + se_b * se_b));
}

TEST_CASE("mimo OMA requires K divisible by M")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 10, 4);
    CounterRng rng(109, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    CounterRng grouping(109, 1);
    CHECK_THROWS_AS(esg::mimo_oma_sum_rate(r, LinkBudget{1.0, 1.0}, grouping),
                    std::invalid_argument);
}

TEST_CASE("theorem bound collapses to equality at M = 1")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 32, 1);
    CounterRng rng(113, 0);
    const ChannelRealization r = esg::sample_channel(cfg, rng);
    const auto [lhs, rhs] = esg::theorem1_bound(r, LinkBudget{1e9, 1.0});
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("theorem bound holds and tightens with the user count")
{
    const LinkBudget lb{1e7, 1.0};
    for (int t = 0; t < 500; ++t)
    {
        const SystemConfig cfg = make_config(50.0, 500.0, 32, 4);
        CounterRng rng(127, static_cast<std::uint64_t>(t));
        const ChannelRealization r = esg::sample_channel(cfg, rng);
        const auto [lhs, rhs] = esg::theorem1_bound(r, lb);
        REQUIRE(lhs <= rhs + 1e-9);
    }

    double prev_gap = 1.0;
    for (const int k : {8, 32, 128})
    {
        const SystemConfig cfg = make_config(50.0, 500.0, k, 4);
        const esg::QuadratureParams q = esg::build_quadrature(cfg);
        const LinkBudget cal = esg::calibrate_power(q, 4, 20.0, 1.0);
        double gap = 0.0;
        for (int t = 0; t < 300; ++t)
        {
            CounterRng rng(131, static_cast<std::uint64_t>(t));
            const ChannelRealization r = esg::sample_channel(cfg, rng);
            const auto [lhs, rhs] = esg::theorem1_bound(r, cal);
            gap += (rhs - lhs) / rhs;
        }
        gap /= 300.0;
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("monte carlo gain vanishes at very low SNR")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 16, 1, -60.0);
    const esg::EsgEstimate est = esg::monte_carlo_esg(cfg, 4000, 2027);
    CHECK(std::abs(est.mean_esg) < 2.0 * est.std_error + 1e-8);
}

TEST_CASE("monte carlo estimate is reproducible across worker counts")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 32, 4, 10.0);
    const esg::EsgEstimate one = esg::monte_carlo_esg(cfg, 500, 99, 1);
    const esg::EsgEstimate again = esg::monte_carlo_esg(cfg, 500, 99, 1);
    const esg::EsgEstimate eight = esg::monte_carlo_esg(cfg, 500, 99, 8);
    CHECK(one.mean_esg == again.mean_esg);
    CHECK(one.std_error == again.std_error);
    CHECK(one.mean_esg == eight.mean_esg);
    CHECK(one.std_error == eight.std_error);
    CHECK(one.scheme_pair == esg::SchemePair::mimo);
    CHECK(one.seed == 99);
    CHECK(one.trials == 500);
}

TEST_CASE("monte carlo siso gain lands near the Rayleigh-only constant")
{
    const SystemConfig cfg = make_config(50.0, 50.0, 256, 1, 40.0);
    const esg::EsgEstimate est = esg::monte_carlo_esg(cfg, 2000, 7, 2);
    CHECK(est.mean_esg > 0.50);
    CHECK(est.mean_esg < 0.65);
    CHECK(est.scheme_pair == esg::SchemePair::siso);
}

TEST_CASE("monte carlo rejects invalid inputs")
{
    const SystemConfig cfg = make_config(50.0, 500.0, 10, 4);
    CHECK_THROWS_AS(esg::monte_carlo_esg(cfg, 100, 1), esg::ConfigValidationError);
    CHECK_THROWS_AS(esg::monte_carlo_esg(make_config(50.0, 500.0, 8, 1), 0, 1),
                    std::invalid_argument);
}
