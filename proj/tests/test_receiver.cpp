// SPDX-License-Identifier: Apache-2.0
//
// sixdma-cf: uplink simulator and rotation optimizer for cell-free massive
// MIMO networks with rotatable antenna surfaces
// Copyright (C) 2026 the sixdma-cf authors
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

#include "sixdma/receiver.hpp"
#include "sixdma/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace sixdma;
using Catch::Approx;

namespace {

// Synthetic channel sets with pseudo-random complex entries; the receiver
// module only sees vectors, so tests need not route through the channel
// synthesis.
ChannelSet random_channels(int aps, int per_ap, int users, Rng& rng, double scale = 1e-4)
{
    ChannelSet set;
    set.ap_count = aps;
    set.per_ap_length = per_ap;
    for (int k = 0; k < users; ++k)
    {
        Cvec h(aps * per_ap);
        for (int i = 0; i < h.size(); ++i)
            h(i) = scale * std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        set.users.push_back(std::move(h));
    }
    return set;
}

Cmat interference_gram(const ChannelSet& channels, int skip_user, const RadioParams& radio)
{
    const int n = channels.collective_length();
    Cmat gram = radio.noise_power * Cmat::Identity(n, n);
    for (int i = 0; i < channels.user_count(); ++i)
        if (i != skip_user)
            gram += radio.tx_power * channels.users[i] * channels.users[i].adjoint();
    return gram;
}

} // namespace

TEST_CASE("single-user lmmse combiner is a scaled matched filter", "[receiver]")
{
    Rng rng(41);
    RadioParams radio;
    const ChannelSet channels = random_channels(2, 4, 1, rng);

    const CombinerSet combiners = lmmse_combiners(channels, radio);
    REQUIRE(combiners.users.size() == 1);
    for (int m = 0; m < 2; ++m)
    {
        const Cvec h = channels.ap_block(0, m);
        const double scale = 1.0 / (radio.tx_power * h.squaredNorm() + radio.noise_power);
        const Cvec v = combiners.users[0].segment(m * 4, 4);
        CHECK((v - scale * h).norm() < 1e-12 * v.norm());
    }
}

TEST_CASE("noise-dominated lmmse approaches the matched filter direction", "[receiver]")
{
    Rng rng(42);
    RadioParams radio;
    radio.noise_power = 1e3; // overwhelms every channel product
    const ChannelSet channels = random_channels(1, 6, 3, rng);

    const CombinerSet combiners = lmmse_combiners(channels, radio);
    for (int k = 0; k < 3; ++k)
    {
        const Cvec& h = channels.users[k];
        const Cvec& v = combiners.users[k];
        const double cosine = std::abs(h.dot(v)) / (h.norm() * v.norm());
        CHECK(cosine == Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("zero channel block yields a zero combiner block", "[receiver]")
{
    Rng rng(43);
    RadioParams radio;
    ChannelSet channels = random_channels(2, 4, 2, rng);
    channels.users[0].segment(0, 4).setZero(); // user 0 invisible at AP 0

    const CombinerSet combiners = lmmse_combiners(channels, radio);
    CHECK(combiners.users[0].segment(0, 4).norm() == 0.0);
    CHECK(combiners.users[0].segment(4, 4).norm() > 0.0);
}

TEST_CASE("lmmse blocks depend only on their own AP", "[receiver]")
{
    Rng rng(44);
    RadioParams radio;
    ChannelSet channels = random_channels(2, 4, 3, rng);
    const CombinerSet before = lmmse_combiners(channels, radio);

    // Perturb all channels at AP 1; AP-0 blocks must be bit-identical.
    for (auto& h : channels.users)
        h.segment(4, 4) *= std::complex<double>(0.3, 0.8);
    const CombinerSet after = lmmse_combiners(channels, radio);

    for (int k = 0; k < 3; ++k)
    {
        CHECK((before.users[k].segment(0, 4) - after.users[k].segment(0, 4)).norm() == 0.0);
        CHECK((before.users[k].segment(4, 4) - after.users[k].segment(4, 4)).norm() > 0.0);
    }
}

TEST_CASE("cmmse equals lmmse for a single AP", "[receiver]")
{
    Rng rng(45);
    const ChannelSet channels = random_channels(1, 8, 4, rng);
    const RadioParams radio;

    const CombinerSet local = lmmse_combiners(channels, radio);
    const CombinerSet joint = cmmse_combiners(channels, radio);
    for (int k = 0; k < 4; ++k)
        CHECK((local.users[k] - joint.users[k]).norm() == 0.0);
}

TEST_CASE("cmmse combiner for one user is parallel to its channel", "[receiver]")
{
    Rng rng(46);
    RadioParams radio;
    const ChannelSet channels = random_channels(2, 4, 1, rng);

    const CombinerSet combiners = cmmse_combiners(channels, radio);
    const Cvec& h = channels.users[0];
    const Cvec& v = combiners.users[0];
    const Cvec residual = v - (h.dot(v) / h.squaredNorm()) * h;
    CHECK(residual.norm() < 1e-12 * v.norm());
}

TEST_CASE("orthogonal channels give per-user matched cmmse combiners", "[receiver]")
{
    RadioParams radio;
    ChannelSet channels;
    channels.ap_count = 1;
    channels.per_ap_length = 4;
    for (int k = 0; k < 3; ++k)
    {
        Cvec h = Cvec::Zero(4);
        h(k) = std::complex<double>(1e-4 * (k + 1), 2e-5);
        channels.users.push_back(h);
    }

    const CombinerSet combiners = cmmse_combiners(channels, radio);
    for (int k = 0; k < 3; ++k)
    {
        const Cvec& h = channels.users[k];
        const Cvec& v = combiners.users[k];
        const Cvec residual = v - (h.dot(v) / h.squaredNorm()) * h;
        CHECK(residual.norm() < 1e-14 * v.norm());
    }
}

TEST_CASE("sinr of a matched single-user combiner", "[receiver]")
{
    Rng rng(47);
    RadioParams radio;
    const ChannelSet channels = random_channels(1, 6, 1, rng);

    CombinerSet matched;
    matched.mode = CombineMode::Cmmse;
    matched.users = {channels.users[0]};

    const SinrResult result = sinr(0, matched, channels, radio);
    CHECK_FALSE(result.zero_combiner);
    CHECK(result.value ==
          Approx(radio.tx_power * channels.users[0].squaredNorm() / radio.noise_power)
              .epsilon(1e-12));
}

TEST_CASE("sinr is invariant to combiner scaling", "[receiver]")
{
    Rng rng(48);
    RadioParams radio;
    const ChannelSet channels = random_channels(2, 3, 4, rng);
    CombinerSet combiners = cmmse_combiners(channels, radio);

    const double base = sinr(1, combiners, channels, radio).value;
    combiners.users[1] *= std::complex<double>(-2.7, 1.3);
    const double scaled = sinr(1, combiners, channels, radio).value;
    CHECK(scaled == Approx(base).epsilon(1e-12));
}

TEST_CASE("zero combiner reports a flagged zero sinr", "[receiver]")
{
    Rng rng(49);
    const ChannelSet channels = random_channels(1, 4, 2, rng);
    CombinerSet combiners = cmmse_combiners(channels, RadioParams{});
    combiners.users[0].setZero();

    const SinrResult result = sinr(0, combiners, channels, RadioParams{});
    CHECK(result.zero_combiner);
    CHECK(result.value == 0.0);
}

TEST_CASE("cmmse sinr matches the closed-form identity", "[receiver]")
{
    Rng rng(50);
    RadioParams radio;
    for (int trial = 0; trial < 20; ++trial)
    {
        const ChannelSet channels = random_channels(2, 4, 1 + trial % 6, rng);
        const CombinerSet combiners = cmmse_combiners(channels, radio);
        for (int k = 0; k < channels.user_count(); ++k)
        {
            const double gamma = sinr(k, combiners, channels, radio).value;
            const Cmat gram = interference_gram(channels, k, radio);
            const Cvec& h = channels.users[k];
            const double oracle =
                radio.tx_power * h.dot(gram.llt().solve(h)).real();
            CHECK(gamma == Approx(oracle).epsilon(1e-8));
        }
    }
}

TEST_CASE("cmmse maximizes sinr over random combiners", "[receiver]")
{
    Rng rng(51);
    RadioParams radio;
    for (int trial = 0; trial < 100; ++trial)
    {
        const ChannelSet channels = random_channels(2, 4, 3, rng);
        const CombinerSet best = cmmse_combiners(channels, radio);
        const double gamma_best = sinr(0, best, channels, radio).value;

        CombinerSet probe = best;
        for (int i = 0; i < 1000; ++i)
        {
            Cvec v(channels.collective_length());
            for (int j = 0; j < v.size(); ++j)
                v(j) = std::complex<double>(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
            probe.users[0] = v / v.norm();
            const double gamma = sinr(0, probe, channels, radio).value;
            CHECK(gamma <= gamma_best * (1.0 + 1e-9));
        }
    }
}

TEST_CASE("sum rate basics", "[receiver]")
{
    RadioParams radio;
    ChannelSet empty;
    empty.ap_count = 1;
    empty.per_ap_length = 4;
    CHECK(sum_rate_realization(empty, CombineMode::Cmmse, radio) == 0.0);

    Rng rng(52);
    const ChannelSet single = random_channels(1, 4, 1, rng);
    const double rate = sum_rate_realization(single, CombineMode::Cmmse, radio);
    const double gamma = radio.tx_power * single.users[0].squaredNorm() / radio.noise_power;
    CHECK(rate == Approx(std::log2(1.0 + gamma)).epsilon(1e-9));
}

TEST_CASE("cmmse sum rate dominates lmmse", "[receiver]")
{
    Rng rng(53);
    RadioParams radio;
    for (int trial = 0; trial < 50; ++trial)
    {
        const ChannelSet channels = random_channels(2, 4, 3, rng);
        const double joint = sum_rate_realization(channels, CombineMode::Cmmse, radio);
        const double local = sum_rate_realization(channels, CombineMode::Lmmse, radio);
        CHECK(joint >= local * (1.0 - 1e-12));
    }
}

TEST_CASE("combiner construction rejects an empty user set", "[receiver]")
{
    ChannelSet empty;
    empty.ap_count = 1;
    empty.per_ap_length = 4;
    CHECK_THROWS_AS(lmmse_combiners(empty, RadioParams{}), std::invalid_argument);
    CHECK_THROWS_AS(cmmse_combiners(empty, RadioParams{}), std::invalid_argument);
}
