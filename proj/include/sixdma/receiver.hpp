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

#pragma once

#include "sixdma/channel.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixdma {

enum class CombineMode
{
    Lmmse, // per-AP combining from local channels, summed at the CPU
    Cmmse  // joint combining from the collective channels
};

inline std::string to_string(CombineMode mode)
{
    return mode == CombineMode::Lmmse ? "lmmse" : "cmmse";
}

/// Per-user collective combining vectors. LMMSE vectors are block
/// structured: block m depends only on AP m's local channels.
struct CombinerSet
{
    CombineMode mode = CombineMode::Cmmse;
    std::vector<Cvec> users; // each of length N*B*M
};

namespace detail {

// Solve (p0 * H H^H + sigma^2 I) X = H for all columns at once. The system
// matrix is Hermitian positive definite (sigma^2 > 0), so a Cholesky
// factorization is used; explicit inversion is never formed.
inline Cmat mmse_solve(const Cmat& channels, const RadioParams& radio)
{
    const Eigen::Index n = channels.rows();
    Cmat gram = radio.tx_power * (channels * channels.adjoint());
    gram.diagonal().array() += radio.noise_power;
    Eigen::LLT<Cmat> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("mmse_solve: Cholesky factorization failed on a matrix of size " +
                                 std::to_string(n) + ".");
    return llt.solve(channels);
}

} // namespace detail

/// LMMSE: each AP inverts only its own channel Gram matrix; the collective
/// combiner stacks the per-AP solutions.
inline CombinerSet lmmse_combiners(const ChannelSet& channels, const RadioParams& radio)
{
    const int k_users = channels.user_count();
    if (k_users < 1)
        throw std::invalid_argument("lmmse_combiners: at least one user is required.");

    CombinerSet out;
    out.mode = CombineMode::Lmmse;
    out.users.assign(k_users, Cvec::Zero(channels.collective_length()));

    const int nb = channels.per_ap_length;
    Cmat local(nb, k_users);
    for (int m = 0; m < channels.ap_count; ++m)
    {
        for (int k = 0; k < k_users; ++k)
            local.col(k) = channels.ap_block(k, m);
        const Cmat solved = detail::mmse_solve(local, radio);
        for (int k = 0; k < k_users; ++k)
            out.users[k].segment(static_cast<Eigen::Index>(m) * nb, nb) = solved.col(k);
    }
    return out;
}

/// CMMSE: one joint solve over the collective channels of all APs.
inline CombinerSet cmmse_combiners(const ChannelSet& channels, const RadioParams& radio)
{
    const int k_users = channels.user_count();
    if (k_users < 1)
        throw std::invalid_argument("cmmse_combiners: at least one user is required.");

    Cmat collective(channels.collective_length(), k_users);
    for (int k = 0; k < k_users; ++k)
        collective.col(k) = channels.users[k];
    const Cmat solved = detail::mmse_solve(collective, radio);

    CombinerSet out;
    out.mode = CombineMode::Cmmse;
    out.users.reserve(k_users);
    for (int k = 0; k < k_users; ++k)
        out.users.push_back(solved.col(k));
    return out;
}

struct SinrResult
{
    double value = 0.0;
    bool zero_combiner = false; // signal unrecoverable; SINR reported as 0
};

/// Post-combining SINR of one user: desired power over interference from all
/// other users plus combiner-weighted noise. Invariant under any nonzero
/// complex scaling of the combiner.
inline SinrResult sinr(std::size_t user_index, const CombinerSet& combiners,
                       const ChannelSet& channels, const RadioParams& radio)
{
    const Cvec& v = combiners.users[user_index];
    const double v_norm2 = v.squaredNorm();
    if (v_norm2 == 0.0)
        return {0.0, true};

    double interference = 0.0;
    double signal = 0.0;
    for (int i = 0; i < channels.user_count(); ++i)
    {
        const double p = std::norm(v.dot(channels.users[i])); // v^H h_i
        if (static_cast<std::size_t>(i) == user_index)
            signal = p;
        else
            interference += p;
    }
    const double denom = radio.tx_power * interference + radio.noise_power * v_norm2;
    return {radio.tx_power * signal / denom, false};
}

/// Sum over users of log2(1 + SINR) for one realization; empty drops give 0.
inline double sum_rate_realization(const ChannelSet& channels, CombineMode mode,
                                   const RadioParams& radio)
{
    if (channels.user_count() == 0)
        return 0.0;
    const CombinerSet combiners = mode == CombineMode::Lmmse ? lmmse_combiners(channels, radio)
                                                             : cmmse_combiners(channels, radio);
    double rate = 0.0;
    for (int k = 0; k < channels.user_count(); ++k)
        rate += std::log2(1.0 + sinr(static_cast<std::size_t>(k), combiners, channels, radio).value);
    return rate;
}

} // namespace sixdma
