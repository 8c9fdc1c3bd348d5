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

#include "sixdma/geometry.hpp"
#include "sixdma/rng.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sixdma {

// ------------------------------------------------------------------------
// Standard normal helpers
// ------------------------------------------------------------------------

inline double normal_pdf(double z)
{
    constexpr double inv_sqrt_two_pi = 0.3989422804014326779399461;
    return inv_sqrt_two_pi * std::exp(-0.5 * z * z);
}

inline double normal_cdf(double z)
{
    constexpr double inv_sqrt_two = 0.7071067811865475244008444;
    return 0.5 * std::erfc(-z * inv_sqrt_two);
}

// ------------------------------------------------------------------------
// Kernel and GP surrogate
// ------------------------------------------------------------------------

/// Squared-exponential covariance on raw angle vectors (radians). The unit
/// lengthscale is the published form; a different lengthscale is exposed for
/// experimentation only.
inline double kernel(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double lengthscale = 1.0)
{
    if (a.size() != b.size())
        throw std::invalid_argument("kernel: vectors must have equal length.");
    if (!(lengthscale > 0.0))
        throw std::invalid_argument("kernel: lengthscale must be positive.");
    return std::exp(-0.5 * (a - b).squaredNorm() / (lengthscale * lengthscale));
}

struct GPPosterior
{
    double mean = 0.0;
    double variance = 0.0; // clamped to [0, 1]
};

/// Zero-mean GP over observed (rotation vector, objective) pairs. Adding a
/// sample refreshes the Cholesky factorization of the kernel matrix with a
/// diagonal jitter that escalates tenfold (up to 1e-4) if factorization
/// fails; samples can cluster and leave the noiseless system ill-conditioned.
class GPState
{
  public:
    explicit GPState(double jitter = 1.0e-8, double lengthscale = 1.0)
        : jitter_base_(jitter), lengthscale_(lengthscale)
    {
        if (!(jitter > 0.0))
            throw std::invalid_argument("GPState: jitter must be positive.");
        if (!(lengthscale > 0.0))
            throw std::invalid_argument("GPState: lengthscale must be positive.");
    }

    void add_sample(const Eigen::VectorXd& x, double value)
    {
        if (!samples_.empty() && x.size() != samples_.front().size())
            throw std::invalid_argument("GPState: sample dimension mismatch.");

        const int n = size();
        kernel_matrix_.conservativeResize(n + 1, n + 1);
        for (int i = 0; i < n; ++i)
        {
            const double k = kernel(samples_[i], x, lengthscale_);
            kernel_matrix_(i, n) = k;
            kernel_matrix_(n, i) = k;
        }
        kernel_matrix_(n, n) = 1.0;

        samples_.push_back(x);
        values_.conservativeResize(n + 1);
        values_(n) = value;

        if (best_index_ < 0 || value > best_value_)
        {
            best_index_ = n;
            best_value_ = value;
        }
        refresh();
    }

    int size() const { return static_cast<int>(samples_.size()); }
    const Eigen::VectorXd& sample(int i) const { return samples_.at(i); }
    double value(int i) const { return values_(i); }
    const Eigen::MatrixXd& kernel_matrix() const { return kernel_matrix_; }
    double lengthscale() const { return lengthscale_; }
    double jitter_used() const { return jitter_used_; }

    int best_index() const { return best_index_; }
    double best_value() const { return best_value_; }

    GPPosterior posterior(const Eigen::VectorXd& query) const
    {
        require_samples();
        const Eigen::VectorXd k = cross_covariance(query);
        GPPosterior post;
        post.mean = k.dot(alpha_);
        const double raw = 1.0 - k.dot(llt_.solve(k));
        post.variance = std::clamp(raw, 0.0, 1.0);
        return post;
    }

    /// Expected improvement over the best observation, with its analytic
    /// gradient: dEI = F(Z) dmu + f(Z) dzeta. A vanished posterior spread
    /// pins both to zero (the closed form's zeta = 0 branch).
    struct Acquisition
    {
        double ei = 0.0;
        double mean = 0.0;
        double sigma = 0.0;
        Eigen::VectorXd gradient;
    };

    Acquisition acquisition(const Eigen::VectorXd& query) const
    {
        require_samples();
        const int n = size();
        const double ls2 = lengthscale_ * lengthscale_;

        const Eigen::VectorXd k = cross_covariance(query);
        const Eigen::VectorXd beta = llt_.solve(k);

        Acquisition out;
        out.gradient = Eigen::VectorXd::Zero(query.size());
        out.mean = k.dot(alpha_);
        const double variance = std::clamp(1.0 - k.dot(beta), 0.0, 1.0);
        out.sigma = std::sqrt(variance);
        if (out.sigma <= sigma_floor)
            return out;

        const double gap = out.mean - best_value_;
        const double z = gap / out.sigma;
        const double cdf = normal_cdf(z);
        const double pdf = normal_pdf(z);
        out.ei = std::max(gap * cdf + out.sigma * pdf, 0.0);

        // d kernel(x_i, q)/dq = kernel * (x_i - q) / ls^2, hence
        // d mean = sum alpha_i dk_i and d variance = -2 sum beta_i dk_i.
        Eigen::VectorXd grad_mean = Eigen::VectorXd::Zero(query.size());
        Eigen::VectorXd grad_var = Eigen::VectorXd::Zero(query.size());
        for (int i = 0; i < n; ++i)
        {
            const Eigen::VectorXd dk = (k(i) / ls2) * (samples_[i] - query);
            grad_mean += alpha_(i) * dk;
            grad_var -= 2.0 * beta(i) * dk;
        }
        out.gradient = cdf * grad_mean + pdf * (grad_var / (2.0 * out.sigma));
        return out;
    }

    /// Unclamped posterior variance with its gradient; the exploration
    /// objective when EI has gone flat (see maximize_acquisition).
    std::pair<double, Eigen::VectorXd> variance_and_gradient(const Eigen::VectorXd& query) const
    {
        require_samples();
        const double ls2 = lengthscale_ * lengthscale_;
        const Eigen::VectorXd k = cross_covariance(query);
        const Eigen::VectorXd beta = llt_.solve(k);
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(query.size());
        for (int i = 0; i < size(); ++i)
            grad -= (2.0 * beta(i) * k(i) / ls2) * (samples_[i] - query);
        return {1.0 - k.dot(beta), std::move(grad)};
    }

    static constexpr double sigma_floor = 1.0e-12;

  private:
    void require_samples() const
    {
        if (samples_.empty())
            throw std::logic_error("GPState: no samples observed yet.");
    }

    Eigen::VectorXd cross_covariance(const Eigen::VectorXd& query) const
    {
        Eigen::VectorXd k(size());
        for (int i = 0; i < size(); ++i)
            k(i) = kernel(samples_[i], query, lengthscale_);
        return k;
    }

    void refresh()
    {
        const int n = size();
        const double cap = 1.0e-4 * (1.0 + 1.0e-12);
        for (double jitter = jitter_base_; jitter <= cap; jitter *= 10.0)
        {
            Eigen::MatrixXd regularized = kernel_matrix_;
            regularized.diagonal().array() += jitter;
            llt_.compute(regularized);
            if (llt_.info() != Eigen::Success)
                continue;
            // LLT reports success on nearly singular matrices long before it
            // fails outright, and the solve then magnifies the observations
            // by 1/lambda_min: with clustered samples the posterior mean can
            // overshoot the data by orders of magnitude between the samples.
            // The Cholesky diagonal gives a cheap condition estimate; treat a
            // near-singular factor as a failure too while the ladder lasts.
            const Eigen::VectorXd diag = llt_.matrixLLT().diagonal();
            const double spread = diag.maxCoeff() / diag.minCoeff();
            if (spread * spread > condition_limit && jitter * 10.0 <= cap)
                continue;
            jitter_used_ = jitter;
            alpha_ = llt_.solve(values_.head(n));
            return;
        }
        throw std::runtime_error(
            "GPState: kernel matrix factorization failed even at maximum jitter 1e-4; "
            "observations are too degenerate.");
    }

    static constexpr double condition_limit = 1.0e6;

    std::vector<Eigen::VectorXd> samples_;
    Eigen::VectorXd values_;
    Eigen::MatrixXd kernel_matrix_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    Eigen::VectorXd alpha_;
    double jitter_base_ = 1.0e-8;
    double jitter_used_ = 0.0;
    double lengthscale_ = 1.0;
    int best_index_ = -1;
    double best_value_ = -std::numeric_limits<double>::infinity();
};

inline GPPosterior gp_posterior(const GPState& state, const Eigen::VectorXd& query)
{
    return state.posterior(query);
}

/// Closed-form expected improvement of Normal(mu, zeta^2) over `best`.
inline double expected_improvement(double mu, double zeta, double best)
{
    if (zeta < 0.0)
        throw std::invalid_argument("expected_improvement: zeta cannot be negative.");
    if (zeta == 0.0)
        return 0.0;
    const double z = (mu - best) / zeta;
    return std::max((mu - best) * normal_cdf(z) + zeta * normal_pdf(z), 0.0);
}

// ------------------------------------------------------------------------
// Acquisition maximization
// ------------------------------------------------------------------------

struct BOConfig
{
    int init_samples = 0;     // S; <= 0 means 2 * surfaces * aps
    int iterations = 100;     // L
    double jitter = 1.0e-8;
    double lengthscale = 1.0; // kernel lengthscale; 1 is the published form
    int restarts = 10;        // multi-start count for the inner maximizer
    double inner_tol = 1.0e-6;   // projected-gradient norm tolerance
    int inner_max_iter = 200;    // T

    int resolved_init_samples(const NetworkLayout& layout) const
    {
        return init_samples > 0 ? init_samples
                                : std::max(2, 2 * layout.surfaces_per_ap * layout.ap_count());
    }

    void validate() const
    {
        if (init_samples != 0 && init_samples < 2)
            throw std::invalid_argument("BOConfig: init_samples must be >= 2 (or 0 for the default).");
        if (iterations < 0)
            throw std::invalid_argument("BOConfig: iterations cannot be negative.");
        if (!(jitter > 0.0))
            throw std::invalid_argument("BOConfig: jitter must be positive.");
        if (!(lengthscale > 0.0))
            throw std::invalid_argument("BOConfig: lengthscale must be positive.");
        if (restarts < 1)
            throw std::invalid_argument("BOConfig: restarts must be >= 1.");
        if (!(inner_tol > 0.0))
            throw std::invalid_argument("BOConfig: inner_tol must be positive.");
        if (inner_max_iter < 1)
            throw std::invalid_argument("BOConfig: inner_max_iter must be >= 1.");
    }
};

struct AcquisitionResult
{
    Eigen::VectorXd point;
    double ei = 0.0;
};

/// Below this the closed-form EI is numerical noise rather than a signal
/// worth ranking restarts by.
inline constexpr double ei_underflow_floor = 1.0e-12;

namespace detail {

inline Eigen::VectorXd clamp_to_box(Eigen::VectorXd x, const Eigen::VectorXd& lo,
                                    const Eigen::VectorXd& hi)
{
    return x.cwiseMax(lo).cwiseMin(hi);
}

/// Maximize a smooth function over a box with projected L-BFGS: two-loop
/// recursion for the search direction, projection onto the box after every
/// trial step, Armijo backtracking on the projected step. Returns the last
/// accepted iterate (the start point if no step succeeds).
template <typename Eval>
std::pair<Eigen::VectorXd, double>
projected_lbfgs_max(const Eigen::VectorXd& start, const Eigen::VectorXd& lo,
                    const Eigen::VectorXd& hi, double tol, int max_iter, Eval&& eval)
{
    constexpr int memory = 10;
    constexpr double armijo = 1.0e-4;

    Eigen::VectorXd x = clamp_to_box(start, lo, hi);
    auto [f, g] = eval(x);

    std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs; // (s, y) for -f
    for (int iter = 0; iter < max_iter; ++iter)
    {
        // Projected-gradient stationarity for the maximization problem.
        const Eigen::VectorXd pg = x - clamp_to_box(x + g, lo, hi);
        if (pg.lpNorm<Eigen::Infinity>() <= tol)
            break;

        // Two-loop recursion on the minimization of -f.
        Eigen::VectorXd q = -g;
        std::vector<double> alpha(pairs.size());
        for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i)
        {
            const auto& [s, y] = pairs[i];
            alpha[i] = s.dot(q) / y.dot(s);
            q -= alpha[i] * y;
        }
        if (!pairs.empty())
        {
            const auto& [s, y] = pairs.back();
            q *= y.dot(s) / y.squaredNorm();
        }
        for (std::size_t i = 0; i < pairs.size(); ++i)
        {
            const auto& [s, y] = pairs[i];
            const double beta = y.dot(q) / y.dot(s);
            q += (alpha[i] - beta) * s;
        }
        Eigen::VectorXd direction = -q; // ascent direction for f
        if (direction.dot(g) <= 0.0)
            direction = g; // fall back to steepest ascent

        double step = 1.0;
        bool accepted = false;
        Eigen::VectorXd x_new;
        double f_new = f;
        for (int back = 0; back < 40; ++back)
        {
            x_new = clamp_to_box(x + step * direction, lo, hi);
            const Eigen::VectorXd dx = x_new - x;
            if (dx.lpNorm<Eigen::Infinity>() == 0.0)
                break;
            f_new = eval(x_new).first;
            if (f_new >= f + armijo * g.dot(dx))
            {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            break;

        auto [f_next, g_next] = eval(x_new);
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g - g_next; // gradient difference of -f
        if (y.dot(s) > 1.0e-12 * s.norm() * y.norm())
        {
            pairs.emplace_back(s, y);
            if (pairs.size() > memory)
                pairs.pop_front();
        }
        x = std::move(x_new);
        f = f_next;
        g = std::move(g_next);
    }
    return {x, f};
}

} // namespace detail

/// Pick the next rotation vector by maximizing EI over the product of the
/// per-surface intervals: multi-start projected L-BFGS seeded at the current
/// best sample plus `restarts - 1` uniform draws. Ties across restarts go to
/// the lowest restart index. Never fails: with no successful line search the
/// best evaluated start point is returned.
///
/// Once the incumbent sits many posterior sigmas above the zero prior mean,
/// the closed-form EI underflows across the whole box and the "argmax"
/// collapses onto the incumbent itself -- a duplicate observation of a
/// deterministic objective that teaches the surrogate nothing. In that flat
/// regime EI is monotone in the posterior sigma, so the same multi-start
/// machinery switches to the variance and keeps exploring.
inline AcquisitionResult maximize_acquisition(const GPState& state, const FeasibleRegions& regions,
                                              const BOConfig& config, Rng& rng)
{
    config.validate();
    const int dim = static_cast<int>(regions.regions.size());
    if (dim == 0)
        throw std::invalid_argument("maximize_acquisition: empty feasible regions.");
    if (state.size() > 0 && state.sample(0).size() != dim)
        throw std::invalid_argument("maximize_acquisition: region/sample dimension mismatch.");

    Eigen::VectorXd lo(dim), hi(dim);
    for (int j = 0; j < dim; ++j)
    {
        lo(j) = regions.regions[j].lo;
        hi(j) = regions.regions[j].hi;
        if (!(hi(j) >= lo(j)))
            throw std::invalid_argument("maximize_acquisition: empty interval in feasible regions.");
    }

    std::vector<Eigen::VectorXd> starts;
    starts.reserve(static_cast<std::size_t>(config.restarts));
    for (int r = 0; r < config.restarts; ++r)
    {
        Eigen::VectorXd start(dim);
        if (r == 0 && state.size() > 0)
            start = detail::clamp_to_box(state.sample(state.best_index()), lo, hi);
        else
            for (int j = 0; j < dim; ++j)
                start(j) = rng.uniform(lo(j), hi(j));
        starts.push_back(std::move(start));
    }

    const auto eval = [&state](const Eigen::VectorXd& x) {
        const auto acq = state.acquisition(x);
        return std::make_pair(acq.ei, acq.gradient);
    };

    AcquisitionResult best;
    best.ei = -1.0; // any evaluated point beats this
    for (const Eigen::VectorXd& start : starts)
    {
        auto [point, ei] = detail::projected_lbfgs_max(start, lo, hi, config.inner_tol,
                                                       config.inner_max_iter, eval);
        if (ei > best.ei)
        {
            best.point = std::move(point);
            best.ei = ei;
        }
    }
    best.ei = std::max(best.ei, 0.0);

    if (best.ei <= ei_underflow_floor && state.size() > 0)
    {
        const auto explore = [&state](const Eigen::VectorXd& x) {
            return state.variance_and_gradient(x);
        };
        double top = -std::numeric_limits<double>::infinity();
        for (const Eigen::VectorXd& start : starts)
        {
            auto [point, variance] = detail::projected_lbfgs_max(
                start, lo, hi, config.inner_tol, config.inner_max_iter, explore);
            if (variance > top)
            {
                top = variance;
                best.point = std::move(point);
            }
        }
        best.ei = state.acquisition(best.point).ei;
    }
    return best;
}

// ------------------------------------------------------------------------
// Optimizer loop
// ------------------------------------------------------------------------

struct TracePoint
{
    int index = 0;      // observation order, 0-based across the whole run
    bool initial = false; // true for the random initialization phase
    RotationVector rotation;
    double value = 0.0; // observed objective
    double ei = 0.0;    // EI at the selected point (0 for initial samples)
};

struct OptimizeResult
{
    RotationVector best_rotation;
    double best_value = -std::numeric_limits<double>::infinity();
    std::vector<TracePoint> trace;
};

namespace detail {

/// Eq.-style regions may extend past [0, 2*pi) at the wrap seam; reduce each
/// angle mod 2*pi and restore ascending order per AP before evaluating.
inline RotationVector reduce_and_sort(const Eigen::VectorXd& flat, int aps, int surfaces)
{
    RotationVector rv(aps, surfaces);
    for (int m = 0; m < aps; ++m)
    {
        std::vector<double> a(surfaces);
        for (int b = 0; b < surfaces; ++b)
            a[b] = wrap_two_pi(flat(static_cast<Eigen::Index>(m) * surfaces + b));
        std::sort(a.begin(), a.end());
        for (int b = 0; b < surfaces; ++b)
            rv.at(m, b) = a[b];
    }
    return rv;
}

} // namespace detail

/// Bayesian maximization of a deterministic objective over feasible rotation
/// vectors: S random feasible starts, then L rounds of {regions around the
/// incumbent -> EI maximization -> objective evaluation -> posterior update}.
/// All observations stay in the surrogate; the returned best is the argmax
/// over the full trace. The trace is bit-identical for a fixed seed.
inline OptimizeResult optimize(const std::function<double(const RotationVector&)>& objective,
                               const NetworkLayout& layout, const BOConfig& config,
                               std::uint64_t seed)
{
    config.validate();
    layout.validate();

    const int aps = layout.ap_count();
    const int surfaces = layout.surfaces_per_ap;
    const int init = config.resolved_init_samples(layout);

    Rng rng(seed);
    GPState state(config.jitter, config.lengthscale);
    OptimizeResult result;
    result.trace.reserve(static_cast<std::size_t>(init) + config.iterations);

    const auto observe = [&](const RotationVector& rv, bool is_initial, double ei) {
        const double value = objective(rv);
        const auto& flat = rv.flat();
        state.add_sample(Eigen::Map<const Eigen::VectorXd>(flat.data(),
                                                           static_cast<Eigen::Index>(flat.size())),
                         value);
        result.trace.push_back(
            {static_cast<int>(result.trace.size()), is_initial, rv, value, ei});
    };

    for (int s = 0; s < init; ++s)
        observe(sample_feasible_rotations(aps, surfaces, layout.min_separation, rng), true, 0.0);

    for (int l = 0; l < config.iterations; ++l)
    {
        const Eigen::VectorXd& anchor_flat = state.sample(state.best_index());
        const RotationVector anchor = RotationVector::from_flat(
            std::vector<double>(anchor_flat.data(), anchor_flat.data() + anchor_flat.size()),
            aps, surfaces);
        const FeasibleRegions regions = feasible_regions(anchor, layout.min_separation);
        const AcquisitionResult acq = maximize_acquisition(state, regions, config, rng);
        observe(detail::reduce_and_sort(acq.point, aps, surfaces), false, acq.ei);
    }

    const int best = state.best_index();
    result.best_value = state.value(best);
    result.best_rotation = result.trace[static_cast<std::size_t>(best)].rotation;
    return result;
}

} // namespace sixdma
