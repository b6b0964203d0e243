// SPDX-License-Identifier: Apache-2.0
//
// wireline - statistical wireline channel modelling library
// Copyright (C) 2026 The wireline authors
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

#ifndef WIRELINE_CHANNEL_HPP
#define WIRELINE_CHANNEL_HPP

#include "wireline/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace wireline
{

using cplx = std::complex<double>;

// ------------------------------------------------------------------------
// Impulse response
// ------------------------------------------------------------------------

/// Tap amplitudes on a uniform delay grid.
///
/// Tap i sits at delay first_delay + i * tap_spacing. Generated channels start at delay 0;
/// responses resampled through an acausal kernel start at a negative delay so precursor
/// samples are kept. Immutable after construction.
class ImpulseResponse
{
  public:
    ImpulseResponse(std::vector<cplx> taps, double tap_spacing, double first_delay = 0.0)
        : taps_(std::move(taps)), spacing_(tap_spacing), first_delay_(first_delay)
    {
        if (taps_.empty())
            fail(ErrorKind::invalid_argument, "impulse response needs at least one tap");
        if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
            fail(ErrorKind::invalid_argument, "tap spacing must be positive");
        if (!std::isfinite(first_delay_))
            fail(ErrorKind::invalid_argument, "first delay must be finite");
        bool any = false;
        for (const auto &t : taps_)
        {
            if (!std::isfinite(t.real()) || !std::isfinite(t.imag()))
                fail(ErrorKind::invalid_argument, "non-finite tap amplitude");
            any = any || t != cplx{};
        }
        if (!any)
            fail(ErrorKind::degenerate_channel, "all taps are zero");
    }

    static ImpulseResponse from_real(std::span<const double> taps, double tap_spacing, double first_delay = 0.0)
    {
        return ImpulseResponse(std::vector<cplx>(taps.begin(), taps.end()), tap_spacing, first_delay);
    }

    std::span<const cplx> taps() const noexcept { return taps_; }
    const cplx &operator[](std::size_t i) const { return taps_[i]; }
    std::size_t size() const noexcept { return taps_.size(); }
    double tap_spacing() const noexcept { return spacing_; }
    double first_delay() const noexcept { return first_delay_; }
    double delay(std::size_t i) const noexcept { return first_delay_ + static_cast<double>(i) * spacing_; }

    bool is_real() const noexcept
    {
        return std::all_of(taps_.begin(), taps_.end(), [](const cplx &t) { return t.imag() == 0.0; });
    }

    ImpulseResponse scaled(cplx factor) const
    {
        auto t = taps_;
        for (auto &x : t)
            x *= factor;
        return ImpulseResponse(std::move(t), spacing_, first_delay_);
    }

    ImpulseResponse with_spacing(double tap_spacing) const { return ImpulseResponse(taps_, tap_spacing, first_delay_); }

    friend bool operator==(const ImpulseResponse &, const ImpulseResponse &) = default;

  private:
    std::vector<cplx> taps_;
    double spacing_;
    double first_delay_;
};

// ------------------------------------------------------------------------
// Channel metrics
// ------------------------------------------------------------------------

struct PowerGain
{
    double linear;
    double db;
};

/// Total tap energy sum |h_n|^2, independent of the delay grid.
inline PowerGain channel_power_gain(const ImpulseResponse &h)
{
    double g = 0.0;
    for (const auto &t : h.taps())
        g += std::norm(t);
    if (!(g > 0.0))
        fail(ErrorKind::degenerate_channel);
    return {g, 10.0 * std::log10(g)};
}

/// RMS delay spread in seconds: tap_spacing * sqrt(mu2 - mu^2) of the normalized power
/// delay profile. The second moment is taken about the energy centroid, which makes the
/// result independent of the delay origin and avoids cancellation for long responses.
inline double rms_delay_spread(const ImpulseResponse &h)
{
    double total = 0.0, first = 0.0;
    const auto taps = h.taps();
    for (std::size_t i = 0; i < taps.size(); ++i)
    {
        const double p = std::norm(taps[i]);
        total += p;
        first += static_cast<double>(i) * p;
    }
    if (!(total > 0.0))
        fail(ErrorKind::degenerate_channel);
    const double centroid = first / total;
    double second = 0.0;
    for (std::size_t i = 0; i < taps.size(); ++i)
    {
        const double d = static_cast<double>(i) - centroid;
        second += d * d * std::norm(taps[i]);
    }
    return h.tap_spacing() * std::sqrt(std::max(0.0, second / total));
}

// ------------------------------------------------------------------------
// Transfer function
// ------------------------------------------------------------------------

struct TransferFunction
{
    std::vector<cplx> bins;
    double bin_spacing; // Hz
    std::size_t size() const noexcept { return bins.size(); }
};

/// Smallest power of two >= 4 L.
inline std::size_t default_dft_size(std::size_t taps)
{
    std::size_t n = 1;
    while (n < 4 * taps)
        n <<= 1;
    return n;
}

/// N-point DFT of the zero-padded taps: H_i = sum_n h_n exp(-j 2 pi i n / N).
inline TransferFunction transfer_function(const ImpulseResponse &h, std::size_t n_points)
{
    const std::size_t L = h.size();
    if (n_points < L)
        fail(ErrorKind::invalid_argument, "DFT size " + std::to_string(n_points) + " shorter than response (" +
                                              std::to_string(L) + " taps)");
    TransferFunction tf{std::vector<cplx>(n_points), 1.0 / (static_cast<double>(n_points) * h.tap_spacing())};
    const auto taps = h.taps();
    const double w = -2.0 * std::numbers::pi / static_cast<double>(n_points);
    for (std::size_t i = 0; i < n_points; ++i)
    {
        cplx acc{};
        for (std::size_t n = 0; n < L; ++n)
        {
            // Reduce the index product mod N so the twiddle argument stays small.
            const auto r = static_cast<double>((i * n) % n_points);
            acc += taps[n] * cplx(std::cos(w * r), std::sin(w * r));
        }
        tf.bins[i] = acc;
    }
    return tf;
}

inline TransferFunction transfer_function(const ImpulseResponse &h)
{
    return transfer_function(h, default_dft_size(h.size()));
}

/// Continuous frequency response of the tap train at frequency f (Hz):
/// H(f) = sum_n h_n exp(-j 2 pi f (first_delay + n tap_spacing)).
inline cplx frequency_response(const ImpulseResponse &h, double f)
{
    const double ph = -2.0 * std::numbers::pi * f * h.tap_spacing();
    const cplx step(std::cos(ph), std::sin(ph));
    const double ph0 = -2.0 * std::numbers::pi * f * h.first_delay();
    cplx rot(std::cos(ph0), std::sin(ph0));
    cplx acc{};
    std::size_t n = 0;
    for (const auto &t : h.taps())
    {
        acc += t * rot;
        // Re-anchor the phasor periodically to bound accumulated rounding.
        if (++n % 64 == 0)
        {
            const double a = ph0 + ph * static_cast<double>(n);
            rot = cplx(std::cos(a), std::sin(a));
        }
        else
            rot *= step;
    }
    return acc;
}

// ------------------------------------------------------------------------
// Nyquist kernels and the equivalent sampled response
// ------------------------------------------------------------------------

/// A continuous-time kernel p(t) with finite support [-half_support, half_support].
template <class K>
concept PulseKernel = requires(const K &k, double t) {
    { k(t) } -> std::convertible_to<double>;
    { k.half_support() } -> std::convertible_to<double>;
};

enum class KernelFamily
{
    raised_cosine
};

/// Raised-cosine Nyquist pulse with unit value at t = 0 and zeros at nonzero multiples of
/// the symbol period, truncated to `span` symbol periods in total.
class NyquistKernel
{
  public:
    NyquistKernel(double sample_period, double roll_off = 0.2, int span = 16,
                  KernelFamily family = KernelFamily::raised_cosine)
        : family_(family), roll_off_(roll_off), span_(span), period_(sample_period)
    {
        if (!(roll_off >= 0.0 && roll_off <= 1.0))
            fail(ErrorKind::invalid_argument, "roll-off must lie in [0, 1]");
        if (span < 2)
            fail(ErrorKind::invalid_argument, "kernel span must be at least 2 symbol periods");
        if (!(sample_period > 0.0))
            fail(ErrorKind::invalid_argument, "kernel sample period must be positive");
    }

    KernelFamily family() const noexcept { return family_; }
    double roll_off() const noexcept { return roll_off_; }
    int span() const noexcept { return span_; }
    double sample_period() const noexcept { return period_; }
    double half_support() const noexcept { return 0.5 * span_ * period_; }

    double operator()(double t) const noexcept
    {
        if (std::abs(t) > half_support())
            return 0.0;
        const double x = t / period_;
        if (x == 0.0)
            return 1.0;
        const double rx = std::round(x);
        if (rx == x)
            return 0.0; // exact Nyquist zero
        using std::numbers::pi;
        const double sinc = std::sin(pi * x) / (pi * x);
        const double b = roll_off_;
        const double denom = 1.0 - 4.0 * b * b * x * x;
        if (std::abs(denom) < 1e-10)
        {
            // Removable singularity at |t| = T / (2 b).
            const double z = 1.0 / (2.0 * b);
            return pi / 4.0 * std::sin(pi * z) / (pi * z);
        }
        return sinc * std::cos(pi * b * x) / denom;
    }

  private:
    KernelFamily family_;
    double roll_off_;
    int span_;
    double period_;
};

static_assert(PulseKernel<NyquistKernel>);

/// Identity kernel on a sample grid: 1 at t = 0, 0 elsewhere (a Kronecker delta once sampled).
class DeltaKernel
{
  public:
    explicit DeltaKernel(double sample_period) : period_(sample_period) {}
    double half_support() const noexcept { return 0.0; }
    double operator()(double t) const noexcept { return std::abs(t) <= 1e-9 * period_ ? 1.0 : 0.0; }

  private:
    double period_;
};

/// Resample a tap train onto the receiver grid through a pulse kernel:
/// h_eq[k] = sum_j h[j] p(k T_out - tau_j).
///
/// The output grid covers every k with nonzero kernel overlap, including precursors
/// before the first tap; index 0 of the result sits at the earliest such k.
template <PulseKernel Kernel>
ImpulseResponse equivalent_response(const ImpulseResponse &h, const Kernel &p, double output_period)
{
    if (!(output_period > 0.0))
        fail(ErrorKind::invalid_argument, "output period must be positive");
    const double half = p.half_support();
    const double t_first = h.delay(0);
    const double t_last = h.delay(h.size() - 1);
    // Small slack keeps grid points that land exactly on the support edge.
    const double slack = 1e-9 * output_period;
    const auto k_min = static_cast<long>(std::ceil((t_first - half - slack) / output_period));
    const auto k_max = static_cast<long>(std::floor((t_last + half + slack) / output_period));
    std::vector<cplx> out(static_cast<std::size_t>(k_max - k_min + 1));
    const auto taps = h.taps();
    for (long k = k_min; k <= k_max; ++k)
    {
        const double t = static_cast<double>(k) * output_period;
        cplx acc{};
        for (std::size_t j = 0; j < taps.size(); ++j)
        {
            const double v = p(t - h.delay(j));
            if (v != 0.0)
                acc += taps[j] * v;
        }
        out[static_cast<std::size_t>(k - k_min)] = acc;
    }
    return ImpulseResponse(std::move(out), output_period, static_cast<double>(k_min) * output_period);
}

} // namespace wireline

#endif
