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

#ifndef WIRELINE_LPTV_HPP
#define WIRELINE_LPTV_HPP

#include "wireline/channel.hpp"
#include "wireline/error.hpp"
#include "wireline/generator.hpp"
#include "wireline/rng.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wireline
{

using HarmonicBank = std::map<int, ImpulseResponse>;

/// Linear periodically time-varying channel: h(t, tau) = sum_m h_m(tau) exp(j 2 pi m t / T0).
///
/// Invariants: T0 > 0; bank nonempty; every harmonic shares tap spacing, first delay and
/// length (shorter inputs are zero-padded at construction).
class LptvChannel
{
  public:
    LptvChannel(HarmonicBank bank, double period) : period_(period)
    {
        if (!(period > 0.0) || !std::isfinite(period))
            fail(ErrorKind::invalid_argument, "LPTV period must be positive");
        if (bank.empty())
            fail(ErrorKind::invalid_argument, "harmonic bank is empty");
        const auto &ref = bank.begin()->second;
        std::size_t len = 0;
        for (const auto &[m, h] : bank)
        {
            if (h.tap_spacing() != ref.tap_spacing())
                fail(ErrorKind::invalid_argument, "harmonic " + std::to_string(m) + " has a different tap spacing");
            if (h.first_delay() != ref.first_delay())
                fail(ErrorKind::invalid_argument, "harmonic " + std::to_string(m) + " has a different first delay");
            len = std::max(len, h.size());
        }
        for (auto &[m, h] : bank)
        {
            if (h.size() == len)
                continue;
            std::vector<cplx> t(h.taps().begin(), h.taps().end());
            t.resize(len);
            h = ImpulseResponse(std::move(t), h.tap_spacing(), h.first_delay());
        }
        bank_ = std::move(bank);
    }

    const HarmonicBank &harmonics() const noexcept { return bank_; }
    double period() const noexcept { return period_; }
    double fundamental() const noexcept { return 1.0 / period_; }
    std::size_t size() const noexcept { return bank_.begin()->second.size(); }
    double tap_spacing() const noexcept { return bank_.begin()->second.tap_spacing(); }
    double first_delay() const noexcept { return bank_.begin()->second.first_delay(); }

    int max_harmonic() const noexcept
    {
        return std::max(std::abs(bank_.begin()->first), std::abs(bank_.rbegin()->first));
    }

    bool is_lti() const noexcept { return bank_.size() == 1 && bank_.begin()->first == 0; }

    /// Complex gain of tap k at time t.
    cplx response_at(double t, std::size_t k) const
    {
        if (k >= size())
            fail(ErrorKind::invalid_argument, "tap index " + std::to_string(k) + " out of range");
        cplx acc{};
        for (const auto &[m, h] : bank_)
            acc += h[k] * harmonic_phasor(m, t);
        return acc;
    }

    /// The whole tap vector at time t.
    ImpulseResponse snapshot(double t) const
    {
        std::vector<cplx> taps(size());
        for (std::size_t k = 0; k < taps.size(); ++k)
            taps[k] = response_at(t, k);
        return ImpulseResponse(std::move(taps), tap_spacing(), first_delay());
    }

    friend bool operator==(const LptvChannel &, const LptvChannel &) = default;

  private:
    cplx harmonic_phasor(int m, double t) const
    {
        if (m == 0)
            return 1.0;
        // Reduce m t / T0 modulo 1 first so that t and t + T0 give bitwise-close phases.
        double cycles = std::fmod(static_cast<double>(m) * t / period_, 1.0);
        return std::polar(1.0, 2.0 * std::numbers::pi * cycles);
    }

    HarmonicBank bank_;
    double period_;
};

/// Wraps a harmonic bank as an LPTV channel.
///
/// With `real_output`, missing negative harmonics are filled with conjugates of their
/// positive partners; supplied negative harmonics must already be conjugate (1e-12
/// relative) and h_0 must be real.
inline LptvChannel zadeh_compose(HarmonicBank bank, double period, bool real_output = false)
{
    if (bank.empty())
        fail(ErrorKind::invalid_argument, "harmonic bank is empty");
    if (real_output)
    {
        if (auto it = bank.find(0); it != bank.end() && !it->second.is_real())
            fail(ErrorKind::invalid_argument, "real output needs a real h_0");
        HarmonicBank added;
        for (const auto &[m, h] : bank)
        {
            if (m <= 0)
                continue;
            std::vector<cplx> conj(h.size());
            std::transform(h.taps().begin(), h.taps().end(), conj.begin(), [](cplx c) { return std::conj(c); });
            ImpulseResponse mirror(std::move(conj), h.tap_spacing(), h.first_delay());
            auto it = bank.find(-m);
            if (it == bank.end())
            {
                added.emplace(-m, std::move(mirror));
                continue;
            }
            const auto &given = it->second;
            if (given.size() != mirror.size() || given.tap_spacing() != mirror.tap_spacing())
                fail(ErrorKind::invalid_argument, "harmonic " + std::to_string(-m) + " is not the conjugate of " +
                                                      std::to_string(m));
            const double scale = channel_power_gain(mirror).linear;
            double diff = 0.0;
            for (std::size_t k = 0; k < given.size(); ++k)
                diff += std::norm(given[k] - mirror[k]);
            if (diff > 1e-24 * scale)
                fail(ErrorKind::invalid_argument, "harmonic " + std::to_string(-m) + " is not the conjugate of " +
                                                      std::to_string(m));
        }
        for (const auto &[m, h] : bank)
            if (m < 0 && !bank.contains(-m))
                fail(ErrorKind::invalid_argument, "harmonic " + std::to_string(m) + " has no positive partner");
        bank.merge(added);
    }
    return LptvChannel(std::move(bank), period);
}

/// Samples of the time-varying response over one period: row n is the tap vector at
/// t = n T0 / samples.
inline std::vector<std::vector<cplx>> sample_period(const LptvChannel &ch, std::size_t samples)
{
    if (samples == 0)
        fail(ErrorKind::invalid_argument, "need at least one sample per period");
    std::vector<std::vector<cplx>> grid(samples, std::vector<cplx>(ch.size()));
    for (std::size_t n = 0; n < samples; ++n)
    {
        const double t = ch.period() * static_cast<double>(n) / static_cast<double>(samples);
        for (std::size_t k = 0; k < ch.size(); ++k)
            grid[n][k] = ch.response_at(t, k);
    }
    return grid;
}

/// Recovers harmonics |m| <= max_harmonic from a response sampled uniformly over one period
/// (grid[n][k] at t = n T0 / N): h_m[k] = (1/N) sum_n grid[n][k] exp(-j 2 pi m n / N).
///
/// Harmonics whose energy is below 1e-24 of the strongest are dropped.
inline HarmonicBank harmonic_extract(const std::vector<std::vector<cplx>> &grid, int max_harmonic,
                                     double tap_spacing, double first_delay = 0.0)
{
    if (max_harmonic < 0)
        fail(ErrorKind::invalid_argument, "harmonic order must be nonnegative");
    const std::size_t N = grid.size();
    if (N < 2 * static_cast<std::size_t>(max_harmonic) + 1)
        fail(ErrorKind::aliased_harmonics, std::to_string(N) + " samples per period cannot resolve " +
                                               std::to_string(2 * max_harmonic + 1) + " harmonics");
    const std::size_t L = grid.front().size();
    if (L == 0)
        fail(ErrorKind::invalid_argument, "sampled response has no taps");
    for (const auto &row : grid)
        if (row.size() != L)
            fail(ErrorKind::invalid_argument, "sampled response rows differ in length");

    // Phasor table indexed by (m n) mod N keeps the DFT exact on the grid.
    std::vector<cplx> w(N);
    for (std::size_t i = 0; i < N; ++i)
        w[i] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(N));

    std::map<int, std::vector<cplx>> raw;
    double strongest = 0.0;
    const auto n_signed = static_cast<long long>(N);
    for (int m = -max_harmonic; m <= max_harmonic; ++m)
    {
        std::vector<cplx> hm(L);
        for (std::size_t n = 0; n < N; ++n)
        {
            const auto idx = static_cast<std::size_t>(((static_cast<long long>(m) * static_cast<long long>(n)) % n_signed +
                                                       n_signed) % n_signed);
            for (std::size_t k = 0; k < L; ++k)
                hm[k] += grid[n][k] * w[idx];
        }
        double e = 0.0;
        for (auto &v : hm)
        {
            v /= static_cast<double>(N);
            e += std::norm(v);
        }
        strongest = std::max(strongest, e);
        raw.emplace(m, std::move(hm));
    }
    if (!(strongest > 0.0))
        fail(ErrorKind::degenerate_channel, "sampled response is identically zero");
    HarmonicBank bank;
    for (auto &[m, hm] : raw)
    {
        double e = 0.0;
        for (auto v : hm)
            e += std::norm(v);
        if (e > 1e-24 * strongest)
            bank.emplace(m, ImpulseResponse(std::move(hm), tap_spacing, first_delay));
    }
    return bank;
}

/// Number of samples per period, if T0 is an integer multiple of Ts (1e-9 relative).
inline std::size_t samples_per_period(double period, double sample_period)
{
    if (!(sample_period > 0.0))
        fail(ErrorKind::invalid_argument, "sample period must be positive");
    const double r = period / sample_period;
    const double n = std::round(r);
    if (n < 1.0 || std::abs(r - n) > 1e-9 * n)
        fail(ErrorKind::not_commensurate, "T0 / Ts = " + std::to_string(r) + " is not an integer");
    return static_cast<std::size_t>(n);
}

/// Passes a sampled signal through the channel:
/// y[n] = sum_m exp(j 2 pi m n Ts / T0) (h_m * x)[n], full-length output (|x| + L - 1).
/// Requires T0 = P Ts for integer P and tap spacing equal to Ts.
inline std::vector<cplx> apply_lptv(const LptvChannel &ch, std::span<const cplx> signal, double sample_period)
{
    const std::size_t P = samples_per_period(ch.period(), sample_period);
    if (std::abs(ch.tap_spacing() - sample_period) > 1e-12 * sample_period)
        fail(ErrorKind::invalid_argument, "tap spacing differs from the signal sample period");
    if (signal.empty())
        return {};
    const std::size_t L = ch.size();
    std::vector<cplx> out(signal.size() + L - 1);
    std::vector<cplx> phasor(P);
    for (std::size_t i = 0; i < P; ++i)
        phasor[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(P));
    std::vector<cplx> conv(out.size());
    const auto p_signed = static_cast<long long>(P);
    for (const auto &[m, h] : ch.harmonics())
    {
        std::fill(conv.begin(), conv.end(), cplx{});
        for (std::size_t k = 0; k < L; ++k)
        {
            const cplx hk = h[k];
            if (hk == cplx{})
                continue;
            for (std::size_t i = 0; i < signal.size(); ++i)
                conv[i + k] += hk * signal[i];
        }
        if (m == 0)
        {
            for (std::size_t n = 0; n < out.size(); ++n)
                out[n] += conv[n];
            continue;
        }
        for (std::size_t n = 0; n < out.size(); ++n)
        {
            const auto idx = static_cast<std::size_t>(
                ((static_cast<long long>(m) * static_cast<long long>(n % P)) % p_signed + p_signed) % p_signed);
            out[n] += phasor[idx] * conv[n];
        }
    }
    return out;
}

inline std::vector<cplx> apply_lptv(const LptvChannel &ch, std::span<const double> signal, double sample_period)
{
    std::vector<cplx> c(signal.begin(), signal.end());
    return apply_lptv(ch, c, sample_period);
}

/// Two-index sampled response h_eq[k, l]: k is the output time index, l the lag.
struct LptvSampledResponse
{
    double sample_period;
    long lag_min;                         // lag of column 0
    std::vector<std::vector<cplx>> rows;  // rows[k][l - lag_min], k = 0..K-1

    std::size_t time_samples() const noexcept { return rows.size(); }
    std::size_t lags() const noexcept { return rows.empty() ? 0 : rows.front().size(); }
};

/// h_eq[k, l] = sum_j rx[j] sum_i h((k - j) Ts, tau_i) p'((l - j) Ts - tau_i):
/// the continuous transmit kernel p' sampled against the tap train, then the receive FIR rx
/// (taps on the Ts grid, rx[0] at zero lag). For an LTI channel and rx = {1} each row equals
/// equivalent_response(h_0, p', Ts).
template <PulseKernel Kernel>
LptvSampledResponse lptv_equivalent_response(const LptvChannel &ch, const Kernel &tx, std::span<const double> rx,
                                             double sample_period, std::size_t time_samples)
{
    if (!(sample_period > 0.0))
        fail(ErrorKind::invalid_argument, "sample period must be positive");
    if (rx.empty())
        fail(ErrorKind::invalid_argument, "receive kernel is empty");
    if (time_samples == 0)
        fail(ErrorKind::invalid_argument, "need at least one time sample");
    const double half = tx.half_support();
    const double slack = 1e-9 * sample_period;
    const double d_first = ch.first_delay();
    const double d_last = ch.first_delay() + static_cast<double>(ch.size() - 1) * ch.tap_spacing();
    const auto l_min = static_cast<long>(std::ceil((d_first - half - slack) / sample_period));
    const auto l_max = static_cast<long>(std::floor((d_last + half + slack) / sample_period)) +
                       static_cast<long>(rx.size()) - 1;
    const std::size_t width = static_cast<std::size_t>(l_max - l_min + 1);

    LptvSampledResponse out{sample_period, l_min, {}};
    out.rows.assign(time_samples, std::vector<cplx>(width));
    std::vector<cplx> taps_at(ch.size());
    for (std::size_t k = 0; k < time_samples; ++k)
    {
        for (std::size_t j = 0; j < rx.size(); ++j)
        {
            if (rx[j] == 0.0)
                continue;
            const double t = (static_cast<double>(k) - static_cast<double>(j)) * sample_period;
            for (std::size_t i = 0; i < ch.size(); ++i)
                taps_at[i] = ch.response_at(t, i);
            for (long l = l_min; l <= l_max; ++l)
            {
                const double base = static_cast<double>(l - static_cast<long>(j)) * sample_period;
                cplx acc{};
                for (std::size_t i = 0; i < ch.size(); ++i)
                {
                    const double v = tx(base - (d_first + static_cast<double>(i) * ch.tap_spacing()));
                    if (v != 0.0)
                        acc += taps_at[i] * v;
                }
                out.rows[k][static_cast<std::size_t>(l - l_min)] += rx[j] * acc;
            }
        }
    }
    return out;
}

/// Harmonic bank built from generated LTI realizations: h_0 is a full generator draw and
/// each h_m, m = 1..max_harmonic, is a fresh PDP shape on h_0's delay grid scaled to
/// step_db * m below h_0's gain. Negative harmonics follow by conjugation when real.
inline LptvChannel generate_lptv(const GeneratorConfig &config, Rng &rng, double period, int max_harmonic = 3,
                                 double step_db = 10.0, bool real_output = true)
{
    if (max_harmonic < 0)
        fail(ErrorKind::invalid_argument, "harmonic order must be nonnegative");
    config.validate();
    const auto base = generate(config, rng);
    HarmonicBank bank;
    bank.emplace(0, base.channel);
    const double g0 = channel_power_gain(base.channel).linear;
    for (int m = 1; m <= max_harmonic; ++m)
    {
        const auto shape = synthesize_pdp(config, rng);
        const double target = g0 * std::pow(10.0, -step_db * m / 10.0);
        const double factor = std::sqrt(target / channel_power_gain(shape).linear);
        std::vector<cplx> taps(shape.size());
        for (std::size_t k = 0; k < taps.size(); ++k)
            taps[k] = shape[k] * factor;
        bank.emplace(m, ImpulseResponse(std::move(taps), base.channel.tap_spacing(), base.channel.first_delay()));
    }
    return zadeh_compose(std::move(bank), period, real_output);
}

} // namespace wireline

#endif
