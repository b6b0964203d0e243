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

#ifndef WIRELINE_GENERATOR_HPP
#define WIRELINE_GENERATOR_HPP

#include "wireline/channel.hpp"
#include "wireline/error.hpp"
#include "wireline/profiles.hpp"
#include "wireline/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace wireline
{

enum class PdpFamily
{
    gaussian_random,
    exponential,
    equi_power,
    two_tap
};

inline const char *to_string(PdpFamily f)
{
    switch (f)
    {
    case PdpFamily::gaussian_random:
        return "gaussian-random";
    case PdpFamily::exponential:
        return "exponential";
    case PdpFamily::equi_power:
        return "equi-power";
    case PdpFamily::two_tap:
        return "two-tap";
    }
    return "unknown";
}

inline std::optional<PdpFamily> parse_pdp_family(std::string_view s)
{
    for (auto f : {PdpFamily::gaussian_random, PdpFamily::exponential, PdpFamily::equi_power, PdpFamily::two_tap})
        if (s == to_string(f))
            return f;
    return std::nullopt;
}

/// Options shared by every draw of target gain and RMS delay spread.
struct DrawOptions
{
    bool truncate_to_table_bounds = false;
    // Floor applied when a regression line evaluates at or below it; nullopt turns a
    // nonpositive line value into an error instead.
    std::optional<double> rmsds_floor_s = 1e-9;
};

struct GeneratorConfig
{
    ScenarioProfile profile;
    PdpFamily pdp = PdpFamily::gaussian_random;
    std::size_t taps = 50;          // ignored for two-tap
    double exponential_decay = 8.0; // in taps, exponential family only
    DrawOptions draw{};
    std::uint64_t seed = 0;

    std::size_t effective_taps() const { return pdp == PdpFamily::two_tap ? 2 : taps; }

    void validate() const
    {
        profile.validate();
        if (pdp != PdpFamily::two_tap && taps < 2)
            fail(ErrorKind::invalid_argument, "multi-tap PDP families need at least 2 taps");
        if (pdp == PdpFamily::exponential && !(exponential_decay > 0.0))
            fail(ErrorKind::invalid_argument, "exponential decay must be positive");
        if (draw.rmsds_floor_s && !(*draw.rmsds_floor_s > 0.0))
            fail(ErrorKind::invalid_argument, "RMS delay spread floor must be positive");
    }
};

/// Identifies the random stream a realization came from.
struct SeedPath
{
    std::uint64_t master_seed = 0;
    std::uint64_t index = 0;
    std::uint64_t stream_seed = 0;
};

struct Realization
{
    ImpulseResponse channel;
    double target_gain_db;
    double target_rmsds_s;
    double achieved_gain_db;
    double achieved_rmsds_s;
    SeedPath seed_path{};
};

// ------------------------------------------------------------------------
// Target draws
// ------------------------------------------------------------------------

/// Attenuation A_dB ~ N(mu, sigma), optionally redrawn into the profile's table bounds,
/// then clamped at 0 dB (a passive channel cannot have gain).
inline double draw_attenuation(const ScenarioProfile &profile, Rng &rng, bool truncate = false)
{
    if (truncate && !(profile.atten_min_db && profile.atten_max_db))
        fail(ErrorKind::invalid_argument, "profile '" + profile.name + "' has no truncation bounds");
    constexpr int max_redraws = 10000;
    for (int i = 0; i < max_redraws; ++i)
    {
        const double a = rng.normal(profile.atten_mu_db, profile.atten_sigma_db);
        if (truncate && (a < *profile.atten_min_db || a > *profile.atten_max_db))
            continue;
        return std::max(a, 0.0);
    }
    fail(ErrorKind::unsatisfiable_bounds,
         "no attenuation draw within bounds after " + std::to_string(max_redraws) + " attempts");
}

/// Lognormal parameters (log-mean, log-std) matching a linear-domain mean and std.
inline std::pair<double, double> lognormal_from_moments(double mean, double std)
{
    const double m2 = mean * mean;
    const double v = std * std;
    return {std::log(m2 / std::sqrt(m2 + v)), std::sqrt(std::log1p(v / m2))};
}

inline constexpr double leptokurtic_threshold = 3.0;

/// Target RMS delay spread (seconds) for a drawn attenuation.
///
/// Profiles with kurtosis above 3 and a conditional branch draw from the conditional
/// lognormal when the attenuation exceeds the branch threshold; everything else evaluates
/// the profile's active regression line at G_dB = -atten_db.
inline double target_rms_ds(const ScenarioProfile &profile, double atten_db, Rng &rng,
                            std::optional<double> floor_s = 1e-9)
{
    if (!(atten_db >= 0.0))
        fail(ErrorKind::invalid_argument, "attenuation must be nonnegative");
    const auto &branch = profile.conditional_branch;
    if (profile.rmsds_kurtosis > leptokurtic_threshold && branch && atten_db > branch->threshold_db)
    {
        const auto [mu, sigma] = lognormal_from_moments(branch->mean_us, branch->std_us);
        return std::exp(rng.normal(mu, sigma)) * 1e-6;
    }
    const double s = profile.active_line().rmsds_us(-atten_db) * 1e-6;
    if (floor_s)
        return std::max(s, *floor_s);
    if (!(s > 0.0))
        fail(ErrorKind::nonpositive_rmsds, "regression line gives " + std::to_string(s) + " s at " +
                                               std::to_string(atten_db) + " dB and no floor is configured");
    return s;
}

// ------------------------------------------------------------------------
// PDP shapes and target imposition
// ------------------------------------------------------------------------

/// Unnormalized PDP shape on a unit delay grid.
inline ImpulseResponse synthesize_pdp(const GeneratorConfig &config, Rng &rng)
{
    const std::size_t L = config.effective_taps();
    std::vector<cplx> taps(L);
    switch (config.pdp)
    {
    case PdpFamily::gaussian_random:
        for (auto &t : taps)
            t = rng.normal();
        break;
    case PdpFamily::exponential:
        for (std::size_t k = 0; k < L; ++k)
            taps[k] = rng.sign() * std::exp(-static_cast<double>(k) / config.exponential_decay);
        break;
    case PdpFamily::equi_power:
        for (auto &t : taps)
            t = rng.sign();
        break;
    case PdpFamily::two_tap:
        taps = {1.0, 1.0};
        break;
    }
    return ImpulseResponse(std::move(taps), 1.0);
}

/// Scales amplitudes to the target gain, then stretches the delay grid so the RMS delay
/// spread equals the target: tau = target / sigma_unit, with sigma_unit the spread of the
/// shape on a unit grid.
inline Realization impose_targets(const ImpulseResponse &shape, double gain_db, double rmsds_s)
{
    if (!(rmsds_s > 0.0))
        fail(ErrorKind::invalid_argument, "target RMS delay spread must be positive");
    const ImpulseResponse unit = shape.with_spacing(1.0);
    const double sigma_unit = rms_delay_spread(unit);
    if (!(sigma_unit > 0.0))
        fail(ErrorKind::degenerate_channel, "PDP shape has zero delay spread");
    const double energy = channel_power_gain(unit).linear;
    const double factor = std::sqrt(std::pow(10.0, gain_db / 10.0) / energy);
    ImpulseResponse ch = unit.scaled(factor).with_spacing(rmsds_s / sigma_unit);
    const double achieved_gain = channel_power_gain(ch).db;
    const double achieved_rmsds = rms_delay_spread(ch);
    return {std::move(ch), gain_db, rmsds_s, achieved_gain, achieved_rmsds, {}};
}

/// Two equi-power taps |h|^2 = G / 2 separated by tau = 2 sigma (closed form).
inline Realization two_tap_channel(double gain_db, double rmsds_s)
{
    if (!(rmsds_s > 0.0))
        fail(ErrorKind::invalid_argument, "target RMS delay spread must be positive");
    const double amp = std::sqrt(0.5 * std::pow(10.0, gain_db / 10.0));
    ImpulseResponse ch({amp, amp}, 2.0 * rmsds_s);
    const double achieved_gain = channel_power_gain(ch).db;
    const double achieved_rmsds = rms_delay_spread(ch);
    return {std::move(ch), gain_db, rmsds_s, achieved_gain, achieved_rmsds, {}};
}

// ------------------------------------------------------------------------
// Generation
// ------------------------------------------------------------------------

/// One channel realization: PDP shape, attenuation draw, target RMS delay spread, gain
/// normalization, delay-grid stretch.
inline Realization generate(const GeneratorConfig &config, Rng &rng)
{
    constexpr int max_attempts = 100;
    std::optional<ImpulseResponse> shape;
    for (int i = 0; i < max_attempts && !shape; ++i)
    {
        auto s = synthesize_pdp(config, rng);
        if (rms_delay_spread(s) > 0.0)
            shape = std::move(s);
    }
    if (!shape)
        fail(ErrorKind::degenerate_channel,
             "PDP synthesis produced zero delay spread " + std::to_string(max_attempts) + " times");
    const double atten = draw_attenuation(config.profile, rng, config.draw.truncate_to_table_bounds);
    const double sigma = target_rms_ds(config.profile, atten, rng, config.draw.rmsds_floor_s);
    // Closed form for two taps; the shape consumed no randomness, so the draws match generate_two_tap.
    if (config.pdp == PdpFamily::two_tap)
        return two_tap_channel(-atten, sigma);
    return impose_targets(*shape, -atten, sigma);
}

/// Two-tap specialization drawing the same targets as generate().
inline Realization generate_two_tap(const ScenarioProfile &profile, Rng &rng, const DrawOptions &opt = {})
{
    const double atten = draw_attenuation(profile, rng, opt.truncate_to_table_bounds);
    const double sigma = target_rms_ds(profile, atten, rng, opt.rmsds_floor_s);
    return two_tap_channel(-atten, sigma);
}

struct Ensemble
{
    GeneratorConfig config;
    std::uint64_t master_seed = 0;
    std::vector<Realization> realizations;

    std::size_t size() const noexcept { return realizations.size(); }

    std::vector<double> gains_db() const
    {
        std::vector<double> v;
        v.reserve(size());
        for (const auto &r : realizations)
            v.push_back(r.achieved_gain_db);
        return v;
    }

    std::vector<double> rmsds_s() const
    {
        std::vector<double> v;
        v.reserve(size());
        for (const auto &r : realizations)
            v.push_back(r.achieved_rmsds_s);
        return v;
    }
};

/// `count` independent realizations; realization i uses the stream derive_seed(master_seed, i),
/// so output is identical for any thread count.
inline Ensemble generate_ensemble(const GeneratorConfig &config, std::size_t count, std::uint64_t master_seed,
                                  unsigned threads = 0)
{
    if (count < 1)
        fail(ErrorKind::invalid_argument, "ensemble size must be at least 1");
    config.validate();
    std::vector<std::optional<Realization>> slots(count);
    auto work = [&](std::size_t begin, std::size_t stride) {
        for (std::size_t i = begin; i < count; i += stride)
        {
            const std::uint64_t s = derive_seed(master_seed, i);
            Rng rng(s);
            auto r = generate(config, rng);
            r.seed_path = {master_seed, i, s};
            slots[i] = std::move(r);
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    if (threads <= 1)
        work(0, 1);
    else
    {
        // Exceptions are captured per worker and rethrown in index order.
        std::vector<std::exception_ptr> errors(threads);
        {
            std::vector<std::jthread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back([&, t] {
                    try
                    {
                        work(t, threads);
                    }
                    catch (...)
                    {
                        errors[t] = std::current_exception();
                    }
                });
        }
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
    Ensemble ens{config, master_seed, {}};
    ens.realizations.reserve(count);
    for (auto &s : slots)
        ens.realizations.push_back(std::move(*s));
    return ens;
}

} // namespace wireline

#endif
