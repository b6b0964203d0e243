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

#ifndef WIRELINE_LINK_HPP
#define WIRELINE_LINK_HPP

#include "wireline/channel.hpp"
#include "wireline/error.hpp"
#include "wireline/generator.hpp"
#include "wireline/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <span>
#include <utility>
#include <vector>

namespace wireline
{

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

/// Multicarrier link parameters. PSDs are in dBm/Hz.
struct OfdmConfig
{
    std::size_t subcarriers = 1024; // M
    std::size_t guard = 0;          // nu, cyclic prefix samples
    double sample_period = 1.0 / 28e6;
    double tx_psd_dbm_hz = -55.0;
    double noise_psd_dbm_hz = -120.0;

    void validate() const
    {
        if (subcarriers < 2)
            fail(ErrorKind::invalid_argument, "need at least 2 subcarriers");
        if (guard >= subcarriers)
            fail(ErrorKind::invalid_argument, "guard interval must be shorter than the symbol");
        if (!(sample_period > 0.0))
            fail(ErrorKind::invalid_argument, "sample period must be positive");
    }

    double efficiency() const
    {
        return static_cast<double>(subcarriers) / static_cast<double>(subcarriers + guard);
    }
};

/// Gap-approximation capacity parameters.
struct CapacityConfig
{
    double bandwidth_hz = 28e6; // W
    double gamma_db = 7.0;      // SNR gap, used unless both components below are set
    std::optional<double> gamma_c_db; // coding gain
    std::optional<double> gamma_m_db; // margin
    double efficiency_cap = 12.0;
    double band_start_hz = 2e6;
    double band_end_hz = 30e6;
    std::size_t subcarriers = 1024; // evaluation grid across the band
    double tx_psd_dbm_hz = -55.0;
    double noise_psd_dbm_hz = -120.0;

    /// Gap from its components: 9.8 dB + margin - coding gain.
    static double gap_db(double margin_db, double coding_gain_db) { return 9.8 + margin_db - coding_gain_db; }

    double effective_gamma_db() const
    {
        if (gamma_c_db.has_value() != gamma_m_db.has_value())
            fail(ErrorKind::invalid_argument, "gap components need both coding gain and margin");
        return gamma_c_db ? gap_db(*gamma_m_db, *gamma_c_db) : gamma_db;
    }

    void validate() const
    {
        if (!(bandwidth_hz > 0.0))
            fail(ErrorKind::invalid_argument, "bandwidth must be positive");
        if (!(efficiency_cap > 0.0))
            fail(ErrorKind::invalid_argument, "efficiency cap must be positive");
        if (!(band_start_hz >= 0.0 && band_end_hz > band_start_hz))
            fail(ErrorKind::invalid_argument, "band edges must satisfy 0 <= start < end");
    }
};

// ------------------------------------------------------------------------
// Guard-interval interference
// ------------------------------------------------------------------------

struct PowerPartition
{
    double useful;       // P_U
    double interference; // P_I
};

/// Splits the channel gain into useful and interference power for an OFDM receiver with
/// M subcarriers and a nu-sample guard.
///
/// A tap at sample delay d leaks e = max(0, d - nu) samples past the guard. Its surviving
/// amplitude on its own subcarrier is w = (M - e) / M, contributing |h_d|^2 w^2 to P_U; the
/// remainder |h_d|^2 (1 - w^2) is ISI plus ICI. P_U + P_I equals the channel gain.
inline PowerPartition power_partition(const ImpulseResponse &h, std::size_t M, std::size_t nu)
{
    if (M < 2)
        fail(ErrorKind::invalid_argument, "need at least 2 subcarriers");
    if (h.size() > M + nu)
        fail(ErrorKind::footnote_regime, "channel of " + std::to_string(h.size()) + " taps exceeds M + nu = " +
                                             std::to_string(M + nu));
    PowerPartition out{0.0, 0.0};
    const auto taps = h.taps();
    const auto m = static_cast<double>(M);
    for (std::size_t d = 0; d < taps.size(); ++d)
    {
        const double p = std::norm(taps[d]);
        if (d <= nu)
        {
            out.useful += p;
            continue;
        }
        const double w = (m - static_cast<double>(d - nu)) / m;
        const double u = p * w * w;
        out.useful += u;
        out.interference += p - u;
    }
    return out;
}

/// Signal to noise-plus-interference ratio in dB for a channel on the OFDM sample grid.
inline double snir_db(const ImpulseResponse &h, const OfdmConfig &ofdm)
{
    ofdm.validate();
    const auto part = power_partition(h, ofdm.subcarriers, ofdm.guard);
    const double eta = ofdm.efficiency();
    const double pt = db_to_linear(ofdm.tx_psd_dbm_hz);
    const double n0 = db_to_linear(ofdm.noise_psd_dbm_hz);
    return linear_to_db(eta * pt * part.useful / (eta * pt * part.interference + n0));
}

/// Achievable multicarrier rate (bits/s): eta W min(log2(1 + SNIR / Gamma), cap).
inline double achievable_rate_mc(const ImpulseResponse &h, const OfdmConfig &ofdm, const CapacityConfig &cap)
{
    cap.validate();
    const double snir = db_to_linear(snir_db(h, ofdm));
    const double se = std::min(std::log2(1.0 + snir / db_to_linear(cap.effective_gamma_db())), cap.efficiency_cap);
    return ofdm.efficiency() * cap.bandwidth_hz * se;
}

struct CpGrid
{
    std::vector<std::size_t> subcarriers;
    std::vector<std::size_t> guards; // empty: per-M default {0, 1, 2, 4, ..., M/4}
};

inline std::vector<std::size_t> default_guard_grid(std::size_t M)
{
    std::vector<std::size_t> g{0};
    for (std::size_t v = 1; v <= M / 4; v *= 2)
        g.push_back(v);
    return g;
}

inline CpGrid default_cp_grid() { return {{256, 512, 1024, 2048, 4096}, {}}; }

struct SweepPoint
{
    std::size_t subcarriers;
    std::size_t guard;
    double rate_bps;
};

struct SweepResult
{
    std::vector<SweepPoint> points; // every evaluated (M, nu), in grid order
    SweepPoint best;
};

/// Exhaustive (M, nu) search maximizing achievable_rate_mc. Pairs outside the footnote
/// regime (L > M + nu) or with nu >= M are skipped. Ties go to smaller nu, then smaller M.
inline SweepResult optimize_cp(const ImpulseResponse &h, const CpGrid &grid, const OfdmConfig &base,
                               const CapacityConfig &cap)
{
    if (grid.subcarriers.empty())
        fail(ErrorKind::invalid_argument, "empty subcarrier grid");
    SweepResult out{};
    bool have = false;
    for (std::size_t M : grid.subcarriers)
    {
        const auto guards = grid.guards.empty() ? default_guard_grid(M) : grid.guards;
        for (std::size_t nu : guards)
        {
            if (nu >= M || h.size() > M + nu || M < 2)
                continue;
            OfdmConfig o = base;
            o.subcarriers = M;
            o.guard = nu;
            const SweepPoint p{M, nu, achievable_rate_mc(h, o, cap)};
            out.points.push_back(p);
            const bool better = !have || p.rate_bps > out.best.rate_bps ||
                                (p.rate_bps == out.best.rate_bps &&
                                 (p.guard < out.best.guard ||
                                  (p.guard == out.best.guard && p.subcarriers < out.best.subcarriers)));
            if (better)
            {
                out.best = p;
                have = true;
            }
        }
    }
    if (!have)
        fail(ErrorKind::footnote_regime, "no grid point can hold the channel");
    return out;
}

// ------------------------------------------------------------------------
// Gap-approximation capacity and coverage
// ------------------------------------------------------------------------

/// Subcarrier centre frequencies: `subcarriers` evenly spaced bins across the band.
inline std::vector<double> subcarrier_centers(const CapacityConfig &cap)
{
    cap.validate();
    if (cap.subcarriers == 0)
        fail(ErrorKind::invalid_argument, "empty subcarrier set");
    std::vector<double> f(cap.subcarriers);
    const double df = (cap.band_end_hz - cap.band_start_hz) / static_cast<double>(cap.subcarriers);
    for (std::size_t k = 0; k < f.size(); ++k)
        f[k] = cap.band_start_hz + (static_cast<double>(k) + 0.5) * df;
    return f;
}

/// Capacity in bits/s: W times the mean over subcarriers of min(log2(1 + SNR_k / Gamma), cap),
/// with SNR_k = P_T |H(f_k)|^2 / N_0 from the channel's continuous frequency response.
inline double capacity(const ImpulseResponse &h, const CapacityConfig &cap, std::span<const double> centers)
{
    cap.validate();
    if (centers.empty())
        fail(ErrorKind::invalid_argument, "empty subcarrier set");
    const double snr_scale = db_to_linear(cap.tx_psd_dbm_hz - cap.noise_psd_dbm_hz - cap.effective_gamma_db());
    double acc = 0.0;
    for (double f : centers)
    {
        const double g = std::norm(frequency_response(h, f));
        acc += std::min(std::log2(1.0 + snr_scale * g), cap.efficiency_cap);
    }
    return cap.bandwidth_hz * acc / static_cast<double>(centers.size());
}

inline double capacity(const ImpulseResponse &h, const CapacityConfig &cap = {})
{
    const auto f = subcarrier_centers(cap);
    return capacity(h, cap, f);
}

inline std::vector<double> ensemble_capacities(const Ensemble &ens, const CapacityConfig &cap = {})
{
    const auto f = subcarrier_centers(cap);
    std::vector<double> c;
    c.reserve(ens.size());
    for (const auto &r : ens.realizations)
        c.push_back(capacity(r.channel, cap, f));
    return c;
}

struct CdfPoint
{
    double rate_bps;
    double probability;
};

/// Empirical CDF of a sample: sorted values paired with i / n, i = 1..n.
inline std::vector<CdfPoint> empirical_cdf(std::span<const double> values)
{
    if (values.empty())
        fail(ErrorKind::invalid_argument, "empirical CDF of empty sample");
    std::vector<double> s(values.begin(), values.end());
    std::sort(s.begin(), s.end());
    std::vector<CdfPoint> out(s.size());
    const auto n = static_cast<double>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        out[i] = {s[i], static_cast<double>(i + 1) / n};
    return out;
}

inline std::vector<CdfPoint> coverage_cdf(const Ensemble &ens, const CapacityConfig &cap = {})
{
    if (ens.size() == 0)
        fail(ErrorKind::invalid_argument, "empty ensemble");
    return empirical_cdf(ensemble_capacities(ens, cap));
}

struct CapacityCorrelation
{
    double with_gain_db;
    double with_rmsds;
};

inline CapacityCorrelation capacity_gain_correlation(std::span<const double> capacities, std::span<const double> gains_db,
                                                     std::span<const double> rmsds_s)
{
    if (capacities.size() < 3)
        fail(ErrorKind::invalid_argument, "correlation needs at least 3 realizations");
    return {pearson(capacities, gains_db), pearson(capacities, rmsds_s)};
}

/// Pearson correlation of per-realization capacity with gain (dB) and with RMS delay spread.
inline CapacityCorrelation capacity_gain_correlation(const Ensemble &ens, const CapacityConfig &cap = {})
{
    if (ens.size() < 3)
        fail(ErrorKind::invalid_argument, "correlation needs at least 3 realizations");
    const auto c = ensemble_capacities(ens, cap);
    return capacity_gain_correlation(c, ens.gains_db(), ens.rmsds_s());
}

} // namespace wireline

#endif
