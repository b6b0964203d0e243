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

#ifndef WIRELINE_REGRESSION_HPP
#define WIRELINE_REGRESSION_HPP

#include "wireline/error.hpp"
#include "wireline/stats.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace wireline
{

enum class LineForm
{
    linear, // sigma_us = slope * gain_db + intercept
    log     // ln(sigma_us) = slope * gain_db + intercept
};

inline const char *to_string(LineForm f) { return f == LineForm::linear ? "linear" : "log"; }

/// Trend line between channel gain (dB) and RMS delay spread (microseconds).
struct RegressionLine
{
    double slope = 0.0;
    double intercept = 0.0;
    LineForm form = LineForm::linear;
    double correlation = 0.0;

    /// RMS delay spread in microseconds predicted at gain_db.
    double rmsds_us(double gain_db) const
    {
        const double v = slope * gain_db + intercept;
        return form == LineForm::linear ? v : std::exp(v);
    }

    friend bool operator==(const RegressionLine &, const RegressionLine &) = default;
};

struct RobustFit
{
    RegressionLine line;
    std::vector<double> weights; // final bisquare weights, one per point
    double scale = 0.0;          // robust residual scale (median|r| / 0.6745)
    int iterations = 0;
    bool converged = false;
};

struct RobustOptions
{
    double tuning = 4.685; // bisquare constant, 95% Gaussian efficiency
    double tolerance = 1e-8;
    int max_iterations = 100;
};

/// Normal 0.75 quantile; MAD / this estimates sigma for Gaussian residuals.
inline constexpr double mad_consistency = 0.6744897501960817;

/// Tukey bisquare weight; exactly zero at and beyond |u| >= 1.
inline double bisquare_weight(double u)
{
    if (std::abs(u) >= 1.0)
        return 0.0;
    const double t = 1.0 - u * u;
    return t * t;
}

namespace detail
{

struct WeightedLine
{
    double slope;
    double intercept;
};

inline WeightedLine weighted_least_squares(std::span<const double> x, std::span<const double> y,
                                           std::span<const double> w)
{
    double sw = 0, sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sw += w[i];
        sx += w[i] * x[i];
        sy += w[i] * y[i];
    }
    if (!(sw > 0.0))
        fail(ErrorKind::rank_deficient, "all regression weights vanished");
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        sxx += w[i] * (x[i] - mx) * (x[i] - mx);
        sxy += w[i] * (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0))
        fail(ErrorKind::rank_deficient, "weighted abscissae have no spread");
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

} // namespace detail

/// Ordinary least squares line fit.
inline RegressionLine ordinary_least_squares(std::span<const double> x, std::span<const double> y)
{
    const std::vector<double> w(x.size(), 1.0);
    const auto fit = detail::weighted_least_squares(x, y, w);
    return {fit.slope, fit.intercept, LineForm::linear, pearson(x, y)};
}

/// Iteratively reweighted least squares line fit with Tukey bisquare weights.
///
/// Starts from OLS; each pass rescales residuals by tuning * median|r| / 0.6745 and refits with
/// bisquare weights until the largest weight change drops below the tolerance. For the log
/// form the response is ln(y). The reported correlation is Pearson on the raw (x, y) or
/// (x, ln y) pairs.
inline RobustFit robust_regress(std::span<const double> x, std::span<const double> y,
                                LineForm form = LineForm::linear, const RobustOptions &opt = {})
{
    if (x.size() != y.size())
        fail(ErrorKind::invalid_argument, "regression inputs differ in length");
    if (x.size() < 3)
        fail(ErrorKind::invalid_argument, "regression needs at least 3 points");
    if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; }))
        fail(ErrorKind::rank_deficient, "all abscissae are equal");

    std::vector<double> resp(y.begin(), y.end());
    if (form == LineForm::log)
        for (auto &v : resp)
        {
            if (!(v > 0.0))
                fail(ErrorKind::invalid_argument, "log-form regression needs positive responses");
            v = std::log(v);
        }

    const std::size_t n = x.size();
    RobustFit out;
    out.weights.assign(n, 1.0);
    auto line = detail::weighted_least_squares(x, resp, out.weights);

    double yscale = 0.0;
    for (double v : resp)
        yscale = std::max(yscale, std::abs(v));
    // Floor on the residual scale so exact-fit majorities keep unit weight instead of dividing by zero.
    const double scale_floor = 1e-12 * (1.0 + yscale);

    std::vector<double> resid(n), absdev(n), next(n);
    for (int it = 1; it <= opt.max_iterations; ++it)
    {
        for (std::size_t i = 0; i < n; ++i)
            resid[i] = resp[i] - (line.slope * x[i] + line.intercept);
        // MAD about zero: residuals of a fitted line are centred by construction.
        for (std::size_t i = 0; i < n; ++i)
            absdev[i] = std::abs(resid[i]);
        const double s = std::max(median(absdev) / mad_consistency, scale_floor);
        out.scale = s;
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            next[i] = bisquare_weight(resid[i] / (opt.tuning * s));
            change = std::max(change, std::abs(next[i] - out.weights[i]));
        }
        out.weights = next;
        out.iterations = it;
        line = detail::weighted_least_squares(x, resp, out.weights);
        if (change < opt.tolerance)
        {
            out.converged = true;
            break;
        }
    }
    const bool flat = std::all_of(resp.begin(), resp.end(), [&](double v) { return v == resp[0]; });
    out.line = {line.slope, line.intercept, form, flat ? 0.0 : pearson(x, resp)};
    return out;
}

} // namespace wireline

#endif
