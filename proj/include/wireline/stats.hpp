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

#ifndef WIRELINE_STATS_HPP
#define WIRELINE_STATS_HPP

#include "wireline/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <vector>

namespace wireline
{

inline double mean(std::span<const double> x)
{
    if (x.empty())
        fail(ErrorKind::invalid_argument, "mean of empty sample");
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

/// Unbiased (n - 1) sample variance.
inline double sample_variance(std::span<const double> x)
{
    if (x.size() < 2)
        fail(ErrorKind::invalid_argument, "variance needs at least 2 samples");
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x)
        ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

inline double sample_stddev(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

/// Quantile of an ascending-sorted sample by linear interpolation between order statistics
/// (position p (n - 1), the "type 7" rule).
inline double quantile_sorted(std::span<const double> sorted, double p)
{
    if (sorted.empty())
        fail(ErrorKind::invalid_argument, "quantile of empty sample");
    if (!(p >= 0.0 && p <= 1.0))
        fail(ErrorKind::invalid_argument, "quantile probability outside [0, 1]");
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double quantile(std::span<const double> x, double p)
{
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    return quantile_sorted(s, p);
}

inline double median(std::span<const double> x) { return quantile(x, 0.5); }

struct SummaryStats
{
    double min;
    double max;
    double mean;
    double std_dev;  // n - 1 normalization
    double kurtosis; // non-excess, 3 for a Gaussian
    double skewness;
    double p50;
    double p90;
};

/// Min/max/mean/std/kurtosis/skewness/median/90th percentile.
///
/// Skewness and kurtosis are the moment ratios m3 / m2^1.5 and m4 / m2^2 of the central
/// sample moments (biased estimators); std_dev uses n - 1.
inline SummaryStats summary_statistics(std::span<const double> x)
{
    if (x.size() < 2)
        fail(ErrorKind::invalid_argument, "summary statistics need at least 2 samples");
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    const double m = mean(s);
    const auto n = static_cast<double>(s.size());
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double v : s)
    {
        const double d = v - m;
        const double d2 = d * d;
        m2 += d2;
        m3 += d2 * d;
        m4 += d2 * d2;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    if (!(m2 > 0.0) || s.front() == s.back())
        fail(ErrorKind::zero_variance);
    SummaryStats st{};
    st.min = s.front();
    st.max = s.back();
    st.mean = m;
    st.std_dev = std::sqrt(m2 * n / (n - 1.0));
    st.kurtosis = m4 / (m2 * m2);
    st.skewness = m3 / std::pow(m2, 1.5);
    st.p50 = quantile_sorted(s, 0.5);
    st.p90 = quantile_sorted(s, 0.9);
    return st;
}

/// Pearson correlation coefficient.
inline double pearson(std::span<const double> x, std::span<const double> y)
{
    if (x.size() != y.size())
        fail(ErrorKind::invalid_argument, "correlation inputs differ in length");
    if (x.size() < 2)
        fail(ErrorKind::invalid_argument, "correlation needs at least 2 pairs");
    const double mx = mean(x), my = mean(y);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0))
        fail(ErrorKind::zero_variance, "correlation input is constant");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

inline double normal_quantile(double p)
{
    static const boost::math::normal_distribution<double> standard{};
    return boost::math::quantile(standard, p);
}

} // namespace wireline

#endif
