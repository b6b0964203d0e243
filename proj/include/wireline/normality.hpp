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

#ifndef WIRELINE_NORMALITY_HPP
#define WIRELINE_NORMALITY_HPP

#include "wireline/error.hpp"
#include "wireline/rng.hpp"
#include "wireline/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <span>
#include <string>
#include <vector>

namespace wireline
{

inline constexpr double significance_level = 0.05;

/// Outcome of one hypothesis test. p_value is NaN when the test was not applicable.
struct TestReport
{
    std::string test_name;
    double statistic = std::numeric_limits<double>::quiet_NaN();
    double p_value = std::numeric_limits<double>::quiet_NaN();
    bool reject_at_5pct = false;
    bool applicable = true;
};

namespace detail
{

inline TestReport make_report(std::string name, double statistic, double p)
{
    p = std::clamp(p, 0.0, 1.0);
    return {std::move(name), statistic, p, p < significance_level, true};
}

inline TestReport not_applicable(std::string name)
{
    TestReport r;
    r.test_name = std::move(name);
    r.applicable = false;
    return r;
}

// Sorted copy; throws on zero spread.
inline std::vector<double> sorted_checked(std::span<const double> x)
{
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    if (s.size() < 2 || s.front() == s.back())
        fail(ErrorKind::zero_variance);
    return s;
}

template <std::size_t N> double poly(const std::array<double, N> &c, double x)
{
    double r = 0.0;
    for (std::size_t i = N; i-- > 0;)
        r = r * x + c[i];
    return r;
}

// log(1 - Phi(z)) without cancellation in the upper tail.
inline double log_normal_sf(double z) { return std::log(0.5 * std::erfc(z / std::numbers::sqrt2)); }
inline double log_normal_cdf(double z) { return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2)); }

// Upper tail of the Kolmogorov distribution, Q(lambda) = P(K > lambda).
inline double kolmogorov_sf(double lambda)
{
    if (lambda <= 0.0)
        return 1.0;
    if (lambda < 1.18)
    {
        // Small-lambda series for the CDF converges fast here.
        const double c = std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
        double s = 0.0;
        for (int j = 1; j <= 50; ++j)
        {
            const double k = 2.0 * j - 1.0;
            s += std::exp(-k * k * c);
        }
        return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * s, 0.0, 1.0);
    }
    double s = 0.0;
    for (int j = 1; j <= 100; ++j)
    {
        const double term = std::exp(-2.0 * j * j * lambda * lambda);
        s += (j % 2 == 1 ? term : -term);
        if (term < 1e-300)
            break;
    }
    return std::clamp(2.0 * s, 0.0, 1.0);
}

} // namespace detail

// ------------------------------------------------------------------------
// Individual normality tests (applied to the sample as given)
// ------------------------------------------------------------------------

/// Jarque-Bera with the asymptotic chi-square(2) reference.
inline TestReport jarque_bera(std::span<const double> x)
{
    const auto s = detail::sorted_checked(x);
    const auto n = static_cast<double>(s.size());
    const double m = mean(s);
    double m2 = 0, m3 = 0, m4 = 0;
    for (double v : s)
    {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    const double skew = m3 / std::pow(m2, 1.5);
    const double kurt = m4 / (m2 * m2);
    const double jb = n / 6.0 * (skew * skew + 0.25 * (kurt - 3.0) * (kurt - 3.0));
    return detail::make_report("jarque-bera", jb, std::exp(-0.5 * jb));
}

/// Shapiro-Wilk W with Royston's coefficient and p-value approximations (3 <= n <= 5000).
inline TestReport shapiro_wilk(std::span<const double> x)
{
    const std::string name = "shapiro-wilk";
    const std::size_t n = x.size();
    if (n < 3 || n > 5000)
        return detail::not_applicable(name);
    const auto s = detail::sorted_checked(x);
    const std::size_t half = n / 2;
    const auto an = static_cast<double>(n);

    std::vector<double> a(half + 1, 0.0); // 1-based
    if (n == 3)
        a[1] = std::numbers::sqrt2 / 2.0;
    else
    {
        static constexpr std::array<double, 6> c1{0.0, 0.221157, -0.147981, -2.07119, 4.434685, -2.706056};
        static constexpr std::array<double, 6> c2{0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
        std::vector<double> m(half + 1, 0.0);
        double summ2 = 0.0;
        for (std::size_t i = 1; i <= half; ++i)
        {
            m[i] = normal_quantile((static_cast<double>(i) - 0.375) / (an + 0.25));
            summ2 += m[i] * m[i];
        }
        summ2 *= 2.0;
        const double ssumm2 = std::sqrt(summ2);
        const double rsn = 1.0 / std::sqrt(an);
        const double a1 = detail::poly(c1, rsn) - m[1] / ssumm2;
        std::size_t first_scaled;
        double fac;
        if (n > 5)
        {
            first_scaled = 3;
            const double a2 = -m[2] / ssumm2 + detail::poly(c2, rsn);
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1] - 2.0 * m[2] * m[2]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
            a[2] = a2;
        }
        else
        {
            first_scaled = 2;
            fac = std::sqrt((summ2 - 2.0 * m[1] * m[1]) / (1.0 - 2.0 * a1 * a1));
        }
        a[1] = a1;
        for (std::size_t i = first_scaled; i <= half; ++i)
            a[i] = -m[i] / fac;
    }

    const double mu = mean(s);
    double ss = 0.0;
    for (double v : s)
        ss += (v - mu) * (v - mu);
    double num = 0.0;
    for (std::size_t i = 1; i <= half; ++i)
        num += a[i] * (s[n - i] - s[i - 1]);
    const double w = std::min(1.0, num * num / ss);

    if (n == 3)
    {
        const double p = 6.0 / std::numbers::pi * (std::asin(std::sqrt(w)) - std::asin(std::sqrt(0.75)));
        return detail::make_report(name, w, std::max(p, 0.0));
    }

    const double w1 = std::log1p(-w);
    double y, mm, sd;
    if (n <= 11)
    {
        static constexpr std::array<double, 4> c3{0.544, -0.39978, 0.025054, -6.714e-4};
        static constexpr std::array<double, 4> c4{1.3822, -0.77857, 0.062767, -0.0020322};
        const double gamma = -2.273 + 0.459 * an;
        if (w1 >= gamma)
            return detail::make_report(name, w, 1e-99);
        y = -std::log(gamma - w1);
        mm = detail::poly(c3, an);
        sd = std::exp(detail::poly(c4, an));
    }
    else
    {
        static constexpr std::array<double, 4> c5{-1.5861, -0.31082, -0.083751, 0.0038915};
        static constexpr std::array<double, 3> c6{-0.4803, -0.082676, 0.0030302};
        const double ln_n = std::log(an);
        y = w1;
        mm = detail::poly(c5, ln_n);
        sd = std::exp(detail::poly(c6, ln_n));
    }
    return detail::make_report(name, w, 0.5 * std::erfc((y - mm) / sd / std::numbers::sqrt2));
}

/// Shapiro-Francia W' with Royston's log-normal approximation (5 <= n <= 5000).
inline TestReport shapiro_francia(std::span<const double> x)
{
    const std::string name = "shapiro-francia";
    const std::size_t n = x.size();
    if (n < 5 || n > 5000)
        return detail::not_applicable(name);
    const auto s = detail::sorted_checked(x);
    const auto an = static_cast<double>(n);
    const double mu = mean(s);
    double smx = 0.0, smm = 0.0, ss = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double mi = normal_quantile((static_cast<double>(i + 1) - 0.375) / (an + 0.25));
        smx += mi * (s[i] - mu);
        smm += mi * mi;
        ss += (s[i] - mu) * (s[i] - mu);
    }
    const double w = std::min(1.0, smx * smx / (smm * ss));
    const double u = std::log(an);
    const double v = std::log(u);
    const double mm = -1.2725 + 1.0521 * (v - u);
    const double sd = 1.0308 - 0.26758 * (v + 2.0 / u);
    const double z = (std::log1p(-w) - mm) / sd;
    return detail::make_report(name, w, 0.5 * std::erfc(z / std::numbers::sqrt2));
}

/// Lilliefors (KS against the fitted normal) with the Dallal-Wilkinson p-value
/// approximation, extended above p = 0.1 by Stephens' modified statistic (n >= 5).
inline TestReport lilliefors(std::span<const double> x)
{
    const std::string name = "lilliefors";
    const std::size_t n = x.size();
    if (n < 5)
        return detail::not_applicable(name);
    const auto s = detail::sorted_checked(x);
    const auto an = static_cast<double>(n);
    const double mu = mean(s);
    const double sd = sample_stddev(s);
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double f = normal_cdf((s[i] - mu) / sd);
        d = std::max({d, static_cast<double>(i + 1) / an - f, f - static_cast<double>(i) / an});
    }
    double kd = d, nd = an;
    if (n > 100)
    {
        kd = d * std::pow(an / 100.0, 0.49);
        nd = 100.0;
    }
    double p = std::exp(-7.01256 * kd * kd * (nd + 2.78019) + 2.99587 * kd * std::sqrt(nd + 2.78019) - 0.122119 +
                        0.974598 / std::sqrt(nd) + 1.67997 / nd);
    if (p > 0.1)
    {
        const double kk = (std::sqrt(an) - 0.01 + 0.85 / std::sqrt(an)) * d;
        if (kk <= 0.302)
            p = 1.0;
        else if (kk <= 0.5)
            p = 2.76773 - 19.828315 * kk + 80.709644 * kk * kk - 138.55152 * std::pow(kk, 3) +
                81.218052 * std::pow(kk, 4);
        else if (kk <= 0.9)
            p = -4.901232 + 40.662806 * kk - 97.490286 * kk * kk + 94.029866 * std::pow(kk, 3) -
                32.355711 * std::pow(kk, 4);
        else if (kk <= 1.31)
            p = 6.198765 - 19.558097 * kk + 23.186922 * kk * kk - 12.234627 * std::pow(kk, 3) +
                2.423045 * std::pow(kk, 4);
        else
            p = 0.0;
    }
    return detail::make_report(name, d, p);
}

/// Anderson-Darling A^2 for a normal with estimated mean and variance; p-value from the
/// D'Agostino-Stephens piecewise fit on the small-sample corrected statistic (n >= 8).
inline TestReport anderson_darling(std::span<const double> x)
{
    const std::string name = "anderson-darling";
    const std::size_t n = x.size();
    if (n < 8)
        return detail::not_applicable(name);
    const auto s = detail::sorted_checked(x);
    const auto an = static_cast<double>(n);
    const double mu = mean(s);
    const double sd = sample_stddev(s);
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
    {
        const double zi = (s[i] - mu) / sd;
        const double zr = (s[n - 1 - i] - mu) / sd;
        acc += (2.0 * static_cast<double>(i + 1) - 1.0) * (detail::log_normal_cdf(zi) + detail::log_normal_sf(zr));
    }
    const double a2 = -an - acc / an;
    const double aa = a2 * (1.0 + 0.75 / an + 2.25 / (an * an));
    double p;
    if (aa < 0.2)
        p = 1.0 - std::exp(-13.436 + 101.14 * aa - 223.73 * aa * aa);
    else if (aa < 0.34)
        p = 1.0 - std::exp(-8.318 + 42.796 * aa - 59.938 * aa * aa);
    else if (aa < 0.6)
        p = std::exp(0.9177 - 4.279 * aa - 1.38 * aa * aa);
    else
        p = std::exp(1.2937 - 5.709 * aa + 0.0186 * aa * aa);
    return detail::make_report(name, a2, p);
}

/// Pearson chi-square goodness of fit to the fitted normal with ceil(sqrt(n))
/// equal-probability bins and k - 3 degrees of freedom (two estimated parameters).
inline TestReport chi_square_normality(std::span<const double> x)
{
    const std::string name = "chi-square";
    const std::size_t n = x.size();
    const auto k = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
    if (k < 4)
        return detail::not_applicable(name);
    const auto s = detail::sorted_checked(x);
    const double mu = mean(s);
    const double sd = sample_stddev(s);
    std::vector<double> counts(k, 0.0);
    for (double v : s)
    {
        const double u = normal_cdf((v - mu) / sd);
        auto b = static_cast<std::size_t>(std::floor(u * static_cast<double>(k)));
        counts[std::min(b, k - 1)] += 1.0;
    }
    const double expected = static_cast<double>(n) / static_cast<double>(k);
    double stat = 0.0;
    for (double c : counts)
        stat += (c - expected) * (c - expected) / expected;
    const boost::math::chi_squared_distribution<double> ref(static_cast<double>(k - 3));
    return detail::make_report(name, stat, boost::math::cdf(boost::math::complement(ref, stat)));
}

// ------------------------------------------------------------------------
// Battery
// ------------------------------------------------------------------------

inline constexpr std::array<const char *, 6> battery_test_names{"jarque-bera",      "shapiro-wilk", "shapiro-francia",
                                                                "lilliefors",       "anderson-darling",
                                                                "chi-square"};

/// Empirical null distributions of each test statistic for a fixed sample size, used in
/// place of the asymptotic / approximated p-values when supplied to the battery.
struct MonteCarloNull
{
    std::size_t sample_size = 0;
    std::map<std::string, std::vector<double>> statistics; // sorted ascending

    // Small W statistics reject; every other statistic rejects when large.
    static bool lower_tail(const std::string &test) { return test == "shapiro-wilk" || test == "shapiro-francia"; }

    double p_value(const std::string &test, double statistic) const
    {
        const auto it = statistics.find(test);
        if (it == statistics.end() || it->second.empty())
            return std::numeric_limits<double>::quiet_NaN();
        const auto &v = it->second;
        std::size_t extreme;
        if (lower_tail(test))
            extreme = static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), statistic) - v.begin());
        else
            extreme = static_cast<std::size_t>(v.end() - std::lower_bound(v.begin(), v.end(), statistic));
        return (static_cast<double>(extreme) + 1.0) / (static_cast<double>(v.size()) + 1.0);
    }

    double critical_value(const std::string &test) const
    {
        const auto &v = statistics.at(test);
        return quantile_sorted(v, lower_tail(test) ? significance_level : 1.0 - significance_level);
    }
};

/// Applies the normality battery to the natural logs of strictly positive samples.
///
/// The Shapiro slot runs Wilk on platykurtic logs (kurtosis < 3) and Francia otherwise.
/// With `null` supplied, p-values come from the simulated null distributions instead of
/// the analytic approximations.
inline std::vector<TestReport> lognormality_battery(std::span<const double> samples,
                                                    const MonteCarloNull *null = nullptr)
{
    if (samples.size() < 8)
        fail(ErrorKind::invalid_argument, "lognormality battery needs at least 8 samples");
    std::vector<double> logs;
    logs.reserve(samples.size());
    for (double v : samples)
    {
        if (!(v > 0.0))
            fail(ErrorKind::invalid_argument, "lognormality battery needs strictly positive samples");
        logs.push_back(std::log(v));
    }
    const auto stats = summary_statistics(logs); // throws zero_variance on constant input
    std::vector<TestReport> out;
    out.push_back(jarque_bera(logs));
    out.push_back(stats.kurtosis < 3.0 ? shapiro_wilk(logs) : shapiro_francia(logs));
    out.push_back(lilliefors(logs));
    out.push_back(anderson_darling(logs));
    out.push_back(chi_square_normality(logs));
    if (null != nullptr)
    {
        if (null->sample_size != samples.size())
            fail(ErrorKind::invalid_argument, "Monte Carlo null was simulated for a different sample size");
        for (auto &r : out)
        {
            if (!r.applicable)
                continue;
            r.p_value = null->p_value(r.test_name, r.statistic);
            r.reject_at_5pct = r.p_value < significance_level;
        }
    }
    return out;
}

/// Simulates `trials` standard normal samples of size n and records every test statistic.
inline MonteCarloNull simulate_null(std::size_t n, std::size_t trials, std::uint64_t seed)
{
    MonteCarloNull null;
    null.sample_size = n;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < trials; ++t)
    {
        Rng rng(derive_seed(seed, t));
        for (auto &v : x)
            v = rng.normal();
        // The Shapiro variants are recorded only on the kurtosis branch that selects them,
        // so their p-values are conditional on the selection and the slot keeps its level.
        const bool platykurtic = summary_statistics(x).kurtosis < 3.0;
        for (const auto &r : {jarque_bera(x), platykurtic ? shapiro_wilk(x) : shapiro_francia(x), lilliefors(x),
                              anderson_darling(x), chi_square_normality(x)})
            if (r.applicable)
                null.statistics[r.test_name].push_back(r.statistic);
    }
    for (auto &[name, v] : null.statistics)
        std::sort(v.begin(), v.end());
    return null;
}

/// Fraction of `trials` lognormal(mu, sigma) samples of size n rejected at 5% by each
/// battery slot. The Shapiro slot is reported as "shapiro" whichever variant ran.
inline std::map<std::string, double> battery_rejection_rates(std::size_t n, std::size_t trials, std::uint64_t seed,
                                                             double mu = 0.0, double sigma = 1.0,
                                                             const MonteCarloNull *null = nullptr)
{
    std::map<std::string, double> rejections;
    std::vector<double> x(n);
    for (std::size_t t = 0; t < trials; ++t)
    {
        Rng rng(derive_seed(seed, t));
        for (auto &v : x)
            v = std::exp(rng.normal(mu, sigma));
        for (const auto &r : lognormality_battery(x, null))
        {
            const std::string slot = r.test_name.starts_with("shapiro") ? "shapiro" : r.test_name;
            rejections[slot] += r.reject_at_5pct ? 1.0 : 0.0;
        }
    }
    for (auto &[name, v] : rejections)
        v /= static_cast<double>(trials);
    return rejections;
}

// ------------------------------------------------------------------------
// Two-sample Kolmogorov-Smirnov
// ------------------------------------------------------------------------

enum class KsMode
{
    standardized, // compare shapes: each sample centred and scaled to unit variance first
    raw
};

/// Supremum distance between the two empirical CDFs.
inline double ks_distance(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || b.empty())
        fail(ErrorKind::invalid_argument, "KS test needs two nonempty samples");
    std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const auto na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size())
    {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v)
            ++i;
        while (j < y.size() && y[j] == v)
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

/// Two-sample KS test with the asymptotic Kolmogorov p-value (Stephens' effective-n correction).
inline TestReport ks_two_sample(std::span<const double> a, std::span<const double> b,
                                KsMode mode = KsMode::standardized)
{
    if (a.empty() || b.empty())
        fail(ErrorKind::invalid_argument, "KS test needs two nonempty samples");
    double d;
    if (mode == KsMode::standardized)
    {
        auto standardize = [](std::span<const double> v) {
            const double m = mean(v);
            const double s = sample_stddev(v);
            if (!(s > 0.0))
                fail(ErrorKind::zero_variance, "cannot standardize a constant sample");
            std::vector<double> z(v.begin(), v.end());
            for (auto &e : z)
                e = (e - m) / s;
            return z;
        };
        d = ks_distance(standardize(a), standardize(b));
    }
    else
        d = ks_distance(a, b);
    const auto na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    const double ne = std::sqrt(na * nb / (na + nb));
    const double lambda = (ne + 0.12 + 0.11 / ne) * d;
    return detail::make_report("kolmogorov-smirnov", d, detail::kolmogorov_sf(lambda));
}

// ------------------------------------------------------------------------
// Boxplot outlier removal
// ------------------------------------------------------------------------

struct OutlierSplit
{
    std::vector<double> kept;
    std::vector<double> removed;
    double lower_fence;
    double upper_fence;
};

/// Splits off points outside [Q1 - 1.5 IQR, Q3 + 1.5 IQR]; both outputs keep input order.
inline OutlierSplit boxplot_outliers(std::span<const double> x)
{
    if (x.size() < 4)
        fail(ErrorKind::invalid_argument, "boxplot analysis needs at least 4 samples");
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    const double q1 = quantile_sorted(s, 0.25);
    const double q3 = quantile_sorted(s, 0.75);
    const double iqr = q3 - q1;
    OutlierSplit out{{}, {}, q1 - 1.5 * iqr, q3 + 1.5 * iqr};
    for (double v : x)
        (v < out.lower_fence || v > out.upper_fence ? out.removed : out.kept).push_back(v);
    return out;
}

} // namespace wireline

#endif
