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


#include "oracles/convolution_oracle.hpp"
#include "wireline/channel.hpp"
#include "wireline/rng.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>

using namespace wireline;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

ErrorKind kind_of(auto &&fn)
{
    try
    {
        fn();
    }
    catch (const Error &e)
    {
        return e.kind();
    }
    FAIL("expected a wireline::Error");
    return ErrorKind::invalid_argument;
}

std::vector<cplx> random_taps(Rng &rng, std::size_t n, bool complex_taps)
{
    std::vector<cplx> t(n);
    for (auto &v : t)
        v = complex_taps ? cplx(rng.normal(), rng.normal()) : cplx(rng.normal(), 0.0);
    return t;
}

// Moments of the PDP written out longhand.
double rmsds_direct(const std::vector<cplx> &taps, double spacing)
{
    long double e = 0, m1 = 0, m2 = 0;
    for (std::size_t i = 0; i < taps.size(); ++i)
    {
        const long double p = std::norm(taps[i]);
        const long double t = static_cast<long double>(i) * spacing;
        e += p;
        m1 += p * t;
        m2 += p * t * t;
    }
    const long double mu = m1 / e;
    return static_cast<double>(std::sqrt(std::max(0.0L, m2 / e - mu * mu)));
}

} // namespace

TEST_CASE("impulse response rejects invalid construction", "[channel]")
{
    CHECK(kind_of([] { ImpulseResponse({}, 1.0); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { ImpulseResponse({1.0}, 0.0); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { ImpulseResponse({1.0}, -1e-6); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { ImpulseResponse({0.0, 0.0, 0.0}, 1.0); }) == ErrorKind::degenerate_channel);
    CHECK(kind_of([] { ImpulseResponse({std::numeric_limits<double>::quiet_NaN()}, 1.0); }) ==
          ErrorKind::invalid_argument);
}

TEST_CASE("channel power gain", "[channel]")
{
    const auto unit = channel_power_gain(ImpulseResponse({1.0}, 1e-6));
    CHECK(unit.linear == 1.0);
    CHECK(unit.db == 0.0);

    const auto split = channel_power_gain(ImpulseResponse({std::sqrt(0.5), std::sqrt(0.5)}, 1e-6));
    CHECK_THAT(split.linear, WithinRel(1.0, 1e-15));
    CHECK_THAT(split.db, WithinAbs(0.0, 1e-14));

    const double a = std::sqrt(0.5e-5);
    const auto g50 = channel_power_gain(ImpulseResponse({a, a}, 1e-6));
    CHECK_THAT(g50.db, WithinAbs(-50.0, 1e-12));
    CHECK(channel_power_gain(ImpulseResponse({a, a}, 7.0)).db == g50.db);
}

TEST_CASE("RMS delay spread examples", "[channel]")
{
    CHECK(rms_delay_spread(ImpulseResponse({1.0}, 1e-6)) == 0.0);
    CHECK(rms_delay_spread(ImpulseResponse({1.0}, 1e-6, 5e-6)) == 0.0);
    CHECK_THAT(rms_delay_spread(ImpulseResponse({1.0, 1.0}, 1e-6)), WithinRel(0.5e-6, 1e-12));
    CHECK_THAT(rms_delay_spread(ImpulseResponse({std::sqrt(0.9), std::sqrt(0.1)}, 1e-6)), WithinRel(0.3e-6, 1e-12));
}

TEST_CASE("RMS delay spread matches longhand moments", "[channel]")
{
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial)
    {
        const auto taps = random_taps(rng, 1 + trial % 40, trial % 2 == 0);
        const double spacing = 1e-8 * (1.0 + trial);
        CHECK_THAT(rms_delay_spread(ImpulseResponse(taps, spacing)), WithinAbs(rmsds_direct(taps, spacing), 1e-12 * spacing * 40));
    }
}

TEST_CASE("RMS delay spread invariances", "[channel][property]")
{
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial)
    {
        auto taps = random_taps(rng, 2 + trial % 30, trial % 3 == 0);
        const ImpulseResponse h(taps, 1e-7);
        const double s = rms_delay_spread(h);

        std::vector<cplx> shifted(static_cast<std::size_t>(trial % 7 + 1), cplx{});
        shifted.insert(shifted.end(), taps.begin(), taps.end());
        CHECK_THAT(rms_delay_spread(ImpulseResponse(shifted, 1e-7)), WithinRel(s, 1e-12));

        const double c = 0.25 + trial * 0.7;
        CHECK_THAT(rms_delay_spread(h.with_spacing(1e-7 * c)), WithinRel(c * s, 1e-12));
        CHECK_THAT(rms_delay_spread(h.scaled(cplx(-3.5, 1.25))), WithinRel(s, 1e-12));
        CHECK(s >= 0.0);
    }
}

TEST_CASE("two-tap RMS delay spread closed form", "[channel][property]")
{
    Rng rng(13);
    for (int trial = 0; trial < 100; ++trial)
    {
        const cplx h1(rng.normal(), rng.normal()), h2(rng.normal(), rng.normal());
        const double tau = 1e-7 * (1 + trial);
        const double expect = std::abs(h1 * h2) / (std::norm(h1) + std::norm(h2)) * tau;
        CHECK_THAT(rms_delay_spread(ImpulseResponse({h1, h2}, tau)), WithinRel(expect, 1e-12));
    }
}

TEST_CASE("transfer function examples", "[channel]")
{
    const auto delta = transfer_function(ImpulseResponse({1.0}, 1e-6), 4);
    REQUIRE(delta.size() == 4);
    for (const auto &b : delta.bins)
        CHECK(std::abs(b - cplx(1.0)) < 1e-15);
    CHECK_THAT(delta.bin_spacing, WithinRel(1.0 / (4 * 1e-6), 1e-15));

    const auto half = transfer_function(ImpulseResponse({0.5, 0.5}, 1.0), 2);
    CHECK(std::abs(half.bins[0] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(half.bins[1]) < 1e-15);

    // Equal taps tau apart notch where f tau = 1/2.
    const double tau = 0.4e-6;
    const ImpulseResponse two({0.003, 0.003}, tau);
    CHECK(std::abs(frequency_response(two, 0.5 / tau)) < 1e-15);
    CHECK(std::abs(transfer_function(two, 8).bins[4]) < 1e-15);

    CHECK(kind_of([] { transfer_function(ImpulseResponse({1.0, 2.0, 3.0}, 1.0), 2); }) == ErrorKind::invalid_argument);
}

TEST_CASE("transfer function matches numpy FFT", "[channel]")
{
    const ImpulseResponse h({{0.3, 0.1}, {-0.7, 0.0}, {0.2, -0.4}, {0.0, 0.05}, {0.11, 0.0}}, 1.0);
    const auto tf = transfer_function(h, 8);
    const double re[] = {-0.08999999999999997, -0.6696194077712558, 0.15999999999999998, 1.1203300858899108,
                         1.31,                 0.24961940777125585, 0.25999999999999995, 0.05966991411008937};
    const double im[] = {-0.25000000000000006, 0.3596194077712559,  1.2,   0.8303300858899108,
                         -0.35000000000000003, -0.5596194077712559, -0.19999999999999996, -0.23033008588991066};
    for (std::size_t k = 0; k < 8; ++k)
    {
        CHECK_THAT(tf.bins[k].real(), WithinAbs(re[k], 1e-14));
        CHECK_THAT(tf.bins[k].imag(), WithinAbs(im[k], 1e-14));
    }
}

TEST_CASE("Parseval and default DFT size", "[channel][property]")
{
    CHECK(default_dft_size(1) == 4);
    CHECK(default_dft_size(5) == 32);
    CHECK(default_dft_size(50) == 256);
    CHECK(default_dft_size(64) == 256);
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial)
    {
        const auto taps = random_taps(rng, 1 + trial * 3, trial % 2 == 1);
        const ImpulseResponse h(taps, 1e-7);
        for (std::size_t n : {taps.size(), default_dft_size(taps.size()), taps.size() + 13})
        {
            const auto tf = transfer_function(h, n);
            double e = 0.0;
            for (const auto &b : tf.bins)
                e += std::norm(b);
            CHECK_THAT(e / static_cast<double>(n), WithinRel(channel_power_gain(h).linear, 1e-9));
        }
    }
}

TEST_CASE("continuous frequency response agrees with DFT bins", "[channel]")
{
    Rng rng(15);
    const auto taps = random_taps(rng, 300, true);
    const ImpulseResponse h(taps, 2.5e-8);
    const auto tf = transfer_function(h, 512);
    for (std::size_t k : {0u, 1u, 77u, 255u, 256u, 400u, 511u})
        CHECK(std::abs(frequency_response(h, static_cast<double>(k) * tf.bin_spacing) - tf.bins[k]) < 1e-10);
}

TEST_CASE("raised-cosine kernel", "[channel][kernel]")
{
    const NyquistKernel p(1.0);
    CHECK(p.roll_off() == 0.2);
    CHECK(p.span() == 16);
    CHECK(p(0.0) == 1.0);
    for (int k = 1; k <= 8; ++k)
    {
        CHECK(std::abs(p(k)) < 1e-12);
        CHECK(std::abs(p(-k)) < 1e-12);
    }
    const double t[] = {0.5, 1.3, 2.5, -3.7, 7.9};
    const double ref[] = {0.6306889405338809, -0.18585871620389338, 0.09999999999999999, -0.04002362938305289,
                          0.00034460092875775275};
    for (int i = 0; i < 5; ++i)
        CHECK_THAT(p(t[i]), WithinAbs(ref[i], 1e-13));
    // Continuous through the removable singularity at |t| = T / (2 beta).
    CHECK_THAT(p(2.5 + 1e-7), WithinAbs(p(2.5), 1e-7));
    CHECK_THAT(p(2.5 - 1e-7), WithinAbs(p(2.5), 1e-7));
    CHECK(p(8.01) == 0.0);
    CHECK(p(-9.0) == 0.0);

    CHECK(kind_of([] { NyquistKernel(1.0, 1.5); }) == ErrorKind::invalid_argument);
    CHECK(kind_of([] { NyquistKernel(0.0); }) == ErrorKind::invalid_argument);
}

TEST_CASE("equivalent response of a unit tap is the sampled kernel", "[channel][kernel]")
{
    const double T = 1.0 / 28e6;
    const auto heq = equivalent_response(ImpulseResponse({1.0}, T), NyquistKernel(T), T);
    REQUIRE(heq.size() == 17);
    CHECK_THAT(heq.first_delay(), WithinAbs(-8 * T, 1e-20));
    for (std::size_t k = 0; k < heq.size(); ++k)
        CHECK(std::abs(heq[k] - cplx(k == 8 ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("aligned grid passes taps through", "[channel][kernel]")
{
    const double T = 1e-7;
    Rng rng(16);
    const auto taps = random_taps(rng, 20, true);
    const auto heq = equivalent_response(ImpulseResponse(taps, T), NyquistKernel(T), T);
    const auto offset = static_cast<std::size_t>(std::lround(-heq.first_delay() / T));
    REQUIRE(offset == 8);
    for (std::size_t k = 0; k < heq.size(); ++k)
    {
        const cplx expect = (k >= offset && k - offset < taps.size()) ? taps[k - offset] : cplx{};
        CHECK(std::abs(heq[k] - expect) < 1e-6);
    }
}

TEST_CASE("equivalent response matches oversampled convolution", "[channel][kernel][oracle]")
{
    const double T = 1.0;
    const NyquistKernel p(T);
    auto kernel = [&](double t) { return p(t); };

    SECTION("two taps 1.5 T apart")
    {
        const double a = std::sqrt(0.5);
        const ImpulseResponse h({a, a}, 1.5 * T);
        const auto heq = equivalent_response(h, p, T);
        const auto ref = oracle::oversampled_convolution({a, a}, 1.5 * T, 0.0, kernel, p.half_support(), T, 2);
        double e_lib = 0.0, e_ref = 0.0;
        for (std::size_t k = 0; k < heq.size(); ++k)
        {
            const long idx = std::lround(heq.delay(k) / T);
            const auto it = ref.find(idx);
            const cplx r = it == ref.end() ? cplx{} : it->second;
            CHECK(std::abs(heq[k] - r) < 1e-12);
            e_lib += std::norm(heq[k]);
        }
        for (const auto &[k, v] : ref)
            e_ref += std::norm(v);
        CHECK_THAT(e_lib, WithinRel(e_ref, 1e-12));
    }

    SECTION("complex taps on a quarter-period grid with an offset start")
    {
        Rng rng(17);
        const auto taps = random_taps(rng, 37, true);
        const ImpulseResponse h(taps, 0.25 * T, 0.75 * T);
        const auto heq = equivalent_response(h, p, T);
        const auto ref = oracle::oversampled_convolution(taps, 0.25 * T, 0.75 * T, kernel, p.half_support(), T, 4);
        for (std::size_t k = 0; k < heq.size(); ++k)
        {
            const auto it = ref.find(std::lround(heq.delay(k) / T));
            const cplx r = it == ref.end() ? cplx{} : it->second;
            CHECK(std::abs(heq[k] - r) < 1e-12);
        }
        for (const auto &[k, v] : ref)
            if (std::abs(v) > 0.0)
            {
                const double d = static_cast<double>(k) * T;
                CHECK(d >= heq.first_delay() - 1e-12);
                CHECK(d <= heq.delay(heq.size() - 1) + 1e-12);
            }
    }
}

TEST_CASE("delta kernel returns the sampled channel", "[channel][kernel]")
{
    const double T = 2e-8;
    const ImpulseResponse h({0.5, -0.25, {0.1, 0.2}}, T);
    const auto heq = equivalent_response(h, DeltaKernel(T), T);
    REQUIRE(heq.size() == h.size());
    for (std::size_t k = 0; k < h.size(); ++k)
        CHECK(heq[k] == h[k]);
}
