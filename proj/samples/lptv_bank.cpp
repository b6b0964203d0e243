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


// Builds a mains-synchronous LPTV channel, samples it over one period and recovers the
// harmonic bank.

#include "wireline/wireline.hpp"

#include <cstdio>

int main()
{
    using namespace wireline;
    GeneratorConfig cfg;
    cfg.profile = *find_builtin_profile("ih-plc-suburban");
    cfg.taps = 16;
    Rng rng(derive_seed(3, 0));
    const double period = 10e-3; // half a 50 Hz mains cycle
    const auto ch = generate_lptv(cfg, rng, period, 2);

    const auto grid = sample_period(ch, 32);
    const auto bank = harmonic_extract(grid, 2, ch.tap_spacing(), ch.first_delay());
    for (const auto &[m, h] : bank)
    {
        double err = 0.0;
        const auto &orig = ch.harmonics().at(m);
        for (std::size_t k = 0; k < h.size(); ++k)
            err = std::max(err, std::abs(h[k] - orig[k]));
        std::printf("m = %+d  gain %.2f dB  max recovery error %.2e\n", m, channel_power_gain(h).db, err);
    }
}
