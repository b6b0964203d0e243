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


// Capacity coverage of the urban scenario with the two-tap model and with 50-tap random
// profiles; prints a few CDF quantiles of each.

#include "wireline/wireline.hpp"

#include <cstdio>

int main()
{
    using namespace wireline;
    GeneratorConfig cfg;
    cfg.profile = *find_builtin_profile("ih-plc-urban");
    cfg.draw.truncate_to_table_bounds = true; // keep draws inside the measured range

    for (auto pdp : {PdpFamily::two_tap, PdpFamily::gaussian_random})
    {
        cfg.pdp = pdp;
        const auto ens = generate_ensemble(cfg, 2000, 7);
        const auto caps = ensemble_capacities(ens);
        const auto corr = capacity_gain_correlation(caps, ens.gains_db(), ens.rmsds_s());
        std::printf("%-16s", to_string(pdp));
        for (double q : {0.1, 0.5, 0.9})
            std::printf("  C%.0f%% = %6.1f Mb/s", q * 100, quantile(caps, q) / 1e6);
        std::printf("  corr(C, G_dB) = %.3f\n", corr.with_gain_db);
    }
}
