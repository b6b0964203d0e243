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


// Guard-interval trade-off for one dispersive channel at two noise levels.

#include "wireline/wireline.hpp"

#include <cmath>
#include <cstdio>

int main()
{
    using namespace wireline;
    // 120-sample exponentially decaying channel on the 28 MHz sample grid.
    std::vector<cplx> taps(120);
    for (std::size_t k = 0; k < taps.size(); ++k)
        taps[k] = 0.01 * std::exp(-static_cast<double>(k) / 20.0);
    const ImpulseResponse h(taps, 1.0 / 28e6);

    for (double n0 : {-120.0, -90.0})
    {
        OfdmConfig base;
        base.noise_psd_dbm_hz = n0;
        const auto r = optimize_cp(h, default_cp_grid(), base, CapacityConfig{});
        std::printf("N0 = %6.1f dBm/Hz: best M = %zu, nu = %zu, rate = %.2f Mb/s\n", n0, r.best.subcarriers,
                    r.best.guard, r.best.rate_bps / 1e6);
    }
}
