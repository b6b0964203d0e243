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


// Draws an urban in-home ensemble and prints gain and delay-spread statistics next to the
// profile's tabulated values.

#include "wireline/wireline.hpp"

#include <cstdio>

int main()
{
    using namespace wireline;
    GeneratorConfig cfg;
    cfg.profile = *find_builtin_profile("ih-plc-urban");
    const auto ens = generate_ensemble(cfg, 20000, 42);

    std::vector<double> atten;
    for (double g : ens.gains_db())
        atten.push_back(-g);
    std::vector<double> spread_us;
    for (double s : ens.rmsds_s())
        spread_us.push_back(s * 1e6);

    const auto a = summary_statistics(atten);
    const auto s = summary_statistics(spread_us);
    std::printf("attenuation dB: mean %.2f (profile %.2f)  std %.2f (profile %.2f)\n", a.mean, cfg.profile.atten_mu_db,
                a.std_dev, cfg.profile.atten_sigma_db);
    std::printf("RMS delay spread us: mean %.3f  std %.3f  p90 %.3f\n", s.mean, s.std_dev, s.p90);

    const auto fit = robust_regress(ens.gains_db(), spread_us, LineForm::linear);
    std::printf("robust fit: sigma_us = %.5f * G_dB + %.4f (corr %.2f)\n", fit.line.slope, fit.line.intercept,
                fit.line.correlation);
}
