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


// Acceptance run: one PASS/FAIL line per criterion with its wall time and budget.
// Usage: acceptance <path-to-wireline-cli> <scratch-dir>
// Seeds are the criterion number (or streams derived from it).

#include "wireline/wireline.hpp"
#include "oracles/ofdm_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace wireline;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
    bool ok;
    std::string detail;
};

std::string fmt(const char *f, auto... v)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, f, v...);
    return buf;
}

GeneratorConfig config(const char *profile, PdpFamily family, std::size_t taps = 50)
{
    GeneratorConfig c;
    c.profile = *find_builtin_profile(profile);
    c.pdp = family;
    c.taps = taps;
    return c;
}

// Capacity-CDF ensembles draw attenuation inside the tabulated range.
GeneratorConfig cdf_config(const char *profile, PdpFamily family, std::size_t taps = 50)
{
    auto c = config(profile, family, taps);
    c.draw.truncate_to_table_bounds = true;
    return c;
}

Outcome generation_exactness()
{
    const auto profiles = builtin_profiles();
    const PdpFamily families[] = {PdpFamily::gaussian_random, PdpFamily::exponential, PdpFamily::equi_power,
                                  PdpFamily::two_tap};
    const std::size_t combos = profiles.size() * std::size(families);
    const std::size_t per = (10000 + combos - 1) / combos;
    std::size_t total = 0, bad = 0;
    double worst_gain = 0.0, worst_rms = 0.0;
    std::uint64_t combo = 0;
    for (const auto &p : profiles)
        for (auto f : families)
        {
            GeneratorConfig g;
            g.profile = p;
            g.pdp = f;
            const auto ens = generate_ensemble(g, per, derive_seed(1, combo++));
            for (const auto &r : ens.realizations)
            {
                const double dg = std::abs(r.achieved_gain_db - r.target_gain_db);
                const double dr = std::abs(r.achieved_rmsds_s - r.target_rmsds_s) / r.target_rmsds_s;
                worst_gain = std::max(worst_gain, dg);
                worst_rms = std::max(worst_rms, dr);
                bad += (dg < 1e-9 && dr < 1e-9) ? 0 : 1;
                ++total;
            }
        }
    return {bad == 0 && total >= 10000,
            fmt("%zu realizations, worst |dG| %.2e dB, worst rel dRMS %.2e", total, worst_gain, worst_rms)};
}

Outcome distribution_recovery()
{
    const auto urban = *find_builtin_profile("ih-plc-urban");
    Rng rng(2);
    std::vector<double> a(100000);
    for (auto &v : a)
        v = draw_attenuation(urban, rng);
    const double m = mean(a), s = sample_stddev(a);
    return {std::abs(m - 41.5) <= 0.15 && std::abs(s - 13.4) <= 0.15, fmt("mean %.3f dB, std %.3f dB", m, s)};
}

Outcome regression_consistency()
{
    const auto ens = generate_ensemble(config("ih-plc-urban", PdpFamily::gaussian_random), 5000, 3);
    std::vector<double> us;
    for (double s : ens.rmsds_s())
        us.push_back(s * 1e6);
    const auto fit = robust_regress(ens.gains_db(), us);
    const double a = fit.line.slope, b = fit.line.intercept;
    return {std::abs(a + 0.0028) <= 0.1 * 0.0028 && std::abs(b - 0.089) <= 0.1 * 0.089,
            fmt("alpha %.6f, beta %.6f", a, b)};
}

Outcome correlation()
{
    const auto ens = generate_ensemble(cdf_config("ih-plc-urban", PdpFamily::two_tap), 5000, 4);
    const auto c = capacity_gain_correlation(ens);
    return {c.with_gain_db > 0.95 && c.with_rmsds < 0.0,
            fmt("corr(C, G_dB) %.4f, corr(C, rmsds) %.4f", c.with_gain_db, c.with_rmsds)};
}

Outcome cdf_overlap()
{
    const auto two = generate_ensemble(cdf_config("ih-plc-urban", PdpFamily::two_tap), 5000, 5);
    const auto many = generate_ensemble(cdf_config("ih-plc-urban", PdpFamily::gaussian_random, 50), 5000, derive_seed(5, 1));
    const auto d = ks_distance(ensemble_capacities(two), ensemble_capacities(many));
    return {d < 0.05, fmt("KS distance %.4f", d)};
}

Outcome ofdm_oracle()
{
    Rng rng(6);
    double worst_u = 0.0, worst_i = 0.0, worst_cons = 0.0;
    for (int c = 0; c < 20; ++c)
    {
        const std::size_t M = c % 2 == 0 ? 256 : 1024;
        const std::size_t L = 8 + static_cast<std::size_t>(rng.uniform() * 57.0);
        const std::size_t nu = static_cast<std::size_t>(rng.uniform() * static_cast<double>(L - 2));
        std::vector<cplx> taps(L);
        for (std::size_t i = 0; i < L; ++i)
            taps[i] = cplx(rng.normal(), rng.normal()) * std::exp(-static_cast<double>(i) / 20.0);
        const ImpulseResponse h(taps, 1.0 / 28e6);
        const auto p = power_partition(h, M, nu);
        const auto o = oracle::simulate_ofdm(taps, M, nu);
        const double g = channel_power_gain(h).linear;
        worst_u = std::max(worst_u, std::abs(p.useful - o.useful) / o.useful);
        worst_i = std::max(worst_i, std::abs(p.interference - o.interference) / o.interference);
        worst_cons = std::max(worst_cons, std::abs(p.useful + p.interference - g) / g);
    }
    return {worst_u < 0.005 && worst_i < 0.005 && worst_cons < 1e-12,
            fmt("worst rel error P_U %.2e, P_I %.2e, conservation %.2e", worst_u, worst_i, worst_cons)};
}

Outcome cp_direction()
{
    // Twenty dispersive urban channels resampled onto the 28 MHz OFDM grid.
    const double ts = 1.0 / 28e6;
    const NyquistKernel kernel(ts);
    const auto ens = generate_ensemble(config("ih-plc-urban", PdpFamily::gaussian_random), 20, 7);
    const CapacityConfig cap;
    OfdmConfig low, high;
    high.noise_psd_dbm_hz = low.noise_psd_dbm_hz + 30.0;
    int violations = 0;
    std::string pairs;
    for (const auto &r : ens.realizations)
    {
        const auto h = equivalent_response(r.channel, kernel, ts);
        const auto a = optimize_cp(h, default_cp_grid(), low, cap);
        const auto b = optimize_cp(h, default_cp_grid(), high, cap);
        violations += b.best.guard > a.best.guard ? 1 : 0;
        if (pairs.size() < 60)
            pairs += fmt(" %zu>%zu", a.best.guard, b.best.guard);
    }
    return {violations == 0, fmt("%d of 20 channels raised nu*; nu*(low)>nu*(high):%s ...", violations, pairs.c_str())};
}

Outcome calibration()
{
    const auto rates = battery_rejection_rates(60, 1000, 8);
    bool ok = rates.size() == 5;
    std::string d;
    for (const auto &[name, r] : rates)
    {
        ok = ok && r >= 0.03 && r <= 0.07;
        d += fmt("%s %.3f ", name.c_str(), r);
    }
    return {ok, d};
}

Outcome capacity_anchors()
{
    const CapacityConfig cap;
    const double unit = db_to_linear(cap.gamma_db - (cap.tx_psd_dbm_hz - cap.noise_psd_dbm_hz));
    const double c1 = capacity(ImpulseResponse({std::sqrt(unit)}, 1.0 / 28e6), cap);
    const double c12 = capacity(ImpulseResponse({1.0}, 1.0 / 28e6), cap);
    return {std::abs(c1 - 28e6) <= 1e-6 * 28e6 && std::abs(c12 - 12 * 28e6) <= 1e-6 * 28e6,
            fmt("C(SNR/Gamma=1) %.6g b/s, C(huge SNR) %.6g b/s", c1, c12)};
}

Outcome lptv_round_trip()
{
    Rng rng(10);
    const double ts = 1e-6, t0 = 64 * ts;
    HarmonicBank bank;
    for (int m = -3; m <= 3; ++m)
    {
        std::vector<cplx> t(16);
        for (auto &v : t)
            v = cplx(rng.normal(), rng.normal());
        bank.emplace(m, ImpulseResponse(std::move(t), ts));
    }
    const auto ch = zadeh_compose(bank, t0);
    const auto back = harmonic_extract(sample_period(ch, 64), 3, ts);
    double rt = back.size() == bank.size() ? 0.0 : 1.0;
    for (const auto &[m, h] : bank)
        for (std::size_t k = 0; k < h.size(); ++k)
            rt = std::max(rt, std::abs(back.at(m)[k] - h[k]));

    const auto lti = zadeh_compose({{0, bank.at(0)}}, t0);
    std::vector<cplx> x(500);
    for (auto &v : x)
        v = cplx(rng.normal(), rng.normal());
    const auto y = apply_lptv(lti, x, ts);
    std::vector<cplx> conv(y.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t k = 0; k < 16; ++k)
            conv[i + k] += bank.at(0)[k] * x[i];
    double red = 0.0;
    for (std::size_t n = 0; n < y.size(); ++n)
        red = std::max(red, std::abs(y[n] - conv[n]));
    return {rt < 1e-10 && red < 1e-12, fmt("round trip %.2e, LTI reduction %.2e", rt, red)};
}

struct CliRunner
{
    std::string cli;
    fs::path scratch;

    int run(const std::string &args) const
    {
        const std::string cmd = "'" + cli + "' " + args + " >/dev/null 2>>'" + (scratch / "cli.log").string() + "'";
        const int st = std::system(cmd.c_str());
        return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    }
};

bool same_tree(const fs::path &a, const fs::path &b, std::size_t &files)
{
    for (const auto &e : fs::recursive_directory_iterator(a))
    {
        if (!e.is_regular_file())
            continue;
        const auto other = b / fs::relative(e.path(), a);
        if (!fs::exists(other) || io::read_file(e.path()) != io::read_file(other))
            return false;
        ++files;
    }
    return true;
}

Outcome cli_determinism(const CliRunner &cli)
{
    const std::string cmds[] = {
        "generate --profile ih-plc-urban --pdp two-tap --count 2000 --seed 11 --write-channels",
        "coverage --profile ih-plc-suburban --count 500 --seed 11 --subcarriers 256",
        "tests --profile mv-plc --count 500 --seed 11",
        "regress --profile dsl-ansi --count 500 --seed 11",
        "lptv --profile ih-ph --seed 11",
    };
    std::size_t files = 0;
    int idx = 0;
    for (const auto &c : cmds)
    {
        const auto a = cli.scratch / fmt("run%d-a", idx), b = cli.scratch / fmt("run%d-b", idx);
        ++idx;
        fs::remove_all(a);
        fs::remove_all(b);
        if (cli.run(c + " --out '" + a.string() + "'") != 0 || cli.run(c + " --out '" + b.string() + "'") != 0)
            return {false, "command failed: " + c};
        if (!same_tree(a, b, files) || !same_tree(b, a, files))
            return {false, "outputs differ: " + c};
    }
    return {true, fmt("%d commands, %zu file comparisons byte-identical", idx, files)};
}

} // namespace

int main(int argc, char **argv)
{
    if (argc != 3)
    {
        std::fprintf(stderr, "usage: acceptance <wireline-cli> <scratch-dir>\n");
        return 2;
    }
    const CliRunner cli{argv[1], argv[2]};
    fs::remove_all(cli.scratch);
    fs::create_directories(cli.scratch);

    struct Criterion
    {
        const char *name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"generation exactness", 30, generation_exactness},
        {"attenuation distribution recovery", 10, distribution_recovery},
        {"regression self-consistency", 10, regression_consistency},
        {"capacity/gain correlation", 60, correlation},
        {"capacity CDF overlap", 120, cdf_overlap},
        {"OFDM oracle equivalence", 120, ofdm_oracle},
        {"CP optimum vs noise", 60, cp_direction},
        {"battery calibration", 60, calibration},
        {"capacity anchors", 1, capacity_anchors},
        {"LPTV round trip", 10, lptv_round_trip},
        {"CLI determinism", 10, [&] { return cli_determinism(cli); }},
    };

    int failed = 0, n = 0;
    for (const auto &c : criteria)
    {
        ++n;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool pass = o.ok && in_time;
        failed += pass ? 0 : 1;
        std::printf("%s %2d %-34s %8.3f s (budget %g s)%s  %s\n", pass ? "PASS" : "FAIL", n, c.name, dt, c.budget_s,
                    in_time ? "" : " over budget", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", n - failed, n);
    return failed == 0 ? 0 : 1;
}
