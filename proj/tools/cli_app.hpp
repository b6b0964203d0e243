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

// Command dispatch for the `wireline` tool. Exit codes: 0 success, 1 usage error
// (bad flags, unknown profile, malformed config), 2 runtime failure.

#ifndef WIRELINE_TOOLS_CLI_APP_HPP
#define WIRELINE_TOOLS_CLI_APP_HPP

#include "wireline/wireline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wireline::cli
{

using json = nlohmann::json;
namespace fs = std::filesystem;

inline constexpr const char *output_dir_env = "WIRELINE_OUTPUT_DIR";
inline constexpr const char *default_output_dir = "wireline-out";

/// Raised for problems the user can fix by changing the invocation.
struct UsageError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::string command;
    std::string profile = "ih-plc-urban";
    std::string config;
    std::size_t count = 1000;
    std::uint64_t seed = 0;
    std::string out;
    unsigned threads = 0;

    // Generation
    std::string pdp = "gaussian-random";
    std::size_t taps = 50;
    double decay = 8.0;
    bool truncate = false;
    bool no_truncate = false;
    bool write_channels = false;

    // Inputs
    std::string channel;
    std::string input;

    // Capacity / link
    double bandwidth_hz = 28e6;
    double gamma_db = 7.0;
    double tx_psd_dbm_hz = -55.0;
    double noise_psd_dbm_hz = -120.0;
    double efficiency_cap = 12.0;
    double band_start_hz = 2e6;
    double band_end_hz = 30e6;
    std::size_t subcarriers = 1024;
    double sample_period = 1.0 / 28e6;
    std::string grid = "default";

    // Statistics
    std::string form = "auto";
    std::string target = "both";
    bool remove_outliers = false;
    std::size_t mc_trials = 0;

    // LPTV
    double period = 10e-3;
    int harmonics = 3;
    double step_db = 10.0;

    // replay
    std::string manifest;
};

inline std::string fnv1a64_hex(std::string_view data)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

class App
{
  public:
    int run(const std::vector<std::string> &args)
    {
        args_ = args;
        CLI::App app{"Statistical wireline channel generator and link evaluator", "wireline"};
        app.set_version_flag("--version", std::string(wireline::version));
        app.require_subcommand(1);
        build(app);
        try
        {
            std::vector<std::string> rev(args.rbegin(), args.rend());
            app.parse(rev);
        }
        catch (const CLI::CallForHelp &e)
        {
            std::cout << app.help();
            return 0;
        }
        catch (const CLI::CallForVersion &)
        {
            std::cout << wireline::version << "\n";
            return 0;
        }
        catch (const CLI::ParseError &e)
        {
            // Subcommand help arrives as a ParseError with exit code 0.
            if (e.get_exit_code() == 0)
            {
                std::cout << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
                return 0;
            }
            std::cerr << "wireline: " << e.what() << "\n";
            return 1;
        }
        cfg_.command = app.get_subcommands().front()->get_name();
        try
        {
            dispatch();
            return 0;
        }
        catch (const UsageError &e)
        {
            std::cerr << "wireline: " << e.what() << "\n";
            return 1;
        }
        catch (const Error &e)
        {
            std::cerr << "wireline: error: " << e.what() << "\n";
            return e.kind() == ErrorKind::parse_error ? 1 : 2;
        }
        catch (const std::exception &e)
        {
            std::cerr << "wireline: error: " << e.what() << "\n";
            return 2;
        }
    }

  private:
    RunConfig cfg_;
    std::vector<std::string> args_;
    json inputs_ = json::array();
    json extra_ = json::object();

    // ------------------------------------------------------------------
    // Option wiring
    // ------------------------------------------------------------------

    void common(CLI::App *c)
    {
        c->add_option("--out", cfg_.out, "Output directory (default: $WIRELINE_OUTPUT_DIR or ./wireline-out)");
    }

    void scenario(CLI::App *c)
    {
        c->add_option("--profile", cfg_.profile, "Built-in profile, or section name in --config");
        c->add_option("--config", cfg_.config, "Scenario configuration file");
        c->add_option("--count", cfg_.count, "Number of realizations")->check(CLI::PositiveNumber);
        c->add_option("--seed", cfg_.seed, "Master seed (default 0)");
        c->add_option("--threads", cfg_.threads, "Worker threads (0: hardware concurrency); never changes output");
        c->add_option("--pdp", cfg_.pdp, "PDP family: gaussian-random, exponential, equi-power, two-tap");
        c->add_option("--taps", cfg_.taps, "Taps for multi-tap PDP families")->check(CLI::PositiveNumber);
        c->add_option("--decay", cfg_.decay, "Exponential PDP decay constant, in taps");
        auto *on = c->add_flag("--truncate", cfg_.truncate, "Redraw attenuation into the profile's tabulated range");
        c->add_flag("--no-truncate", cfg_.no_truncate, "Never redraw attenuation (overrides the command default)")
            ->excludes(on);
    }

    void capacity_opts(CLI::App *c)
    {
        c->add_option("--bandwidth", cfg_.bandwidth_hz, "Bandwidth W, Hz");
        c->add_option("--gamma-db", cfg_.gamma_db, "SNR gap, dB");
        c->add_option("--tx-psd", cfg_.tx_psd_dbm_hz, "Transmit PSD, dBm/Hz");
        c->add_option("--noise-psd", cfg_.noise_psd_dbm_hz, "Noise PSD, dBm/Hz");
        c->add_option("--cap", cfg_.efficiency_cap, "Spectral efficiency cap, bit/s/Hz");
        c->add_option("--band-start", cfg_.band_start_hz, "Lower band edge, Hz");
        c->add_option("--band-end", cfg_.band_end_hz, "Upper band edge, Hz");
        c->add_option("--subcarriers", cfg_.subcarriers, "Subcarriers across the band")->check(CLI::PositiveNumber);
    }

    void build(CLI::App &app)
    {
        auto *gen = app.add_subcommand("generate", "Generate a channel ensemble");
        scenario(gen);
        gen->add_flag("--write-channels", cfg_.write_channels, "Also write each impulse response as CSV");
        common(gen);

        auto *met = app.add_subcommand("metrics", "Gain, RMS delay spread and DFT of a channel file");
        met->add_option("--channel", cfg_.channel, "Impulse response (.csv or .json)")->required();
        common(met);

        auto *cap = app.add_subcommand("capacity", "Gap-approximation capacity of a channel file");
        cap->add_option("--channel", cfg_.channel, "Impulse response (.csv or .json)")->required();
        capacity_opts(cap);
        common(cap);

        auto *cov = app.add_subcommand("coverage", "Capacity CDF over a generated ensemble");
        scenario(cov);
        capacity_opts(cov);
        common(cov);

        auto *reg = app.add_subcommand("regress", "Robust RMS delay spread vs gain regression");
        scenario(reg);
        reg->add_option("--input", cfg_.input, "Ensemble CSV to fit instead of generating");
        reg->add_option("--form", cfg_.form, "linear, log, or auto (the profile's line form)");
        common(reg);

        auto *tst = app.add_subcommand("tests", "Lognormality test battery on gain and RMS delay spread");
        scenario(tst);
        tst->add_option("--input", cfg_.input, "Ensemble CSV to test instead of generating");
        tst->add_option("--target", cfg_.target, "gain, rmsds or both");
        tst->add_flag("--remove-outliers", cfg_.remove_outliers, "Drop boxplot outliers before testing");
        tst->add_option("--mc-trials", cfg_.mc_trials, "Monte Carlo null trials for p-values (0: analytic)");
        common(tst);

        auto *swp = app.add_subcommand("sweep", "Achievable-rate sweep over (M, nu)");
        swp->add_option("--channel", cfg_.channel, "Impulse response (.csv or .json)")->required();
        swp->add_option("--grid", cfg_.grid, "'default' or 'M=256,512;nu=0,8,16'");
        swp->add_option("--sample-period", cfg_.sample_period, "OFDM sample period, s");
        capacity_opts(swp);
        common(swp);

        auto *lp = app.add_subcommand("lptv", "Generate an LPTV channel harmonic bank");
        scenario(lp);
        lp->add_option("--period", cfg_.period, "Period T0, s");
        lp->add_option("--harmonics", cfg_.harmonics, "Highest harmonic order")->check(CLI::NonNegativeNumber);
        lp->add_option("--step-db", cfg_.step_db, "Power step between successive harmonics, dB");
        common(lp);

        auto *rep = app.add_subcommand("replay", "Re-run the command recorded in a manifest");
        rep->add_option("--manifest", cfg_.manifest, "manifest.json of an earlier run")->required();
        common(rep);
    }

    // ------------------------------------------------------------------
    // Helpers
    // ------------------------------------------------------------------

    fs::path out_dir() const
    {
        if (!cfg_.out.empty())
            return cfg_.out;
        if (const char *env = std::getenv(output_dir_env); env && *env)
            return env;
        return default_output_dir;
    }

    std::string record_input(const std::string &path)
    {
        const auto text = io::read_file(path);
        inputs_.push_back({{"path", path}, {"fnv1a64", fnv1a64_hex(text)}});
        return text;
    }

    ScenarioProfile resolve_profile()
    {
        if (!cfg_.config.empty())
        {
            const auto text = record_input(cfg_.config);
            const auto file = parse_config(text, cfg_.config);
            if (file.profiles.empty())
                throw UsageError(cfg_.config + ": no profile sections");
            for (const auto &p : file.profiles)
                if (p.name == cfg_.profile)
                    return p;
            if (file.profiles.size() == 1)
                return file.profiles.front();
            throw UsageError(cfg_.config + ": no profile section [" + cfg_.profile + "]");
        }
        try
        {
            return builtin_profile_or_fail(cfg_.profile);
        }
        catch (const Error &e)
        {
            throw UsageError(e.what());
        }
    }

    // Capacity CDFs default to truncated draws: an unbounded lognormal occasionally yields
    // near-0 dB attenuation, which no physical link has.
    GeneratorConfig resolve_generator(bool truncate_by_default = false)
    {
        GeneratorConfig g;
        g.profile = resolve_profile();
        const auto pdp = parse_pdp_family(cfg_.pdp);
        if (!pdp)
            throw UsageError("unknown PDP family '" + cfg_.pdp +
                             "' (choose gaussian-random, exponential, equi-power, two-tap)");
        g.pdp = *pdp;
        g.taps = cfg_.taps;
        g.exponential_decay = cfg_.decay;
        const bool bounded = g.profile.atten_min_db.has_value();
        g.draw.truncate_to_table_bounds = cfg_.truncate || (truncate_by_default && bounded && !cfg_.no_truncate);
        g.seed = cfg_.seed;
        if (!cfg_.config.empty())
            parse_config(io::read_file(cfg_.config), cfg_.config).generator.apply(g);
        try
        {
            g.validate();
        }
        catch (const Error &e)
        {
            throw UsageError(e.what());
        }
        return g;
    }

    CapacityConfig resolve_capacity() const
    {
        CapacityConfig c;
        c.bandwidth_hz = cfg_.bandwidth_hz;
        c.gamma_db = cfg_.gamma_db;
        c.tx_psd_dbm_hz = cfg_.tx_psd_dbm_hz;
        c.noise_psd_dbm_hz = cfg_.noise_psd_dbm_hz;
        c.efficiency_cap = cfg_.efficiency_cap;
        c.band_start_hz = cfg_.band_start_hz;
        c.band_end_hz = cfg_.band_end_hz;
        c.subcarriers = cfg_.subcarriers;
        try
        {
            c.validate();
        }
        catch (const Error &e)
        {
            throw UsageError(e.what());
        }
        return c;
    }

    Ensemble make_ensemble(const GeneratorConfig &g) const
    {
        return generate_ensemble(g, cfg_.count, cfg_.seed, cfg_.threads);
    }

    static json profile_json(const ScenarioProfile &p)
    {
        auto opt = [](const std::optional<double> &v) { return v ? json(*v) : json(nullptr); };
        json j{{"name", p.name},
               {"atten_mu_db", p.atten_mu_db},
               {"atten_sigma_db", p.atten_sigma_db},
               {"atten_min_db", opt(p.atten_min_db)},
               {"atten_max_db", opt(p.atten_max_db)},
               {"linear_line", io::to_json(p.linear_line)},
               {"log_line", p.log_line ? io::to_json(*p.log_line) : json(nullptr)},
               {"line_form", to_string(p.line_form)},
               {"rmsds_kurtosis", p.rmsds_kurtosis},
               {"rmsds_mean_us", p.rmsds_mean_us},
               {"rmsds_std_us", p.rmsds_std_us}};
        if (p.conditional_branch)
            j["conditional_branch"] = {{"threshold_db", p.conditional_branch->threshold_db},
                                       {"mean_us", p.conditional_branch->mean_us},
                                       {"std_us", p.conditional_branch->std_us}};
        else
            j["conditional_branch"] = nullptr;
        return j;
    }

    static json generator_json(const GeneratorConfig &g)
    {
        return json{{"profile", profile_json(g.profile)},
                    {"pdp", to_string(g.pdp)},
                    {"taps", g.effective_taps()},
                    {"exponential_decay", g.exponential_decay},
                    {"truncate_to_table_bounds", g.draw.truncate_to_table_bounds},
                    {"rmsds_floor_s", g.draw.rmsds_floor_s ? json(*g.draw.rmsds_floor_s) : json(nullptr)}};
    }

    static json capacity_json(const CapacityConfig &c)
    {
        return json{{"W_hz", c.bandwidth_hz},
                    {"gamma_db", c.effective_gamma_db()},
                    {"tx_psd_dbm_hz", c.tx_psd_dbm_hz},
                    {"noise_psd_dbm_hz", c.noise_psd_dbm_hz},
                    {"efficiency_cap", c.efficiency_cap},
                    {"band_hz", {c.band_start_hz, c.band_end_hz}},
                    {"subcarriers", c.subcarriers}};
    }

    /// Arguments as given, minus --out, so replays into another directory stay comparable.
    json recorded_argv() const
    {
        json a = json::array();
        for (std::size_t i = 0; i < args_.size(); ++i)
        {
            if (args_[i] == "--out")
            {
                ++i;
                continue;
            }
            if (args_[i].rfind("--out=", 0) == 0)
                continue;
            a.push_back(args_[i]);
        }
        return a;
    }

    void write(const fs::path &dir, const std::string &name, const std::string &content) const
    {
        io::write_file_atomic(dir / name, content);
        std::cout << (dir / name).string() << "\n";
    }

    void write_manifest(const fs::path &dir, json resolved) const
    {
        resolved["count"] = cfg_.count;
        json m{{"tool", "wireline"},
               {"version", wireline::version},
               {"command", cfg_.command},
               {"argv", recorded_argv()},
               {"seed", cfg_.seed},
               {"resolved", std::move(resolved)},
               {"inputs", inputs_}};
        if (!extra_.empty())
            m["summary"] = extra_;
        write(dir, "manifest.json", io::dump(m));
    }

    void ensure_output_dir(const fs::path &dir) const
    {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec || !fs::is_directory(dir))
            fail(ErrorKind::io_error, "cannot create output directory " + dir.string());
    }

    // ------------------------------------------------------------------
    // Commands
    // ------------------------------------------------------------------

    void dispatch()
    {
        const auto &c = cfg_.command;
        if (c == "replay")
            return replay();
        const fs::path dir = out_dir();
        ensure_output_dir(dir);
        if (c == "generate")
            cmd_generate(dir);
        else if (c == "metrics")
            cmd_metrics(dir);
        else if (c == "capacity")
            cmd_capacity(dir);
        else if (c == "coverage")
            cmd_coverage(dir);
        else if (c == "regress")
            cmd_regress(dir);
        else if (c == "tests")
            cmd_tests(dir);
        else if (c == "sweep")
            cmd_sweep(dir);
        else if (c == "lptv")
            cmd_lptv(dir);
    }

    ImpulseResponse load_channel()
    {
        record_input(cfg_.channel);
        return io::load_impulse_response(cfg_.channel);
    }

    void cmd_generate(const fs::path &dir)
    {
        const auto g = resolve_generator();
        const auto ens = make_ensemble(g);
        write(dir, "ensemble.csv", io::ensemble_csv(ens));
        if (cfg_.write_channels)
        {
            for (std::size_t i = 0; i < ens.size(); ++i)
            {
                char name[32];
                std::snprintf(name, sizeof name, "%06zu.csv", i);
                io::write_file_atomic(dir / "channels" / name, io::impulse_response_csv(ens.realizations[i].channel));
            }
        }
        write_manifest(dir, {{"generator", generator_json(g)}, {"write_channels", cfg_.write_channels}});
    }

    void cmd_metrics(const fs::path &dir)
    {
        const auto h = load_channel();
        const auto g = channel_power_gain(h);
        const auto tf = transfer_function(h);
        json bins = json::array();
        for (const auto &b : tf.bins)
            bins.push_back({b.real(), b.imag()});
        json out{{"gain_linear", g.linear},
                 {"gain_db", g.db},
                 {"rmsds_s", rms_delay_spread(h)},
                 {"taps", h.size()},
                 {"tap_spacing_s", h.tap_spacing()},
                 {"first_delay_s", h.first_delay()},
                 {"dft_size", tf.size()},
                 {"dft_bin_spacing_hz", tf.bin_spacing},
                 {"dft", std::move(bins)}};
        write(dir, "metrics.json", io::dump(out));
        write_manifest(dir, json::object());
    }

    void cmd_capacity(const fs::path &dir)
    {
        const auto cap = resolve_capacity();
        const auto h = load_channel();
        const double c = capacity(h, cap);
        write(dir, "capacity.json", io::dump(io::capacity_json(cap, c)));
        write_manifest(dir, {{"capacity", capacity_json(cap)}});
    }

    void cmd_coverage(const fs::path &dir)
    {
        const auto cap = resolve_capacity();
        const auto g = resolve_generator(true);
        const auto ens = make_ensemble(g);
        const auto caps = ensemble_capacities(ens, cap);
        write(dir, "cdf.csv", io::cdf_csv(empirical_cdf(caps)));
        json summary{{"count", ens.size()}};
        if (ens.size() >= 3)
        {
            try
            {
                const auto corr = capacity_gain_correlation(caps, ens.gains_db(), ens.rmsds_s());
                summary["corr_capacity_gain_db"] = corr.with_gain_db;
                summary["corr_capacity_rmsds"] = corr.with_rmsds;
            }
            catch (const Error &e)
            {
                if (e.kind() != ErrorKind::zero_variance)
                    throw;
                summary["corr_capacity_gain_db"] = nullptr;
                summary["corr_capacity_rmsds"] = nullptr;
            }
        }
        const auto st = summary_statistics(caps);
        summary["capacity_mean_bps"] = st.mean;
        summary["capacity_p50_bps"] = st.p50;
        summary["capacity_p90_bps"] = st.p90;
        write(dir, "coverage.json", io::dump(summary));
        write_manifest(dir, {{"generator", generator_json(g)}, {"capacity", capacity_json(cap)}});
    }

    io::EnsembleColumns columns_from_ensemble(const GeneratorConfig &g) const
    {
        const auto ens = make_ensemble(g);
        io::EnsembleColumns cols;
        cols.gain_db = ens.gains_db();
        for (double s : ens.rmsds_s())
            cols.rmsds_us.push_back(s * 1e6);
        return cols;
    }

    void cmd_regress(const fs::path &dir)
    {
        const auto g = resolve_generator();
        LineForm form = g.profile.line_form;
        if (cfg_.form == "linear")
            form = LineForm::linear;
        else if (cfg_.form == "log")
            form = LineForm::log;
        else if (cfg_.form != "auto")
            throw UsageError("--form must be linear, log or auto");
        const auto cols = cfg_.input.empty() ? columns_from_ensemble(g) : io::parse_ensemble_csv(record_input(cfg_.input));
        const auto fit = robust_regress(cols.gain_db, cols.rmsds_us, form);
        json out = io::to_json(fit);
        out["n"] = cols.gain_db.size();
        out["units"] = {{"x", "gain_db"}, {"y", "rmsds_us"}};
        write(dir, "regression.json", io::dump(out));
        json resolved{{"form", to_string(form)}};
        if (cfg_.input.empty())
            resolved["generator"] = generator_json(g);
        write_manifest(dir, resolved);
    }

    void cmd_tests(const fs::path &dir)
    {
        if (cfg_.target != "gain" && cfg_.target != "rmsds" && cfg_.target != "both")
            throw UsageError("--target must be gain, rmsds or both");
        const auto g = resolve_generator();
        const auto cols = cfg_.input.empty() ? columns_from_ensemble(g) : io::parse_ensemble_csv(record_input(cfg_.input));
        json out = json::object();
        std::string csv = "variable,test_name,statistic,p_value,reject_at_5pct,applicable\n";
        auto run_one = [&](const std::string &label, std::vector<double> values) {
            json entry;
            if (cfg_.remove_outliers)
            {
                auto split = boxplot_outliers(values);
                entry["outliers_removed"] = split.removed.size();
                entry["fences"] = {split.lower_fence, split.upper_fence};
                values = std::move(split.kept);
            }
            std::optional<MonteCarloNull> null;
            if (cfg_.mc_trials > 0)
                null = simulate_null(values.size(), cfg_.mc_trials, derive_seed(cfg_.seed, 0x7e57));
            const auto reports = lognormality_battery(values, null ? &*null : nullptr);
            const auto st = summary_statistics(values);
            entry["n"] = values.size();
            entry["summary"] = {{"min", st.min},           {"max", st.max},   {"mean", st.mean},
                                {"std_dev", st.std_dev},   {"kurtosis", st.kurtosis},
                                {"skewness", st.skewness}, {"p50", st.p50},   {"p90", st.p90}};
            entry["tests"] = io::to_json(reports);
            out[label] = entry;
            const auto rows = io::test_reports_csv(reports);
            std::istringstream in(rows);
            std::string line;
            std::getline(in, line); // header
            while (std::getline(in, line))
                csv += label + "," + line + "\n";
        };
        if (cfg_.target != "rmsds")
        {
            std::vector<double> lin;
            for (double d : cols.gain_db)
                lin.push_back(std::pow(10.0, d / 10.0));
            run_one("gain", lin);
        }
        if (cfg_.target != "gain")
            run_one("rmsds", cols.rmsds_us);
        write(dir, "tests.json", io::dump(out));
        write(dir, "tests.csv", csv);
        json resolved{{"target", cfg_.target}, {"remove_outliers", cfg_.remove_outliers}, {"mc_trials", cfg_.mc_trials}};
        if (cfg_.input.empty())
            resolved["generator"] = generator_json(g);
        write_manifest(dir, resolved);
    }

    static std::vector<std::size_t> parse_list(const std::string &s, const std::string &what)
    {
        std::vector<std::size_t> v;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ','))
        {
            std::size_t used = 0;
            unsigned long long x = 0;
            try
            {
                x = std::stoull(item, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != item.size())
                throw UsageError("bad " + what + " value '" + item + "' in --grid");
            v.push_back(static_cast<std::size_t>(x));
        }
        if (v.empty())
            throw UsageError("empty " + what + " list in --grid");
        return v;
    }

    CpGrid resolve_grid() const
    {
        if (cfg_.grid == "default")
            return default_cp_grid();
        CpGrid g;
        std::stringstream ss(cfg_.grid);
        std::string part;
        while (std::getline(ss, part, ';'))
        {
            if (part.rfind("M=", 0) == 0)
                g.subcarriers = parse_list(part.substr(2), "M");
            else if (part.rfind("nu=", 0) == 0)
                g.guards = parse_list(part.substr(3), "nu");
            else
                throw UsageError("--grid expects 'default' or 'M=...;nu=...', got '" + cfg_.grid + "'");
        }
        if (g.subcarriers.empty())
            throw UsageError("--grid needs an M list");
        return g;
    }

    void cmd_sweep(const fs::path &dir)
    {
        const auto cap = resolve_capacity();
        const auto grid = resolve_grid();
        auto h = load_channel();
        bool resampled = false;
        if (std::abs(h.tap_spacing() - cfg_.sample_period) > 1e-9 * cfg_.sample_period)
        {
            h = equivalent_response(h, NyquistKernel(cfg_.sample_period), cfg_.sample_period);
            resampled = true;
        }
        OfdmConfig base;
        base.sample_period = cfg_.sample_period;
        base.tx_psd_dbm_hz = cfg_.tx_psd_dbm_hz;
        base.noise_psd_dbm_hz = cfg_.noise_psd_dbm_hz;
        const auto result = optimize_cp(h, grid, base, cap);
        write(dir, "sweep.csv", io::sweep_csv(result));
        json g{{"M", grid.subcarriers}, {"nu", grid.guards.empty() ? json("default") : json(grid.guards)}};
        write_manifest(dir, {{"capacity", capacity_json(cap)},
                             {"sample_period_s", cfg_.sample_period},
                             {"grid", g},
                             {"resampled_to_sample_grid", resampled},
                             {"channel_taps_on_grid", h.size()}});
    }

    void cmd_lptv(const fs::path &dir)
    {
        const auto g = resolve_generator();
        if (!(cfg_.period > 0.0))
            throw UsageError("--period must be positive");
        Rng rng(derive_seed(cfg_.seed, 0));
        const auto ch = generate_lptv(g, rng, cfg_.period, cfg_.harmonics, cfg_.step_db, true);
        write(dir, "lptv.json", io::dump(io::to_json(ch)));
        write_manifest(dir, {{"generator", generator_json(g)},
                             {"T0_s", cfg_.period},
                             {"harmonics", cfg_.harmonics},
                             {"step_db", cfg_.step_db}});
    }

    void replay()
    {
        json m;
        try
        {
            m = json::parse(io::read_file(cfg_.manifest));
        }
        catch (const json::exception &e)
        {
            throw UsageError(cfg_.manifest + ": " + e.what());
        }
        if (!m.contains("argv") || !m["argv"].is_array() || m["argv"].empty())
            throw UsageError(cfg_.manifest + ": no recorded argv");
        for (const auto &in : m.value("inputs", json::array()))
        {
            const auto path = in.at("path").get<std::string>();
            if (fnv1a64_hex(io::read_file(path)) != in.at("fnv1a64").get<std::string>())
                fail(ErrorKind::io_error, "input " + path + " changed since the recorded run");
        }
        std::vector<std::string> args = m["argv"].get<std::vector<std::string>>();
        if (args.front() == "replay")
            throw UsageError("manifest records a replay; refusing to recurse");
        args.push_back("--out");
        args.push_back(out_dir().string());
        App inner;
        const int rc = inner.run(args);
        if (rc != 0)
            fail(ErrorKind::io_error, "replayed command exited with status " + std::to_string(rc));
    }
};

inline int run(int argc, char **argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return App{}.run(args);
}

} // namespace wireline::cli

#endif
