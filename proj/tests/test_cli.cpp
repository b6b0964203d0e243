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


// Drives the built command-line tool as a subprocess.

#include "wireline/io.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using wireline::io::json;
using wireline::io::read_file;
using Catch::Matchers::ContainsSubstring;

namespace
{

const fs::path tmp_root = WIRELINE_TEST_TMP;

struct Result
{
    int code;
    std::string out;
    std::string err;
};

std::string quote(const std::string &s)
{
    std::string q = "'";
    for (char c : s)
        q += c == '\'' ? std::string("'\\''") : std::string(1, c);
    return q + "'";
}

Result cli(const std::string &args, const std::string &env = {})
{
    fs::create_directories(tmp_root);
    const auto out = tmp_root / "stdout.txt";
    const auto err = tmp_root / "stderr.txt";
    const std::string cmd = env + (env.empty() ? "" : " ") + quote(WIRELINE_CLI_PATH) + " " + args + " >" +
                            quote(out.string()) + " 2>" + quote(err.string());
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), read_file(out), read_file(err)};
}

fs::path fresh(const std::string &name)
{
    const auto d = tmp_root / name;
    fs::remove_all(d);
    return d;
}

std::size_t count_lines(const std::string &s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

} // namespace

TEST_CASE("generate writes an ensemble and a manifest", "[cli]")
{
    const auto dir = fresh("gen");
    const auto r = cli("generate --profile ih-plc-urban --pdp two-tap --count 500 --seed 7 --out " + quote(dir.string()));
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto csv = read_file(dir / "ensemble.csv");
    CHECK(csv.starts_with("index,gain_db,rmsds_us,tap_spacing_s,L\n"));
    CHECK(count_lines(csv) == 501);

    const auto m = json::parse(read_file(dir / "manifest.json"));
    CHECK(m["tool"] == "wireline");
    CHECK(m["command"] == "generate");
    CHECK(m["seed"] == 7);
    CHECK(m["resolved"]["generator"]["pdp"] == "two-tap");
    CHECK(m["resolved"]["generator"]["profile"]["atten_mu_db"] == 41.5);
    CHECK(m["resolved"]["count"] == 500);
    CHECK_FALSE(m["version"].get<std::string>().empty());
    for (const auto &a : m["argv"])
        CHECK(a != "--out");
}

TEST_CASE("identical invocations give byte-identical outputs", "[cli][determinism]")
{
    const auto a = fresh("det-a"), b = fresh("det-b");
    const std::string args = "generate --profile ih-plc-suburban --count 300 --seed 11 --write-channels";
    REQUIRE(cli(args + " --threads 1 --out " + quote(a.string())).code == 0);
    REQUIRE(cli(args + " --threads 6 --out " + quote(b.string())).code == 0);
    CHECK(read_file(a / "ensemble.csv") == read_file(b / "ensemble.csv"));
    CHECK(read_file(a / "channels" / "000123.csv") == read_file(b / "channels" / "000123.csv"));

    const auto c = fresh("det-c");
    REQUIRE(cli("generate --profile ih-plc-suburban --count 300 --seed 12 --out " + quote(c.string())).code == 0);
    CHECK(read_file(a / "ensemble.csv") != read_file(c / "ensemble.csv"));
}

TEST_CASE("usage errors exit 1", "[cli]")
{
    const auto dir = fresh("usage");
    auto r = cli("generate --profile ih-plc-rural --out " + quote(dir.string()));
    CHECK(r.code == 1);
    CHECK_THAT(r.err, ContainsSubstring("ih-plc-urban"));
    CHECK_THAT(r.err, ContainsSubstring("dsl-ansi"));

    CHECK(cli("generate --bogus-flag").code == 1);
    CHECK(cli("frobnicate").code == 1);
    CHECK(cli("").code == 1);
    CHECK(cli("generate --pdp rayleigh --out " + quote(dir.string())).code == 1);
    CHECK(cli("sweep --out " + quote(dir.string())).code == 1); // --channel is required

    fs::create_directories(dir);
    std::ofstream(dir / "typo.ini") << "[ih-plc-urban]\n\nalpha_typo = 3\n";
    r = cli("generate --config " + quote((dir / "typo.ini").string()) + " --out " + quote(dir.string()));
    CHECK(r.code == 1);
    CHECK_THAT(r.err, ContainsSubstring("typo.ini:3"));
    CHECK_THAT(r.err, ContainsSubstring("alpha_typo"));

    CHECK(cli("--help").code == 0);
}

TEST_CASE("runtime errors exit 2", "[cli]")
{
    const auto dir = fresh("runtime");
    fs::create_directories(dir);
    std::ofstream(dir / "blocker") << "not a directory\n";
    const auto r = cli("generate --count 5 --out " + quote((dir / "blocker" / "sub").string()));
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());

    CHECK(cli("metrics --channel " + quote((dir / "missing.csv").string()) + " --out " + quote(dir.string())).code ==
          2);
}

TEST_CASE("output directory from the environment", "[cli]")
{
    const auto dir = fresh("env-out");
    const auto r = cli("generate --count 3", "WIRELINE_OUTPUT_DIR=" + quote(dir.string()));
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "ensemble.csv"));
    CHECK(fs::exists(dir / "manifest.json"));
}

TEST_CASE("channel-file commands", "[cli]")
{
    const auto dir = fresh("chan");
    fs::create_directories(dir);
    // Two taps 40 samples apart on the 28 MHz grid, -50 dB total.
    std::ostringstream ch;
    ch << "index,delay_s,re,im\n";
    for (int i = 0; i <= 40; ++i)
    {
        const double a = (i == 0 || i == 40) ? std::sqrt(0.5e-5) : 0.0;
        ch << i << "," << wireline::io::format_double(i / 28e6) << "," << wireline::io::format_double(a) << ",0\n";
    }
    std::ofstream(dir / "chan.csv") << ch.str();
    const auto chan = quote((dir / "chan.csv").string());

    REQUIRE(cli("metrics --channel " + chan + " --out " + quote((dir / "m").string())).code == 0);
    const auto met = json::parse(read_file(dir / "m" / "metrics.json"));
    CHECK(std::abs(met["gain_db"].get<double>() + 50.0) < 1e-9);
    CHECK(std::abs(met["rmsds_s"].get<double>() - 20.0 / 28e6) < 1e-15);

    REQUIRE(cli("capacity --channel " + chan + " --out " + quote((dir / "c").string())).code == 0);
    const auto cap = json::parse(read_file(dir / "c" / "capacity.json"));
    CHECK(cap["W_hz"] == 28e6);
    CHECK(cap["capacity_bps"].get<double>() > 0.0);
    CHECK(cap["capacity_bps"].get<double>() <= 12 * 28e6);

    REQUIRE(cli("sweep --channel " + chan + " --grid default --out " + quote((dir / "s").string())).code == 0);
    const auto sweep = read_file(dir / "s" / "sweep.csv");
    CHECK(sweep.starts_with("M,nu,rate_bps,optimal\n"));
    std::istringstream lines(sweep);
    std::string line;
    int flagged = 0, rows = 0;
    std::getline(lines, line);
    while (std::getline(lines, line))
    {
        ++rows;
        flagged += line.ends_with(",1") ? 1 : 0;
    }
    CHECK(flagged == 1);
    CHECK(rows > 10);

    REQUIRE(cli("sweep --channel " + chan + " --grid 'M=256,512;nu=0,64' --out " + quote((dir / "s2").string())).code ==
            0);
    CHECK(count_lines(read_file(dir / "s2" / "sweep.csv")) == 5);
    CHECK(cli("sweep --channel " + chan + " --grid 'M=abc' --out " + quote((dir / "s3").string())).code == 1);

    const auto m = json::parse(read_file(dir / "s" / "manifest.json"));
    REQUIRE(m["inputs"].size() == 1);
    CHECK(m["inputs"][0]["fnv1a64"].get<std::string>().size() == 16);
}

TEST_CASE("coverage correlation", "[cli]")
{
    const auto dir = fresh("cov");
    REQUIRE(cli("coverage --profile ih-plc-urban --count 5000 --seed 7 --subcarriers 256 --out " + quote(dir.string()))
                .code == 0);
    const auto cdf = read_file(dir / "cdf.csv");
    CHECK(cdf.starts_with("rate_bps,cdf\n"));
    CHECK(count_lines(cdf) == 5001);
    const auto s = json::parse(read_file(dir / "coverage.json"));
    CHECK(s["corr_capacity_gain_db"].get<double>() > 0.95);
    CHECK(s["corr_capacity_rmsds"].get<double>() < 0.0);
}

TEST_CASE("coverage truncates by default", "[cli]")
{
    const auto dir = fresh("trunc");
    auto truncated = [&](const std::string &cmd, const std::string &sub) {
        REQUIRE(cli(cmd + " --profile ih-plc-urban --count 50 --seed 1 --out " + quote((dir / sub).string())).code == 0);
        return json::parse(read_file(dir / sub / "manifest.json"))["resolved"]["generator"]["truncate_to_table_bounds"]
            .get<bool>();
    };
    CHECK(truncated("coverage --subcarriers 64", "cov"));
    CHECK_FALSE(truncated("coverage --subcarriers 64 --no-truncate", "cov-off"));
    CHECK_FALSE(truncated("generate", "gen"));
    CHECK(truncated("generate --truncate", "gen-on"));
    CHECK(cli("coverage --truncate --no-truncate --count 5 --out " + quote((dir / "both").string())).code == 1);

    // A config profile without bounds cannot truncate, so the default quietly stays off.
    std::ofstream(dir / "open.ini") << "[open]\nbase = ih-plc-urban\natten_min_db = none\natten_max_db = none\n";
    REQUIRE(cli("coverage --config " + quote((dir / "open.ini").string()) +
                " --count 20 --subcarriers 64 --out " + quote((dir / "open").string()))
                .code == 0);
}

TEST_CASE("statistics commands", "[cli]")
{
    const auto dir = fresh("stats");
    REQUIRE(cli("generate --profile ih-plc-urban --count 400 --seed 3 --out " + quote((dir / "g").string())).code == 0);
    const auto ens = quote((dir / "g" / "ensemble.csv").string());

    REQUIRE(cli("regress --input " + ens + " --form linear --out " + quote((dir / "r").string())).code == 0);
    const auto reg = json::parse(read_file(dir / "r" / "regression.json"));
    CHECK(std::abs(reg["line"]["slope"].get<double>() + 0.0028) < 1e-6);
    CHECK(std::abs(reg["line"]["intercept"].get<double>() - 0.089) < 1e-5);

    REQUIRE(cli("tests --input " + ens + " --target gain --out " + quote((dir / "t").string())).code == 0);
    const auto report = json::parse(read_file(dir / "t" / "tests.json"));
    CHECK_FALSE(report.contains("rmsds"));
    const auto &tests = report.at("gain").at("tests");
    REQUIRE(tests.is_array());
    CHECK(tests.size() == 5);
    for (const auto &t : tests)
    {
        CHECK(t.contains("test_name"));
        CHECK(t.contains("statistic"));
        CHECK(t.contains("p_value"));
        CHECK(t.contains("reject_at_5pct"));
    }
    CHECK(read_file(dir / "t" / "tests.csv").starts_with("variable,test_name,statistic,p_value,reject_at_5pct"));

    CHECK(cli("tests --input " + ens + " --target neither --out " + quote((dir / "t2").string())).code == 1);
}

TEST_CASE("lptv command", "[cli]")
{
    const auto dir = fresh("lptv");
    REQUIRE(cli("lptv --profile mv-plc --taps 12 --harmonics 2 --seed 5 --out " + quote(dir.string())).code == 0);
    const auto ch = wireline::io::lptv_from_json(json::parse(read_file(dir / "lptv.json")));
    CHECK(ch.harmonics().size() == 5);
    CHECK(ch.period() == 10e-3);
}

TEST_CASE("replay reproduces a run from its manifest", "[cli][determinism]")
{
    const auto dir = fresh("replay");
    fs::create_directories(dir);
    std::ofstream(dir / "scenario.ini") << "[flat]\nbase = ih-ph\natten_mu_db = 20\n";
    const auto ini = quote((dir / "scenario.ini").string());
    REQUIRE(cli("coverage --config " + ini + " --count 200 --seed 9 --subcarriers 128 --out " +
                quote((dir / "first").string()))
                .code == 0);
    const auto r = cli("replay --manifest " + quote((dir / "first" / "manifest.json").string()) + " --out " +
                       quote((dir / "second").string()));
    INFO(r.err);
    REQUIRE(r.code == 0);
    CHECK(read_file(dir / "first" / "cdf.csv") == read_file(dir / "second" / "cdf.csv"));
    CHECK(read_file(dir / "first" / "manifest.json") == read_file(dir / "second" / "manifest.json"));

    // A changed input is detected.
    std::ofstream(dir / "scenario.ini") << "[flat]\nbase = ih-ph\natten_mu_db = 21\n";
    CHECK(cli("replay --manifest " + quote((dir / "first" / "manifest.json").string()) + " --out " +
              quote((dir / "third").string()))
              .code == 2);
    CHECK(cli("replay --manifest " + quote((dir / "nope.json").string())).code != 0);
}
