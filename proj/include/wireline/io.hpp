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

// CSV and JSON serialization. Numbers are written with 17 significant digits so that every
// double round-trips exactly and repeated runs produce identical bytes.

#ifndef WIRELINE_IO_HPP
#define WIRELINE_IO_HPP

#include "wireline/channel.hpp"
#include "wireline/error.hpp"
#include "wireline/generator.hpp"
#include "wireline/link.hpp"
#include "wireline/lptv.hpp"
#include "wireline/normality.hpp"
#include "wireline/regression.hpp"

#include <json.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace wireline::io
{

using json = nlohmann::json;

inline std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

/// Writes `content` to a sibling temporary file and renames it over `path`, so readers see
/// either the old file or the complete new one.
inline void write_file_atomic(const std::filesystem::path &path, std::string_view content)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (path.has_parent_path())
    {
        fs::create_directories(path.parent_path(), ec);
        if (ec)
            fail(ErrorKind::io_error, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            fail(ErrorKind::io_error, "cannot open " + tmp.string() + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out)
            fail(ErrorKind::io_error, "write to " + tmp.string() + " failed");
    }
    fs::rename(tmp, path, ec);
    if (ec)
    {
        fs::remove(tmp, ec);
        fail(ErrorKind::io_error, "cannot move output into place at " + path.string());
    }
}

inline std::string read_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(ErrorKind::io_error, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Parses a whole field as a double; throws parse_error naming the line.
inline double parse_double(std::string_view field, std::size_t line)
{
    std::string s(field);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t'))
        s.pop_back();
    std::size_t start = s.find_first_not_of(" \t");
    s = start == std::string::npos ? "" : s.substr(start);
    char *end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE)
        fail(ErrorKind::parse_error, "line " + std::to_string(line) + ": '" + s + "' is not a number");
    return v;
}

inline std::vector<std::string_view> split_csv_line(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true)
    {
        const auto c = line.find(',', pos);
        out.push_back(line.substr(pos, c == std::string_view::npos ? std::string_view::npos : c - pos));
        if (c == std::string_view::npos)
            break;
        pos = c + 1;
    }
    return out;
}

// ------------------------------------------------------------------------
// Impulse responses
// ------------------------------------------------------------------------

inline std::string impulse_response_csv(const ImpulseResponse &h)
{
    std::string s = "index,delay_s,re,im\n";
    for (std::size_t i = 0; i < h.size(); ++i)
        s += std::to_string(i) + "," + format_double(h.delay(i)) + "," + format_double(h[i].real()) + "," +
             format_double(h[i].imag()) + "\n";
    return s;
}

/// Reads `index,delay_s,re,im`. Delays must form a uniform grid (1e-9 relative); a single
/// tap takes `single_tap_spacing`.
inline ImpulseResponse parse_impulse_response_csv(std::string_view text, double single_tap_spacing = 1.0)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> delays;
    std::vector<cplx> taps;
    bool header = false;
    while (std::getline(in, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!header)
        {
            if (line != "index,delay_s,re,im")
                fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected header index,delay_s,re,im");
            header = true;
            continue;
        }
        const auto f = split_csv_line(line);
        if (f.size() != 4)
            fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected 4 fields, got " +
                                             std::to_string(f.size()));
        const double idx = parse_double(f[0], lineno);
        if (idx != static_cast<double>(taps.size()))
            fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": tap indices must count up from 0");
        delays.push_back(parse_double(f[1], lineno));
        taps.emplace_back(parse_double(f[2], lineno), parse_double(f[3], lineno));
    }
    if (!header)
        fail(ErrorKind::parse_error, "empty impulse-response file");
    if (taps.empty())
        fail(ErrorKind::parse_error, "impulse-response file has no taps");
    double spacing = single_tap_spacing;
    if (taps.size() > 1)
    {
        spacing = (delays.back() - delays.front()) / static_cast<double>(taps.size() - 1);
        for (std::size_t i = 0; i < delays.size(); ++i)
        {
            const double expect = delays.front() + static_cast<double>(i) * spacing;
            if (std::abs(delays[i] - expect) > 1e-9 * std::max(std::abs(spacing), std::abs(expect)))
                fail(ErrorKind::parse_error, "line " + std::to_string(i + 2) + ": delays are not uniformly spaced");
        }
    }
    return ImpulseResponse(std::move(taps), spacing, delays.front());
}

inline json to_json(const ImpulseResponse &h)
{
    json taps = json::array();
    for (const auto &t : h.taps())
        taps.push_back({t.real(), t.imag()});
    json j{{"tap_spacing_s", h.tap_spacing()}, {"taps", std::move(taps)}};
    if (h.first_delay() != 0.0)
        j["first_delay_s"] = h.first_delay();
    return j;
}

inline ImpulseResponse impulse_response_from_json(const json &j)
{
    try
    {
        std::vector<cplx> taps;
        for (const auto &t : j.at("taps"))
        {
            if (!t.is_array() || t.size() != 2)
                fail(ErrorKind::parse_error, "each tap must be a [re, im] pair");
            taps.emplace_back(t[0].get<double>(), t[1].get<double>());
        }
        const double first = j.contains("first_delay_s") ? j["first_delay_s"].get<double>() : 0.0;
        return ImpulseResponse(std::move(taps), j.at("tap_spacing_s").get<double>(), first);
    }
    catch (const json::exception &e)
    {
        fail(ErrorKind::parse_error, std::string("impulse-response JSON: ") + e.what());
    }
}

/// Loads an impulse response from a .json or .csv file (by extension).
inline ImpulseResponse load_impulse_response(const std::filesystem::path &path)
{
    const auto text = read_file(path);
    if (path.extension() == ".json")
    {
        try
        {
            return impulse_response_from_json(json::parse(text));
        }
        catch (const json::parse_error &e)
        {
            fail(ErrorKind::parse_error, path.string() + ": " + e.what());
        }
    }
    return parse_impulse_response_csv(text);
}

// ------------------------------------------------------------------------
// Ensembles, CDFs, sweeps
// ------------------------------------------------------------------------

/// `index,gain_db,rmsds_us,tap_spacing_s,L`, one row per realization.
inline std::string ensemble_csv(const Ensemble &ens)
{
    std::string s = "index,gain_db,rmsds_us,tap_spacing_s,L\n";
    for (std::size_t i = 0; i < ens.size(); ++i)
    {
        const auto &r = ens.realizations[i];
        s += std::to_string(i) + "," + format_double(r.achieved_gain_db) + "," +
             format_double(r.achieved_rmsds_s * 1e6) + "," + format_double(r.channel.tap_spacing()) + "," +
             std::to_string(r.channel.size()) + "\n";
    }
    return s;
}

struct EnsembleColumns
{
    std::vector<double> gain_db;
    std::vector<double> rmsds_us;
};

/// Reads the gain_db and rmsds_us columns of an ensemble CSV; other columns are ignored.
inline EnsembleColumns parse_ensemble_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    std::size_t gcol = 0, scol = 0, width = 0;
    bool header = false;
    EnsembleColumns out;
    while (std::getline(in, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = split_csv_line(line);
        if (!header)
        {
            bool g = false, s = false;
            for (std::size_t i = 0; i < f.size(); ++i)
            {
                if (f[i] == "gain_db")
                    gcol = i, g = true;
                if (f[i] == "rmsds_us")
                    scol = i, s = true;
            }
            if (!g || !s)
                fail(ErrorKind::parse_error, "line 1: header needs gain_db and rmsds_us columns");
            width = f.size();
            header = true;
            continue;
        }
        if (f.size() != width)
            fail(ErrorKind::parse_error, "line " + std::to_string(lineno) + ": expected " + std::to_string(width) +
                                             " fields, got " + std::to_string(f.size()));
        out.gain_db.push_back(parse_double(f[gcol], lineno));
        out.rmsds_us.push_back(parse_double(f[scol], lineno));
    }
    if (!header)
        fail(ErrorKind::parse_error, "empty ensemble file");
    return out;
}

inline std::string cdf_csv(const std::vector<CdfPoint> &cdf)
{
    std::string s = "rate_bps,cdf\n";
    for (const auto &p : cdf)
        s += format_double(p.rate_bps) + "," + format_double(p.probability) + "\n";
    return s;
}

/// `M,nu,rate_bps,optimal`; exactly one row has optimal = 1.
inline std::string sweep_csv(const SweepResult &r)
{
    std::string s = "M,nu,rate_bps,optimal\n";
    bool flagged = false;
    for (const auto &p : r.points)
    {
        const bool best = !flagged && p.subcarriers == r.best.subcarriers && p.guard == r.best.guard;
        flagged = flagged || best;
        s += std::to_string(p.subcarriers) + "," + std::to_string(p.guard) + "," + format_double(p.rate_bps) + "," +
             (best ? "1" : "0") + "\n";
    }
    return s;
}

inline json capacity_json(const CapacityConfig &cap, double capacity_bps)
{
    return json{{"W_hz", cap.bandwidth_hz},
                {"gamma_db", cap.effective_gamma_db()},
                {"band_hz", {cap.band_start_hz, cap.band_end_hz}},
                {"capacity_bps", capacity_bps}};
}

// ------------------------------------------------------------------------
// Statistics reports
// ------------------------------------------------------------------------

inline json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json to_json(const TestReport &r)
{
    return json{{"test_name", r.test_name},
                {"statistic", nullable(r.statistic)},
                {"p_value", nullable(r.p_value)},
                {"reject_at_5pct", r.reject_at_5pct},
                {"applicable", r.applicable}};
}

inline json to_json(const std::vector<TestReport> &reports)
{
    json a = json::array();
    for (const auto &r : reports)
        a.push_back(to_json(r));
    return a;
}

inline std::string test_reports_csv(const std::vector<TestReport> &reports)
{
    std::string s = "test_name,statistic,p_value,reject_at_5pct,applicable\n";
    for (const auto &r : reports)
        s += r.test_name + "," + format_double(r.statistic) + "," + format_double(r.p_value) + "," +
             (r.reject_at_5pct ? "1" : "0") + "," + (r.applicable ? "1" : "0") + "\n";
    return s;
}

inline json to_json(const RegressionLine &l)
{
    return json{{"slope", l.slope}, {"intercept", l.intercept}, {"form", to_string(l.form)}, {"correlation", l.correlation}};
}

inline json to_json(const RobustFit &f)
{
    return json{{"line", to_json(f.line)},
                {"scale", f.scale},
                {"iterations", f.iterations},
                {"converged", f.converged}};
}

// ------------------------------------------------------------------------
// LPTV
// ------------------------------------------------------------------------

inline json to_json(const LptvChannel &ch)
{
    json h = json::object();
    for (const auto &[m, resp] : ch.harmonics())
        h[std::to_string(m)] = to_json(resp);
    return json{{"T0_s", ch.period()}, {"harmonics", std::move(h)}};
}

inline LptvChannel lptv_from_json(const json &j)
{
    try
    {
        HarmonicBank bank;
        for (const auto &[key, val] : j.at("harmonics").items())
        {
            std::size_t used = 0;
            int m = 0;
            try
            {
                m = std::stoi(key, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (used == 0 || used != key.size())
                fail(ErrorKind::parse_error, "harmonic key '" + key + "' is not an integer");
            bank.emplace(m, impulse_response_from_json(val));
        }
        return LptvChannel(std::move(bank), j.at("T0_s").get<double>());
    }
    catch (const json::exception &e)
    {
        fail(ErrorKind::parse_error, std::string("LPTV JSON: ") + e.what());
    }
}

/// JSON text with a trailing newline and two-space indent.
inline std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace wireline::io

#endif
