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

// Scenario configuration text:
//
//   # comment
//   [my-scenario]
//   base = ih-plc-urban      ; optional when the section name is itself a built-in
//   atten_mu_db = 50
//
//   [generator]
//   pdp = exponential
//   taps = 32
//
// Each profile section starts from its base built-in and applies the keys in order.
// Unknown keys, duplicate keys and malformed values are errors that name the line.

#ifndef WIRELINE_CONFIG_HPP
#define WIRELINE_CONFIG_HPP

#include "wireline/error.hpp"
#include "wireline/generator.hpp"
#include "wireline/io.hpp"
#include "wireline/profiles.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace wireline
{

struct GeneratorSection
{
    std::optional<PdpFamily> pdp;
    std::optional<std::size_t> taps;
    std::optional<double> exponential_decay;
    std::optional<bool> truncate_to_table_bounds;
    std::optional<std::optional<double>> rmsds_floor_s; // inner nullopt: floor disabled

    void apply(GeneratorConfig &g) const
    {
        if (pdp)
            g.pdp = *pdp;
        if (taps)
            g.taps = *taps;
        if (exponential_decay)
            g.exponential_decay = *exponential_decay;
        if (truncate_to_table_bounds)
            g.draw.truncate_to_table_bounds = *truncate_to_table_bounds;
        if (rmsds_floor_s)
            g.draw.rmsds_floor_s = *rmsds_floor_s;
    }
};

struct ConfigFile
{
    std::vector<ScenarioProfile> profiles; // in file order
    GeneratorSection generator;
};

namespace detail
{

inline std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline std::string builtin_list()
{
    std::string s;
    for (const auto &n : builtin_profile_names())
        s += (s.empty() ? "" : ", ") + n;
    return s;
}

[[noreturn]] inline void config_error(const std::string &origin, std::size_t line, const std::string &msg)
{
    fail(ErrorKind::parse_error, origin + ":" + std::to_string(line) + ": " + msg);
}

inline double config_number(const std::string &origin, std::size_t line, const std::string &key, const std::string &v)
{
    try
    {
        return io::parse_double(v, line);
    }
    catch (const Error &)
    {
        config_error(origin, line, "key '" + key + "' expects a number, got '" + v + "'");
    }
}

inline bool config_bool(const std::string &origin, std::size_t line, const std::string &key, const std::string &v)
{
    if (v == "true" || v == "1" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "no")
        return false;
    config_error(origin, line, "key '" + key + "' expects true or false, got '" + v + "'");
}

inline RegressionLine &ensure_log_line(ScenarioProfile &p)
{
    if (!p.log_line)
        p.log_line = RegressionLine{0.0, 0.0, LineForm::log, 0.0};
    return *p.log_line;
}

inline ConditionalBranch &ensure_branch(ScenarioProfile &p)
{
    if (!p.conditional_branch)
        p.conditional_branch = ConditionalBranch{0.0, 0.0, 0.0};
    return *p.conditional_branch;
}

/// Applies one profile key; returns false when the key is unknown.
inline bool apply_profile_key(ScenarioProfile &p, const std::string &origin, std::size_t line, const std::string &key,
                              const std::string &v)
{
    auto num = [&] { return config_number(origin, line, key, v); };
    auto optional_num = [&]() -> std::optional<double> {
        if (v == "none")
            return std::nullopt;
        return num();
    };
    if (key == "atten_mu_db")
        p.atten_mu_db = num();
    else if (key == "atten_sigma_db")
        p.atten_sigma_db = num();
    else if (key == "atten_min_db")
        p.atten_min_db = optional_num();
    else if (key == "atten_max_db")
        p.atten_max_db = optional_num();
    else if (key == "linear_slope")
        p.linear_line.slope = num();
    else if (key == "linear_intercept")
        p.linear_line.intercept = num();
    else if (key == "linear_correlation")
        p.linear_line.correlation = num();
    else if (key == "log_slope")
        ensure_log_line(p).slope = num();
    else if (key == "log_intercept")
        ensure_log_line(p).intercept = num();
    else if (key == "log_correlation")
        ensure_log_line(p).correlation = num();
    else if (key == "line_form")
    {
        if (v == "linear")
            p.line_form = LineForm::linear;
        else if (v == "log")
            p.line_form = LineForm::log;
        else
            config_error(origin, line, "line_form must be linear or log, got '" + v + "'");
    }
    else if (key == "rmsds_kurtosis")
        p.rmsds_kurtosis = num();
    else if (key == "branch_threshold_db")
        ensure_branch(p).threshold_db = num();
    else if (key == "branch_mean_us")
        ensure_branch(p).mean_us = num();
    else if (key == "branch_std_us")
        ensure_branch(p).std_us = num();
    else if (key == "conditional_branch")
    {
        if (v != "none")
            config_error(origin, line, "conditional_branch only accepts 'none'");
        p.conditional_branch.reset();
    }
    else if (key == "rmsds_mean_us")
        p.rmsds_mean_us = num();
    else if (key == "rmsds_std_us")
        p.rmsds_std_us = num();
    else
        return false;
    return true;
}

inline bool apply_generator_key(GeneratorSection &g, const std::string &origin, std::size_t line,
                                const std::string &key, const std::string &v)
{
    if (key == "pdp")
    {
        g.pdp = parse_pdp_family(v);
        if (!g.pdp)
            config_error(origin, line, "unknown PDP family '" + v + "'");
    }
    else if (key == "taps")
    {
        const double t = config_number(origin, line, key, v);
        if (!(t >= 1.0) || t != std::floor(t))
            config_error(origin, line, "taps must be a positive integer");
        g.taps = static_cast<std::size_t>(t);
    }
    else if (key == "exponential_decay")
        g.exponential_decay = config_number(origin, line, key, v);
    else if (key == "truncate_to_table_bounds")
        g.truncate_to_table_bounds = config_bool(origin, line, key, v);
    else if (key == "rmsds_floor_s")
        g.rmsds_floor_s = v == "none" ? std::optional<double>{} : std::optional<double>{config_number(origin, line, key, v)};
    else
        return false;
    return true;
}

} // namespace detail

/// Parses configuration text. `origin` prefixes diagnostics (usually the file name).
inline ConfigFile parse_config(std::string_view text, const std::string &origin = "<config>")
{
    using namespace detail;
    ConfigFile out;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t lineno = 0;

    struct Pending
    {
        std::string name;
        std::size_t line;
        std::vector<std::tuple<std::size_t, std::string, std::string>> keys;
        std::optional<std::string> base;
    };
    std::optional<Pending> current;
    bool in_generator = false;
    std::set<std::string> seen_sections;
    std::set<std::string> seen_keys;

    auto finish = [&] {
        if (!current)
            return;
        const std::string base_name = current->base.value_or(current->name);
        auto base = find_builtin_profile(base_name);
        if (!base)
            config_error(origin, current->line,
                         "unknown profile '" + base_name + "' (built-in profiles: " + builtin_list() + ")");
        ScenarioProfile p = *base;
        p.name = current->name;
        for (const auto &[ln, k, v] : current->keys)
            if (!apply_profile_key(p, origin, ln, k, v))
                config_error(origin, ln, "unknown key '" + k + "'");
        try
        {
            p.validate();
        }
        catch (const Error &e)
        {
            config_error(origin, current->line, e.what());
        }
        out.profiles.push_back(std::move(p));
        current.reset();
    };

    while (std::getline(in, raw))
    {
        ++lineno;
        std::string line = raw;
        if (const auto c = line.find_first_of("#;"); c != std::string::npos)
            line.erase(c);
        line = trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[')
        {
            if (line.back() != ']')
                config_error(origin, lineno, "unterminated section header");
            const std::string name = trim(std::string_view(line).substr(1, line.size() - 2));
            if (name.empty())
                config_error(origin, lineno, "empty section name");
            if (!seen_sections.insert(name).second)
                config_error(origin, lineno, "duplicate section [" + name + "]");
            finish();
            seen_keys.clear();
            in_generator = name == "generator";
            if (!in_generator)
                current = Pending{name, lineno, {}, std::nullopt};
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            config_error(origin, lineno, "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty())
            config_error(origin, lineno, "missing key before '='");
        if (value.empty())
            config_error(origin, lineno, "key '" + key + "' has no value");
        if (!in_generator && !current)
            config_error(origin, lineno, "key '" + key + "' outside any section");
        if (!seen_keys.insert(key).second)
            config_error(origin, lineno, "duplicate key '" + key + "'");
        if (in_generator)
        {
            if (!apply_generator_key(out.generator, origin, lineno, key, value))
                config_error(origin, lineno, "unknown key '" + key + "'");
        }
        else if (key == "base")
            current->base = value;
        else
            current->keys.emplace_back(lineno, key, value);
    }
    finish();
    return out;
}

inline ConfigFile load_config(const std::filesystem::path &path)
{
    return parse_config(io::read_file(path), path.string());
}

/// The named profile section of a config file, or its only profile section when `name` is
/// empty.
inline ScenarioProfile load_profile_config(const std::filesystem::path &path, std::string_view name = {})
{
    const auto cfg = load_config(path);
    if (name.empty())
    {
        if (cfg.profiles.size() != 1)
            fail(ErrorKind::parse_error, path.string() + ": expected exactly one profile section, found " +
                                             std::to_string(cfg.profiles.size()));
        return cfg.profiles.front();
    }
    for (const auto &p : cfg.profiles)
        if (p.name == name)
            return p;
    fail(ErrorKind::parse_error, path.string() + ": no profile section [" + std::string(name) + "]");
}

/// Built-in profile by name; unknown names fail listing the built-ins.
inline ScenarioProfile builtin_profile_or_fail(std::string_view name)
{
    if (auto p = find_builtin_profile(name))
        return *p;
    fail(ErrorKind::invalid_argument,
         "unknown profile '" + std::string(name) + "' (built-in profiles: " + detail::builtin_list() + ")");
}

} // namespace wireline

#endif
