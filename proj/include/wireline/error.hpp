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

#ifndef WIRELINE_ERROR_HPP
#define WIRELINE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace wireline
{

enum class ErrorKind
{
    invalid_argument,
    degenerate_channel,
    zero_variance,
    footnote_regime,
    aliased_harmonics,
    not_commensurate,
    unsatisfiable_bounds,
    nonpositive_rmsds,
    rank_deficient,
    parse_error,
    io_error
};

inline const char *to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::invalid_argument:
        return "invalid argument";
    case ErrorKind::degenerate_channel:
        return "degenerate channel";
    case ErrorKind::zero_variance:
        return "zero variance";
    case ErrorKind::footnote_regime:
        return "footnote regime violated";
    case ErrorKind::aliased_harmonics:
        return "aliased harmonics";
    case ErrorKind::not_commensurate:
        return "non-commensurate period";
    case ErrorKind::unsatisfiable_bounds:
        return "unsatisfiable bounds";
    case ErrorKind::nonpositive_rmsds:
        return "nonpositive rms delay spread";
    case ErrorKind::rank_deficient:
        return "rank deficient";
    case ErrorKind::parse_error:
        return "parse error";
    case ErrorKind::io_error:
        return "io error";
    }
    return "unknown";
}

// Every failure raised by the library carries a kind so callers (and the CLI exit-code
// mapping) can branch without parsing messages.
class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, const std::string &detail)
        : std::runtime_error(detail.empty() ? std::string(to_string(kind))
                                            : std::string(to_string(kind)) + ": " + detail),
          kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &detail = {})
{
    throw Error(kind, detail);
}

} // namespace wireline

#endif
