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


#ifndef WIRELINE_WIRELINE_HPP
#define WIRELINE_WIRELINE_HPP

#include "wireline/channel.hpp"
#include "wireline/config.hpp"
#include "wireline/error.hpp"
#include "wireline/generator.hpp"
#include "wireline/io.hpp"
#include "wireline/link.hpp"
#include "wireline/lptv.hpp"
#include "wireline/normality.hpp"
#include "wireline/profiles.hpp"
#include "wireline/regression.hpp"
#include "wireline/rng.hpp"
#include "wireline/stats.hpp"

namespace wireline
{
inline constexpr const char *version = "0.1.0";
}

#endif
