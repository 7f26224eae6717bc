// SPDX-License-Identifier: Apache-2.0
//
// losmimo - line-of-sight MIMO channel design and analysis toolkit
// Copyright (C) 2026 losmimo contributors
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

#ifndef LOSMIMO_LOSMIMO_HPP
#define LOSMIMO_LOSMIMO_HPP

#include "losmimo/geometry.hpp"
#include "losmimo/channel.hpp"
#include "losmimo/capacity.hpp"
#include "losmimo/design.hpp"
#include "losmimo/measurement.hpp"
#include "losmimo/sweep.hpp"
#include "losmimo/svg.hpp"
#include "losmimo/units.hpp"

#endif
