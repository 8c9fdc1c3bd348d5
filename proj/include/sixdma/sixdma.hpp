// SPDX-License-Identifier: Apache-2.0
//
// sixdma-cf: uplink simulator and rotation optimizer for cell-free massive
// MIMO networks with rotatable antenna surfaces
// Copyright (C) 2026 the sixdma-cf authors
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

#pragma once

#include "sixdma/antenna.hpp"
#include "sixdma/bayesopt.hpp"
#include "sixdma/benchmarks.hpp"
#include "sixdma/channel.hpp"
#include "sixdma/common.hpp"
#include "sixdma/config.hpp"
#include "sixdma/geometry.hpp"
#include "sixdma/harness.hpp"
#include "sixdma/parallel.hpp"
#include "sixdma/receiver.hpp"
#include "sixdma/rng.hpp"
#include "sixdma/scenario.hpp"
