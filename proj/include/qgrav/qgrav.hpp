// Copyright 2026 The qgrav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "qgrav/channels.hpp"
#include "qgrav/complex_matrix.hpp"
#include "qgrav/correlations.hpp"
#include "qgrav/eigen.hpp"
#include "qgrav/gravity_states.hpp"
#include "qgrav/process_game.hpp"
#include "qgrav/separability.hpp"
#include "qgrav/sr_latch.hpp"
#include "qgrav/states.hpp"
