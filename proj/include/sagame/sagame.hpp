// Copyright 2026 The sagame Authors.
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

#ifndef SAGAME_SAGAME_HPP
#define SAGAME_SAGAME_HPP

#include "sagame/belief_mdp.hpp"
#include "sagame/dot_export.hpp"
#include "sagame/error.hpp"
#include "sagame/game.hpp"
#include "sagame/ids.hpp"
#include "sagame/observation.hpp"
#include "sagame/oracle.hpp"
#include "sagame/pipeline.hpp"
#include "sagame/sim.hpp"
#include "sagame/solver_p1.hpp"
#include "sagame/solver_p2.hpp"
#include "sagame/spec_document.hpp"
#include "sagame/spec_format.hpp"
#include "sagame/state_set.hpp"

#endif  // SAGAME_SAGAME_HPP
