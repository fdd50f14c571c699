// Copyright 2026 The ucr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UCR_UCR_HPP
#define UCR_UCR_HPP

#include "ucr/expsim.hpp"
#include "ucr/linalg.hpp"
#include "ucr/mub.hpp"
#include "ucr/relations.hpp"
#include "ucr/states.hpp"
#include "ucr/tolerances.hpp"

#endif  // UCR_UCR_HPP
