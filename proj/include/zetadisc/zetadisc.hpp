// Copyright 2026 The zetadisc Authors
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

#include "zetadisc/analysis.hpp"
#include "zetadisc/disc.hpp"
#include "zetadisc/error.hpp"
#include "zetadisc/models.hpp"
#include "zetadisc/pauli.hpp"
#include "zetadisc/spectral.hpp"
#include "zetadisc/vqe.hpp"
#include "zetadisc/zeta.hpp"
