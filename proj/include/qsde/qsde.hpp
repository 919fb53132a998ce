// Copyright 2026 The qsde-elim Authors
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


// Umbrella header for the whole library.
#pragma once

#include "qsde/errors.hpp"
#include "qsde/operator.hpp"
#include "qsde/qsde_model.hpp"
#include "qsde/elimination.hpp"
#include "qsde/semigroup.hpp"
#include "qsde/convergence.hpp"
#include "qsde/models.hpp"
#include "qsde/io.hpp"
#include "qsde/model_file.hpp"
#include "qsde/cli.hpp"
