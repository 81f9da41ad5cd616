#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The Adex Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "adex/allocation.hpp"
#include "adex/errors.hpp"
#include "adex/generator.hpp"
#include "adex/gross_substitutes.hpp"
#include "adex/instance.hpp"
#include "adex/io.hpp"
#include "adex/items.hpp"
#include "adex/mediator.hpp"
#include "adex/parallel.hpp"
#include "adex/pipeline.hpp"
#include "adex/prices.hpp"
#include "adex/rational.hpp"
#include "adex/reserves.hpp"
#include "adex/simplex.hpp"
#include "adex/smallk.hpp"
#include "adex/valuation.hpp"
#include "adex/verify.hpp"
#include "adex/walrasian.hpp"
#include "adex/welfare.hpp"
