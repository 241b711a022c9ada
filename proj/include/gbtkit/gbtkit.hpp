/*
 * Copyright 2026 The gbtkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GBTKIT_GBTKIT_HPP_
#define GBTKIT_GBTKIT_HPP_

#include "gbtkit/design.hpp"
#include "gbtkit/error.hpp"
#include "gbtkit/gbt.hpp"
#include "gbtkit/ratfun.hpp"
#include "gbtkit/response.hpp"
#include "gbtkit/scalar_search.hpp"
#include "gbtkit/simkit.hpp"

#endif  // GBTKIT_GBTKIT_HPP_
