/*
   Copyright 2026 the drinfeld authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Umbrella header.

#ifndef DRINFELD_DRINFELD_HPP
#define DRINFELD_DRINFELD_HPP

#include "drinfeld/base_field.hpp"
#include "drinfeld/bound.hpp"
#include "drinfeld/config.hpp"
#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/extfield.hpp"
#include "drinfeld/gf.hpp"
#include "drinfeld/io.hpp"
#include "drinfeld/iwasawa.hpp"
#include "drinfeld/linalg.hpp"
#include "drinfeld/local.hpp"
#include "drinfeld/polyring.hpp"
#include "drinfeld/rng.hpp"
#include "drinfeld/twisted.hpp"

#endif  // DRINFELD_DRINFELD_HPP
