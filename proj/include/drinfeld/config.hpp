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

#ifndef DRINFELD_CONFIG_HPP
#define DRINFELD_CONFIG_HPP

#include <cstdint>

namespace drinfeld {

// Knobs shared across the pipeline. All computations are deterministic
// given a Config value; the seed drives every randomized subroutine.
struct Config {
    std::uint64_t seed = 0x5eed0d21ULL;

    // pi-adic precision for the completed coefficient ring O = A_p.
    unsigned prec_pi = 32;
    // Truncation degree for power series over O.
    unsigned prec_T = 64;
    // Digit precision for local-field (uniformizer series) elements.
    unsigned local_prec = 64;

    // Torsion-level cap when probing H^0 growth, and tower-layer cap when
    // waiting for Frobenius fixed spaces to stabilize.
    unsigned max_n = 4;
    unsigned max_m = 4;
};

}  // namespace drinfeld

#endif  // DRINFELD_CONFIG_HPP
