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

#ifndef DRINFELD_RNG_HPP
#define DRINFELD_RNG_HPP

#include <cstdint>

namespace drinfeld {

// splitmix64. Used for every randomized algorithm (equal-degree splitting,
// irreducible-modulus search) so that runs are reproducible from one seed
// regardless of platform or standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish value in [0, n). Modulo bias is irrelevant at the sizes
    // used here (n far below 2^64).
    std::uint64_t below(std::uint64_t n) { return n <= 1 ? 0 : next() % n; }

  private:
    std::uint64_t state_;
};

// Derives an independent deterministic stream from (seed, tag). FNV-1a mix.
inline std::uint64_t derive_seed(std::uint64_t seed, const char* tag) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (const char* c = tag; *c; ++c) {
        h ^= static_cast<std::uint64_t>(*c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t h = 0xcbf29ce484222325ULL ^ seed;
    for (int i = 0; i < 8; ++i) {
        h ^= (salt >> (8 * i)) & 0xff;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace drinfeld

#endif  // DRINFELD_RNG_HPP
