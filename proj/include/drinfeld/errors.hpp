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

#ifndef DRINFELD_ERRORS_HPP
#define DRINFELD_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace drinfeld {

// Error taxonomy shared by the library and the CLI. The CLI maps these to
// process exit codes: ParseError -> 2, PrecisionError -> 3, MathError -> 4.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed text/JSON input. The message names the offending token.
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A result would depend on digits beyond the working precision.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(msg) {}
};

// Violated mathematical precondition (zero divisor, wrong field, ...).
struct MathError : Error {
    explicit MathError(const std::string& msg) : Error(msg) {}
};

}  // namespace drinfeld

#endif  // DRINFELD_ERRORS_HPP
