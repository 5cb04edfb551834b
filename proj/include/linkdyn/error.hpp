/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace linkdyn {

// Base of everything the engine throws. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Missing, unreadable or unwritable files.
class IoError : public Error {
public:
    using Error::Error;
};

// Input that is well-formed on disk but unusable for the run, e.g. fewer
// day files than the protocol needs.
class DataError : public Error {
public:
    using Error::Error;
};

// Caller broke an API contract (bad config value, begin_day twice, ...).
class UsageError : public Error {
public:
    using Error::Error;
};

} // namespace linkdyn
