// Copyright 2026 The twinstats Authors
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

#pragma once

#include <stdexcept>

namespace twinstats {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Caller broke an input contract (e.g. insufficient base primes).
class PreconditionError : public Error {
  public:
    using Error::Error;
};

// Segments or checkpoints requested out of order.
class SequencingError : public Error {
  public:
    using Error::Error;
};

class DomainError : public Error {
  public:
    using Error::Error;
};

// Tiny-N regime where pi <= 2*pi2 or a logarithm argument is not positive.
class DegenerateRegimeError : public DomainError {
  public:
    using DomainError::DomainError;
};

class InsufficientDataError : public Error {
  public:
    using Error::Error;
};

// Inputs that should describe the same N do not.
class ConsistencyError : public Error {
  public:
    using Error::Error;
};

// Malformed checkpoint, resume or CSV payload.
class FormatError : public Error {
  public:
    using Error::Error;
};

}  // namespace twinstats
