/*
 * Copyright 2026 The ncrest Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ncrest {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ZeroInverse : public Error {
 public:
  ZeroInverse() : Error("zero has no multiplicative inverse") {}
};

class EmptyWindow : public Error {
 public:
  EmptyWindow() : Error("coding window is empty") {}
};

class NonContiguousIds : public Error {
 public:
  NonContiguousIds() : Error("window ids must be contiguous and ascending") {}
};

class CoefficientCountMismatch : public Error {
 public:
  CoefficientCountMismatch() : Error("coefficient count does not match window size") {}
};

class ZeroNewestCoefficient : public Error {
 public:
  ZeroNewestCoefficient() : Error("newest message coefficient must be nonzero") {}
};

class LengthExceedsPayload : public Error {
 public:
  LengthExceedsPayload() : Error("true length exceeds payload size") {}
};

class MalformedHeader : public Error {
 public:
  explicit MalformedHeader(const std::string& detail) : Error("malformed coded message: " + detail) {}
};

class InvalidResponse : public Error {
 public:
  InvalidResponse() : Error("response has seen_newest > unseen_newest") {}
};

class WindowFull : public Error {
 public:
  WindowFull() : Error("coding buffer already holds subset_limit unconfirmed messages") {}
};

class NonConvergence : public Error {
 public:
  explicit NonConvergence(const std::string& detail) : Error("simulation did not converge: " + detail) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& detail) : Error(detail) {}
};

}  // namespace ncrest
