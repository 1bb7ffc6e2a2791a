// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace oddpair {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct FieldMismatch : Error {
  using Error::Error;
};

struct NotIntegral : Error {
  using Error::Error;
};

struct InvalidParameters : Error {
  using Error::Error;
};

struct NotCyclotomic : Error {
  NotCyclotomic() : Error("element is not in the cyclotomic subgroup") {}
};

struct InvalidPoint : Error {
  using Error::Error;
};

// Raised when an internal consistency check fails; maps to exit code 4.
struct InternalBreach : Error {
  using Error::Error;
};

}  // namespace oddpair
