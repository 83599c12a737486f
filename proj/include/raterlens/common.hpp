// Copyright 2026 RaterLens Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace raterlens {

// Error taxonomy mapped to CLI exit codes: DomainError -> 1 (a metric or
// operation is undefined for the given data), ConfigError / IoError -> 2
// (usage, config or input-file problems). `code` is a stable machine-readable
// tag, e.g. "undefined-alpha" or "insufficient-replication".
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace raterlens
