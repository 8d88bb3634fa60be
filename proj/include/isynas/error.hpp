// Copyright (C) 2026 The isynas Authors
// SPDX-License-Identifier: Apache-2.0
//
#pragma once

#include <stdexcept>
#include <string>

namespace isynas {

/// Base class for every error the library throws. Anything derived from it is
/// a user-facing problem (bad input, infeasible request), as opposed to a bug.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

/// Malformed encoding vector; `field()` names the offending slot, e.g. "stage[2].nb".
class DecodeError : public Error {
public:
    DecodeError(std::string field, const std::string& what)
        : Error("decode error at " + field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class ShapeError : public Error {
public:
    using Error::Error;
};

class FitError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    explicit ParseError(const std::string& what) : Error(what), line_(0) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class SearchError : public Error {
public:
    using Error::Error;
};

}  // namespace isynas
