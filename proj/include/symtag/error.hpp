#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symtag {

// Base for every failure raised by the toolkit. The CLI maps DataError
// subclasses to exit status 1 and ArgumentError to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class ParseError : public DataError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : DataError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller broke an operation's precondition (e.g. extracting spans from
// an invalid label sequence).
class ContractError : public DataError {
 public:
  using DataError::DataError;
};

class AlignmentError : public DataError {
 public:
  AlignmentError(std::size_t sentence, std::size_t token, const std::string& what)
      : DataError("sentence " + std::to_string(sentence) + ", token " +
                  std::to_string(token) + ": " + what),
        sentence_(sentence),
        token_(token) {}
  std::size_t sentence() const noexcept { return sentence_; }
  std::size_t token() const noexcept { return token_; }

 private:
  std::size_t sentence_;
  std::size_t token_;
};

class ConfigError : public DataError {
 public:
  using DataError::DataError;
};

class SizeError : public DataError {
 public:
  using DataError::DataError;
};

class LookupError : public DataError {
 public:
  using DataError::DataError;
};

class CapabilityError : public DataError {
 public:
  using DataError::DataError;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace symtag
