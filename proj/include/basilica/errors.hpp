#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace basilica {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPrimeError : Error {
  explicit NonPrimeError(int p)
      : Error("tree degree must be a prime >= 2, got " + std::to_string(p)),
        p(p) {}
  int p;
};

// Two operands were created from tree contexts with different degrees.
struct MismatchedContextError : Error {
  MismatchedContextError()
      : Error("operands belong to tree contexts of different degree") {}
};

struct LevelTooLargeError : Error {
  LevelTooLargeError(int level, std::size_t cap)
      : Error("level " + std::to_string(level) +
              " has more leaves than the cap of " + std::to_string(cap)),
        level(level),
        cap(cap) {}
  int level;
  std::size_t cap;
};

struct StateCapExceededError : Error {
  explicit StateCapExceededError(std::size_t cap)
      : Error("section closure exceeded the state cap of " +
              std::to_string(cap)),
        cap(cap) {}
  std::size_t cap;
};

struct SyntaxError : Error {
  SyntaxError(std::size_t position, const std::string& expected)
      : Error("syntax error at position " + std::to_string(position) +
              ": expected " + expected),
        position(position),
        expected(expected) {}
  std::size_t position;
  std::string expected;
};

struct MismatchedBracketError : SyntaxError {
  MismatchedBracketError(std::size_t position, const std::string& expected)
      : SyntaxError(position, expected) {}
};

struct InvalidVertexError : Error {
  using Error::Error;
};

// A group order that should have been a power of p was not.
struct NotPPowerError : Error {
  using Error::Error;
};

struct MismatchedLevelError : Error {
  MismatchedLevelError(int got, int expected)
      : Error("level mismatch: got " + std::to_string(got) + ", expected " +
              std::to_string(expected)),
        got(got),
        expected(expected) {}
  int got;
  int expected;
};

}  // namespace basilica
