#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vcflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed CFG or change file.  `line()` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class DuplicateVertex : public ParseError {
 public:
  DuplicateVertex(std::uint64_t id, std::size_t line)
      : ParseError("duplicate vertex " + std::to_string(id), line), id_(id) {}
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

class UnknownVertex : public ParseError {
 public:
  UnknownVertex(std::uint64_t id, std::size_t line)
      : ParseError("unknown vertex " + std::to_string(id), line), id_(id) {}
  std::uint64_t id() const noexcept { return id_; }

 private:
  std::uint64_t id_;
};

/// Structural invariant of a SuperGraph violated outside of parsing.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

/// A change batch that cannot be applied to the graph it was given.
class ChangeConflict : public Error {
 public:
  using Error::Error;
};

/// Bad statement payload or unsupported operation inside a client analysis.
class AnalysisDefinitionError : public Error {
 public:
  using Error::Error;
};

/// The superstep or iteration cap was reached before quiescence.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::size_t steps) : Error(what), steps_(steps) {}
  std::size_t steps() const noexcept { return steps_; }

 private:
  std::size_t steps_;
};

/// Caller-supplied engine seed does not match the graph.
class SeedMismatch : public Error {
 public:
  using Error::Error;
};

/// The fact store lacks a fact the incremental pipeline requires.
class StoreInconsistent : public Error {
 public:
  using Error::Error;
};

/// Store opened by an analysis whose fingerprint differs from the writer's.
class WrongAnalysis : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class StoreIO : public Error {
 public:
  using Error::Error;
};

}  // namespace vcflow
