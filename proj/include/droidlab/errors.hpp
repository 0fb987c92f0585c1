#pragma once

#include <stdexcept>
#include <string>

namespace droidlab {

// Base for all droidlab exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Action-token parse failure: unknown keyword, coordinate out of [0,999],
// missing bracket/payload.
class MalformedAction : public Error {
 public:
  enum class Kind { UnknownKeyword, BadCoordinate, BadPayload };
  MalformedAction(Kind kind, const std::string& reason)
      : Error("malformed action: " + reason), kind(kind) {}
  Kind kind;
};

// Model-output parse failure: a tagged section is missing or the action
// token inside <ACTION> does not parse.
class MalformedOutput : public Error {
 public:
  enum class Kind { MissingTag, BadAction };
  MalformedOutput(Kind kind, const std::string& reason)
      : Error("malformed model output: " + reason), kind(kind) {}
  Kind kind;
};

class MissingSlot : public Error {
 public:
  explicit MissingSlot(const std::string& slot)
      : Error("missing description slot: " + slot) {}
};

class OutOfBounds : public Error {
 public:
  explicit OutOfBounds(const std::string& what) : Error(what) {}
};

class Terminated : public Error {
 public:
  Terminated() : Error("step() called on a terminated episode") {}
};

class InvalidLevel : public Error {
 public:
  explicit InvalidLevel(int level)
      : Error("invalid task level " + std::to_string(level) +
              " (valid: 1, 2)") {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
};

class MissingField : public Error {
 public:
  explicit MissingField(const std::string& field)
      : Error("missing prompt field: " + field) {}
};

}  // namespace droidlab
