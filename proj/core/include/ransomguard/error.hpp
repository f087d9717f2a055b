#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace ransomguard {

// Root of every exception thrown by the simulator core.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Scenario text is not syntactically usable. `where` names the field path
// (e.g. "samples[2].trace[0].kind") or the JSON parser position.
class MalformedScenario : public Error {
 public:
  MalformedScenario(std::string where, const std::string& what)
      : Error("malformed scenario at " + where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

// Scenario parsed but violates a semantic invariant.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant violation: " + what) {}
};

class SerializationFailure : public Error {
 public:
  explicit SerializationFailure(const std::string& what) : Error("serialization failure: " + what) {}
};

class DecodeError : public Error {
 public:
  explicit DecodeError(const std::string& what) : Error("decode error: " + what) {}
};

class InvalidRule : public Error {
 public:
  explicit InvalidRule(const std::string& what) : Error("invalid rule: " + what) {}
};

class DuplicateDevice : public Error {
 public:
  explicit DuplicateDevice(const std::string& id) : Error("device already registered: " + id) {}
};

class DuplicateRule : public Error {
 public:
  explicit DuplicateRule(const std::string& id) : Error("rule already on chain: " + id) {}
};

class OutOfOrderEvent : public Error {
 public:
  OutOfOrderEvent(std::size_t expected, std::size_t got)
      : Error("out-of-order event: expected index " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

class NoCriticalEvent : public Error {
 public:
  NoCriticalEvent() : Error("honeypot trace demands ransom but contains no critical event") {}
};

class NotAHoneypot : public Error {
 public:
  explicit NotAHoneypot(const std::string& id) : Error("device is not honeypot-class: " + id) {}
};

class NoWorkstations : public Error {
 public:
  NoWorkstations() : Error("load balancer has no workstations") {}
};

class AuthFailure : public Error {
 public:
  explicit AuthFailure(const std::string& id) : Error("device not authenticated: " + id) {}
};

class CorruptChain : public Error {
 public:
  CorruptChain() : Error("chain failed verification") {}
};

// A caller broke an operation's documented precondition.
class PreconditionViolation : public Error {
 public:
  explicit PreconditionViolation(const std::string& what) : Error("precondition violated: " + what) {}
};

}  // namespace ransomguard
