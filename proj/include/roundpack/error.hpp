#pragma once

#include <stdexcept>
#include <string>

namespace roundpack {

// Base class for every error raised by the library. The CLI maps these onto
// exit codes: PreconditionError -> 3, ParseError -> 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

// Input violates an operation's documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NbaViolated : public PreconditionError {
 public:
  NbaViolated() : PreconditionError("no-bottleneck assumption violated: max demand exceeds min capacity") {}
  using PreconditionError::PreconditionError;
};

class NonUniformCapacity : public PreconditionError {
 public:
  NonUniformCapacity() : PreconditionError("capacities are not uniform") {}
};

class NonUnitDemand : public PreconditionError {
 public:
  NonUnitDemand() : PreconditionError("instance has a job with demand != 1") {}
};

class UnassignedJob : public PreconditionError {
 public:
  explicit UnassignedJob(int job) : PreconditionError("job " + std::to_string(job) + " is unassigned"), job_(job) {}
  int job() const { return job_; }

 private:
  int job_;
};

// Brute-force guard tripped (oracle sizes, DP state counts, height sets).
class TooLarge : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public TooLarge {
 public:
  using TooLarge::TooLarge;
};

class OmegaExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A proven internal bound did not hold. Raising this is always a bug.
class InternalBoundViolated : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InvalidRound : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class LevelInvalid : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class BandParityMixed : public PreconditionError {
 public:
  BandParityMixed() : PreconditionError("bands mix even and odd indices") {}
};

class WindowViolated : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NotAMatching : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class WrongSize : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class NonUniformTree : public PreconditionError {
 public:
  NonUniformTree() : PreconditionError("tree capacities are not uniform") {}
};

// Peeling found no integral selection; indicates a bug.
class Infeasible : public InternalBoundViolated {
 public:
  using InternalBoundViolated::InternalBoundViolated;
};

class NoRoundFound : public InternalBoundViolated {
 public:
  using InternalBoundViolated::InternalBoundViolated;
};

}  // namespace roundpack
