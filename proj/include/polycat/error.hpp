#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace polycat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration needed data above the degree bound it was given.
class BoundExhausted : public Error {
 public:
  using Error::Error;
};

class LawViolation : public Error {
 public:
  using Error::Error;
};

class InducedActionIllDefined : public Error {
 public:
  using Error::Error;
};

class NotSigmaFree : public Error {
 public:
  using Error::Error;
};

class NonEmptyDirections : public Error {
 public:
  using Error::Error;
};

class FrameMismatch : public Error {
 public:
  using Error::Error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

enum class Exactness { Exact, Truncated };

// Certificate attached to anything computed from graded data.
struct Status {
  Exactness exactness = Exactness::Exact;
  int bound = -1;  // -1: no bound involved

  bool exact() const { return exactness == Exactness::Exact; }
  static Status exact_at(int b) { return {Exactness::Exact, b}; }
  static Status truncated_at(int b) { return {Exactness::Truncated, b}; }
  std::string str() const;
};

Status meet(Status a, Status b);

// Report-valued law checks collect every failure instead of throwing.
struct Report {
  std::string subject;
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  Status status;
  int checked = 0;

  bool ok() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  void merge(const Report& other, const std::string& prefix = {});
  std::string str() const;
};

}  // namespace polycat
