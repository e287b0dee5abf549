#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace floq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates an operation's precondition (bad form, non-coprime direction, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class SingularParams : public Error {
 public:
  using Error::Error;
};

class DegenerateSolution : public Error {
 public:
  using Error::Error;
};

class ImaginaryV : public Error {
 public:
  using Error::Error;
};

class SectorTooLarge : public Error {
 public:
  SectorTooLarge(std::uint64_t dimension, std::uint64_t limit)
      : Error("sector dimension " + std::to_string(dimension) + " exceeds limit " +
              std::to_string(limit)),
        dimension_(dimension),
        limit_(limit) {}
  std::uint64_t dimension() const { return dimension_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t dimension_;
  std::uint64_t limit_;
};

class TooFewLevels : public Error {
 public:
  using Error::Error;
};

class DiagonalizationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace floq
