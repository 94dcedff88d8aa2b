#pragma once

#include <stdexcept>
#include <string>

namespace iib {

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Negative entries, bad column sums, non-bijective maps, bad labels.
struct InvalidConstruction : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct MarginalNotFullSupport : std::domain_error {
  MarginalNotFullSupport() : std::domain_error("joint marginals are not fully supported") {}
  explicit MarginalNotFullSupport(const std::string& what) : std::domain_error(what) {}
};

struct JointNotFullySupported : std::domain_error {
  JointNotFullySupported() : std::domain_error("joint distribution is not fully supported") {}
};

struct NoUniformizingInput : std::domain_error {
  NoUniformizingInput()
      : std::domain_error("uniform output is outside the convex hull of the channel columns") {}
};

struct SearchBudgetExceeded : std::runtime_error {
  explicit SearchBudgetExceeded(std::uint64_t nodes)
      : std::runtime_error("symmetry search exceeded its node budget (" +
                           std::to_string(nodes) + " nodes)") {}
};

struct LambdaOutOfRange : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidFile : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace iib
