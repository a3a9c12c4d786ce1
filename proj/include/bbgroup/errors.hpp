#pragma once

#include <stdexcept>
#include <string>

namespace bbgroup {

// Bad caller input: malformed instance, wrong dimension, composite modulus.
// The CLI maps these to exit code 1.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ModulusMismatch : InputError {
  ModulusMismatch() : InputError("operands belong to different moduli") {}
};

struct DimensionMismatch : InputError {
  using InputError::InputError;
};

struct NotGenerator : InputError {
  NotGenerator() : InputError("designated generator lies in the hidden subgroup") {}
};

struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(unsigned long long budget)
      : std::runtime_error("identity oracle query budget of " + std::to_string(budget) +
                           " exhausted") {}
};

struct EscrowDenied : std::logic_error {
  EscrowDenied() : std::logic_error("hidden-vector access requires a granted escrow token") {}
};

// An oracle answered outside its problem's output contract.
struct DishonestOracle : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A checked invariant of the library itself failed (norm drift, broken
// experiment assertion). The CLI maps these to exit code 2.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace bbgroup
