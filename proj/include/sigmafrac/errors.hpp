#pragma once

#include <stdexcept>

namespace sigmafrac {

/// A series or fixed-point iteration ran out of its term/sweep budget.
struct non_convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The sandwich inequality chain came out misordered beyond tolerance.
struct ordering_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A contraction precondition failed before a fixed-point solve.
struct contraction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sigmafrac
