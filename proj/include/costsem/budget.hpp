#pragma once

#include "costsem/util.hpp"

namespace costsem {

// Thrown when a denotation work budget runs out.
struct BudgetExhausted {};

// Counts semantic work (one tick per application) so the harness can bound
// the denotational side the same way fuel bounds the operational side.
struct Budget {
  Fuel remaining;
  void tick() {
    if (remaining == 0) throw BudgetExhausted{};
    --remaining;
  }
};

}  // namespace costsem
