#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>

namespace costsem {

// Evaluation steps under addition. The rest of the library only relies on
// `+`, `==` and the identity `Cost{}`, so another cancellative monoid could be
// swapped in; only step counts are built and tested.
class Cost {
 public:
  constexpr Cost() = default;
  constexpr explicit Cost(std::uint64_t steps) : steps_(steps) {}

  constexpr std::uint64_t steps() const { return steps_; }

  friend constexpr Cost operator+(Cost a, Cost b) {
    return Cost(a.steps_ + b.steps_);
  }
  Cost& operator+=(Cost other) {
    steps_ += other.steps_;
    return *this;
  }
  friend constexpr bool operator==(Cost, Cost) = default;

 private:
  std::uint64_t steps_ = 0;
};

template <class C>
concept CostMonoid = std::regular<C> && requires(C a, C b) {
  { a + b } -> std::same_as<C>;
};

static_assert(CostMonoid<Cost>);

// Whether cost is observable. Costs are always counted during evaluation;
// the extensional phase erases them at observation time only.
enum class Phase { intensional, extensional };

// A cost observation: either a concrete count or erased. Erased absorbs
// under addition and is distinct from every counted value.
class SealedCost {
 public:
  static SealedCost counted(Cost c) { return SealedCost(c); }
  static SealedCost erased() { return SealedCost(std::nullopt); }

  bool is_erased() const { return !count_.has_value(); }
  Cost count() const { return count_.value(); }

  friend SealedCost operator+(const SealedCost& a, const SealedCost& b) {
    if (a.is_erased() || b.is_erased()) return erased();
    return counted(a.count() + b.count());
  }
  friend bool operator==(const SealedCost&, const SealedCost&) = default;

 private:
  explicit SealedCost(std::optional<Cost> c) : count_(c) {}
  std::optional<Cost> count_;
};

inline SealedCost seal(Phase phase, Cost c) {
  return phase == Phase::intensional ? SealedCost::counted(c)
                                     : SealedCost::erased();
}

inline std::string to_string(Phase phase) {
  return phase == Phase::intensional ? "intensional" : "extensional";
}

}  // namespace costsem
