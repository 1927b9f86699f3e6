#pragma once

#include <optional>
#include <string>

#include "costsem/cost.hpp"

namespace costsem {

// Every place a denotational clause charges cost. Used by the mutation tests
// to knock out one charge at a time and check the differential harness
// notices.
enum class StepSite {
  stlc_ap,
  ma_ap,
  ma_ifz,
  ma_bnd,
  ma_while_false,
  ma_while_iter,
  ma_dcl,
  ma_get,
  ma_set,
};

inline const char* to_string(StepSite s) {
  switch (s) {
    case StepSite::stlc_ap: return "stlc-ap";
    case StepSite::ma_ap: return "ma-ap";
    case StepSite::ma_ifz: return "ma-ifz";
    case StepSite::ma_bnd: return "ma-bnd";
    case StepSite::ma_while_false: return "ma-while-false";
    case StepSite::ma_while_iter: return "ma-while-iter";
    case StepSite::ma_dcl: return "ma-dcl";
    case StepSite::ma_get: return "ma-get";
    case StepSite::ma_set: return "ma-set";
  }
  return "?";
}

struct Mutation {
  std::optional<StepSite> dropped_step;

  Cost charge(StepSite site, Cost c) const {
    return dropped_step == site ? Cost{} : c;
  }
};

}  // namespace costsem
