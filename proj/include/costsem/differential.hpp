#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "costsem/cost.hpp"
#include "costsem/gen.hpp"
#include "costsem/ma.hpp"
#include "costsem/mutation.hpp"
#include "costsem/stlc.hpp"

// The differential oracle: run a closed program through both the
// step-counting stepper and the cost-counting denotation, seal the costs for
// the requested phase, and compare. The fuzz campaign feeds it generated
// programs and greedily shrinks failures.
namespace costsem::harness {

enum class Verdict { match, cost_mismatch, value_mismatch, store_mismatch, both_fuel };

std::string to_string(Verdict v);

struct SideOutcome {
  enum class Status { value, fuel };
  Status status = Status::fuel;
  SealedCost cost = SealedCost::erased();  // meaningful only when converged
  std::string value;                       // printed; empty when fuel ran out
  std::optional<std::vector<std::string>> store;  // commands only
};

struct AdequacyReport {
  std::string program;
  Phase phase = Phase::intensional;
  SideOutcome operational;
  SideOutcome denotational;
  Verdict verdict = Verdict::match;
};

AdequacyReport differential_stlc(const stlc::TmPtr& e, Phase phase, Fuel fuel,
                                 const Mutation& mutation = {});
AdequacyReport differential_ma(const ma::CmdPtr& m, Phase phase, Fuel fuel,
                               const Mutation& mutation = {});
AdequacyReport differential_ma_exp(const ma::ExpPtr& e, Phase phase, Fuel fuel,
                                   const Mutation& mutation = {});

// Greedy typed shrinking: repeatedly replace a subterm by the smallest term
// of its type while the predicate keeps failing (predicate = "differential
// still does not match").
stlc::TmPtr shrink_stlc(const stlc::TmPtr& program,
                        const std::function<bool(const stlc::TmPtr&)>& fails);
ma::CmdPtr shrink_ma(const ma::CmdPtr& program,
                     const std::function<bool(const ma::CmdPtr&)>& fails);

enum class Language { stlc, ma };

struct FailureCase {
  std::uint64_t index = 0;
  AdequacyReport report;
  std::string shrunk_program;
  std::size_t shrunk_size = 0;
};

struct CampaignSummary {
  std::uint64_t total = 0;
  std::uint64_t matches = 0;
  std::uint64_t both_fuel = 0;  // vacuous for adequacy, counted separately
  std::vector<FailureCase> failures;
};

CampaignSummary fuzz_campaign(const GenConfig& cfg, Language lang, Phase phase,
                              std::uint64_t count, const Mutation& mutation = {});

}  // namespace costsem::harness
