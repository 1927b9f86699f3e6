#pragma once

#include <cstdint>
#include <random>

#include "costsem/ma.hpp"
#include "costsem/stlc.hpp"
#include "costsem/util.hpp"

// Type-directed random program generation for the differential harness.
// Everything is deterministic in (seed, config); goal-typed backward rules
// mean every generated program type-checks by construction.
namespace costsem::harness {

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_size = 50;  // AST nodes
  std::size_t max_sig = 4;    // assignables a generated MA command may declare
  Fuel fuel = 1'000'000;
};

// per-case engine so campaign cases are independent and order-insensitive
std::mt19937_64 case_engine(std::uint64_t seed, std::uint64_t index);

// ------------------------------------------------------------------ stlc

stlc::TyPtr gen_stlc_type(std::mt19937_64& rng, unsigned depth);
stlc::TmPtr gen_stlc_term(std::mt19937_64& rng, const stlc::Ctx& ctx,
                          const stlc::TyPtr& goal, std::size_t budget);
// closed term of type bool, size <= cfg.max_size
stlc::TmPtr gen_stlc(const GenConfig& cfg);

// smallest term of a type (tt at bool, constant functions at arrows)
stlc::TmPtr minimal_stlc(const stlc::TyPtr& ty);

// -------------------------------------------------------------------- ma

ma::MaTyPtr gen_ma_type(std::mt19937_64& rng, unsigned depth);
ma::ExpPtr gen_ma_exp(std::mt19937_64& rng, const ma::Sig& sig,
                      const ma::Ctx& ctx, const ma::MaTyPtr& goal,
                      std::size_t budget, std::size_t max_sig);
ma::CmdPtr gen_ma_cmd(std::mt19937_64& rng, const ma::Sig& sig,
                      const ma::Ctx& ctx, const ma::MaTyPtr& goal,
                      std::size_t budget, std::size_t max_sig);
// closed command of type bool over the empty signature
ma::CmdPtr gen_ma(const GenConfig& cfg);

ma::ExpPtr minimal_ma_exp(const ma::MaTyPtr& ty);
ma::CmdPtr minimal_ma_cmd(const ma::MaTyPtr& ty);

// Random signature extension: a preorder witness from a larger signature
// (built by sprinkling fresh cells into `smaller`) back down to it.
struct GrownSig {
  ma::GePtr proof;
  ma::Sig sig;
};
GrownSig gen_ge(std::mt19937_64& rng, const ma::Sig& smaller);

}  // namespace costsem::harness
