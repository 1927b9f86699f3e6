#include "costsem/differential.hpp"
#include "costsem/gen.hpp"
#include "costsem/print.hpp"
#include "doctest.h"

using namespace costsem;
using namespace costsem::harness;

TEST_CASE("generated stlc programs are closed bool terms within budget") {
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = case_engine(99, i);
    stlc::TmPtr e = gen_stlc_term(rng, {}, stlc::ty_bool(), 50);
    auto ty = stlc::check({}, e);
    REQUIRE(ty.has_value());
    CHECK(stlc::equal(*ty, stlc::ty_bool()));
    CHECK(stlc::size(e) <= 50);
  }
}

TEST_CASE("generated ma programs are closed bool commands within budget") {
  std::size_t with_while = 0;
  for (std::uint64_t i = 0; i < 500; ++i) {
    auto rng = case_engine(98, i);
    ma::CmdPtr m = gen_ma_cmd(rng, {}, {}, ma::ty_bool(), 40, 4);
    auto ty = ma::check_cmd({}, {}, m);
    REQUIRE(ty.has_value());
    CHECK(std::holds_alternative<ma::MaTy::Bool>((*ty)->node));
    CHECK(ma::size(m) <= 40);
    if (print::cmd(m).find("while") != std::string::npos) ++with_while;
  }
  // loops must show up often enough to exercise the store semantics
  CHECK(with_while > 25);
}

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.max_size = 30;
  CHECK(stlc::equal(gen_stlc(cfg), gen_stlc(cfg)));
  CHECK(ma::equal(gen_ma(cfg), gen_ma(cfg)));

  GenConfig other = cfg;
  other.seed = 8;
  CHECK(!stlc::equal(gen_stlc(cfg), gen_stlc(other)));
}

TEST_CASE("tiny budgets produce the minimal programs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.max_size = 1;
    stlc::TmPtr e = gen_stlc(cfg);
    CHECK(stlc::size(e) == 1);  // tt or ff
    bool is_literal = std::holds_alternative<stlc::Tm::TT>(e->node) ||
                      std::holds_alternative<stlc::Tm::FF>(e->node);
    CHECK(is_literal);

    cfg.max_size = 2;
    ma::CmdPtr m = gen_ma(cfg);
    CHECK(ma::size(m) <= 2);
    auto ty = ma::check_cmd({}, {}, m);
    REQUIRE(ty.has_value());
    CHECK(std::holds_alternative<ma::MaTy::Bool>((*ty)->node));
  }
}

TEST_CASE("grown signatures embed the original") {
  std::mt19937_64 rng(97);
  for (int i = 0; i < 500; ++i) {
    ma::Sig base;
    std::size_t n = rng() % 4;
    for (std::size_t k = 0; k < n; ++k)
      base.push_back(static_cast<ma::PosTy>(rng() % 3));
    auto grown = gen_ge(rng, base);
    REQUIRE(grown.sig.size() >= base.size());
    for (std::size_t cell = 0; cell < base.size(); ++cell) {
      std::size_t shifted = sh(grown.proof, cell);
      REQUIRE(shifted < grown.sig.size());
      CHECK(grown.sig[shifted] == base[cell]);
    }
  }
}
