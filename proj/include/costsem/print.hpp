#pragma once

#include <string>

#include "costsem/ma.hpp"
#include "costsem/stlc.hpp"

// Surface-syntax rendering. Binders are printed with generated names (x0,
// x1, ... for variables; a0, a1, ... for assignables) so that parse(print(t))
// gives back the same nameless term.
namespace costsem::print {

std::string type(const stlc::TyPtr& t);
std::string term(const stlc::TmPtr& e);

std::string type(const ma::MaTyPtr& t);
std::string exp(const ma::ExpPtr& e);
std::string cmd(const ma::CmdPtr& m);

// observable values (bool/nat/unit); functions and reified commands render
// as opaque tags
std::string sem_value(const stlc::SemVal& v);
std::string sem_value(const ma::SemVal& v);
std::string store(const ma::Store& s);

}  // namespace costsem::print
