#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "costsem/differential.hpp"

namespace costsem::cli {

// Exit codes: 0 success/match, 1 mismatch or type error, 2 parse error,
// 3 fuel exhaustion.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

// The machine-readable adequacy report (stable key order).
std::string report_json(const harness::AdequacyReport& report);

}  // namespace costsem::cli
