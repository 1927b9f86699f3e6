#pragma once

#include <cstdint>

namespace costsem {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

using Fuel = std::uint64_t;

}  // namespace costsem
