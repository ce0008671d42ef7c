#pragma once

#include <cstdint>
#include <utility>

#include "garside/germ.hpp"

namespace garside::detail {

inline std::uint64_t pair_key(ElementId a, ElementId b) noexcept {
  return (std::uint64_t{a.index} << 32) | b.index;
}

inline std::pair<ElementId, ElementId> unpack_key(std::uint64_t key) noexcept {
  return {ElementId{static_cast<std::uint32_t>(key >> 32)},
          ElementId{static_cast<std::uint32_t>(key & 0xffffffffu)}};
}

}  // namespace garside::detail
